#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "anosovkit/errors.hpp"
#include "anosovkit/json_io.hpp"

using namespace anosovkit;

namespace {

struct Outcome {
    Json payload;
    std::string text;
    bool resource_limited = false;
};

class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string render() const {
        std::vector<std::size_t> w;
        for (const auto& r : rows_) {
            if (w.size() < r.size()) w.resize(r.size(), 0);
            for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
        }
        std::ostringstream out;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t c = 0; c < rows_[i].size(); ++c) {
                out << rows_[i][c];
                if (c + 1 < rows_[i].size()) out << std::string(w[c] - rows_[i][c].size() + 2, ' ');
            }
            out << "\n";
            if (i == 0) {
                std::size_t total = 0;
                for (std::size_t c = 0; c < w.size(); ++c) total += w[c] + (c + 1 < w.size() ? 2 : 0);
                out << std::string(total, '-') << "\n";
            }
        }
        return out.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

std::string kv(const std::vector<std::pair<std::string, std::string>>& items) {
    std::size_t w = 0;
    for (const auto& [k, _] : items) w = std::max(w, k.size());
    std::string out;
    for (const auto& [k, v] : items) out += k + std::string(w - k.size() + 2, ' ') + v + "\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

struct Common {
    bool json = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool no_cache = false;
    std::uint64_t max_order = kDefaultMaxOrder;
    std::uint64_t max_nodes = EnumerationOptions{}.max_nodes;
    std::string presets;
};

std::shared_ptr<const WeylGroup> weyl_for(const Common& c, const std::string& type) {
    SimpleType t = parse_simple_type(type);
    if (c.no_cache) return std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(t), c.max_order));
    WeylCache cache(WeylCache::default_directory());
    return std::make_shared<const WeylGroup>(cache.get(t, c.max_order));
}

struct ConfigArgs {
    std::string type;
    std::string pa;
    std::string pd;
};

void add_config_options(CLI::App* sub, ConfigArgs& a) {
    sub->add_option("--type,-t", a.type, "simple type, e.g. A3, G2")->required();
    sub->add_option("--pa", a.pa, "simple roots generating W_A (comma-separated, 1-based; empty for Borel)");
    sub->add_option("--pd", a.pd, "simple roots generating W_D (comma-separated, 1-based; empty for complete flags)");
}

FlagConfiguration config_for(const Common& c, const ConfigArgs& a) {
    auto w = weyl_for(c, a.type);
    return build_flag_configuration(w, parse_theta(a.pa, w->rank()), parse_theta(a.pd, w->rank()));
}

EnumerationOptions enum_options(const Common& c) {
    EnumerationOptions o;
    o.threads = c.threads;
    o.max_nodes = c.max_nodes;
    return o;
}

PresetTable presets(const Common& c) {
    return c.presets.empty() ? PresetTable::load_default() : PresetTable::from_file(c.presets);
}

struct BoundArgs {
    std::string preset;
    std::string hdim;
    bool strict = false;
    bool exact = false;
};

void add_bound_options(CLI::App* sub, BoundArgs& b) {
    sub->add_option("--preset", b.preset, "named hdim bound: qf, hitchin, son1-lattice(n)");
    sub->add_option("--hdim", b.hdim, "hdim value (rational), used with --strict or --exact");
    sub->add_flag("--strict", b.strict, "bound means hdim < value");
    sub->add_flag("--exact", b.exact, "bound means hdim = value (default)");
}

HdimBound bound_for(const Common& c, const BoundArgs& b) {
    if (!b.preset.empty()) {
        if (!b.hdim.empty()) throw ValidationError("give either --preset or --hdim, not both");
        return presets(c).resolve(b.preset);
    }
    if (b.hdim.empty()) throw ValidationError("an hdim bound is required (--preset or --hdim)");
    if (b.strict && b.exact) throw ValidationError("--strict and --exact are exclusive");
    return make_hdim_bound(parse_rational(b.hdim), b.strict);
}

Outcome cmd_weyl(const Common& c, const std::string& type, bool elements) {
    auto w = weyl_for(c, type);
    Outcome o;
    o.payload = weyl_info_json(*w);
    if (elements) {
        Json els = Json::array();
        for (ElementId x = 0; x < w->size(); ++x) els.push_back({{"id", x}, {"word", w->name(x)}, {"length", w->length(x)}});
        o.payload["elements"] = els;
    }
    const auto& p = o.payload;
    std::string perm;
    for (const auto& s : p["minus_w0"]) perm += (perm.empty() ? "" : " ") + std::to_string(s.get<int>());
    o.text = kv({{"type", p["type"].get<std::string>()},
                 {"|W|", std::to_string(p["order"].get<std::size_t>())},
                 {"|Phi+|", std::to_string(p["positive_roots"].get<int>())},
                 {"l(w0)", std::to_string(p["longest_length"].get<int>())},
                 {"dim g", std::to_string(p["dim_g"].get<int>())},
                 {"-w0 on simple roots", perm},
                 {"w0", p["w0"].get<std::string>()}});
    if (elements) {
        Table t({"id", "length", "reduced word"});
        for (ElementId x = 0; x < w->size(); ++x) t.add({std::to_string(x), std::to_string(w->length(x)), w->name(x)});
        o.text += "\n" + t.render();
    }
    return o;
}

Outcome cmd_flags(const Common& c, const ConfigArgs& a) {
    auto fc = config_for(c, a);
    Outcome o;
    o.payload = flag_configuration_json(fc);
    std::string hist;
    for (const auto& h : o.payload["schubert_cells_by_dimension"]) hist += (hist.empty() ? "" : " ") + std::to_string(h.get<std::size_t>());
    o.text = kv({{"configuration", fc.describe()},
                 {"N = dim F", std::to_string(fc.flag_dimension())},
                 {"cosets W/W_D", std::to_string(fc.cosets().size())},
                 {"double cosets", std::to_string(o.payload["double_cosets"].get<std::size_t>())},
                 {"cells by dimension", hist}});
    return o;
}

struct IdealArgs {
    ConfigArgs cfg;
    bool count_only = false;
    bool extremes_only = false;
    bool csv = false;
    std::optional<std::size_t> limit;
};

Outcome cmd_ideal_extremes(const FlagConfiguration& fc, const EnumerationOptions& eo) {
    Outcome o;
    Json p;
    p["configuration"] = flag_configuration_json(fc);
    std::optional<int> mx, mn;
    try {
        if (auto e = max_min_ideal_length(fc, eo)) {
            mx = e->max_length;
            mn = e->min_length;
            p["max_witness"] = ideal_json(fc, e->max_witness);
            p["min_witness"] = ideal_json(fc, e->min_witness);
            p["search_nodes"] = e->nodes;
        }
    } catch (const SearchLimitError& e) {
        o.resource_limited = true;
        std::cerr << "resource limit: " << e.what() << "\n";
    }
    p["max_ell"] = mx ? Json(*mx) : Json(nullptr);
    p["min_ell"] = mn ? Json(*mn) : Json(nullptr);
    o.payload = p;
    o.text = kv({{"configuration", fc.describe()},
                 {"N", std::to_string(fc.flag_dimension())},
                 {"l(I) range", opt_str(mn) + " .. " + opt_str(mx) + (o.resource_limited ? " (search incomplete)" : "")}});
    return o;
}

Outcome cmd_ideals(const Common& c, const IdealArgs& a) {
    auto fc = config_for(c, a.cfg);
    EnumerationOptions eo = enum_options(c);
    if (a.extremes_only && !a.csv) return cmd_ideal_extremes(fc, eo);
    eo.limit = a.limit;
    eo.count_only = a.count_only && !a.csv;
    Outcome o;
    EnumerationResult res;
    try {
        res = enumerate_balanced_ideals(fc, eo);
    } catch (const SearchLimitError& e) {
        res = e.partial();
        o.resource_limited = true;
        std::cerr << "resource limit: " << e.what() << "\n";
    }
    Json p = enumeration_json(fc, res);
    std::optional<int> mx, mn;
    for (const auto& b : res.ideals) {
        if (!mx || b.length > *mx) mx = b.length;
        if (!mn || b.length < *mn) mn = b.length;
    }
    if (a.count_only) p.erase("ideals");
    o.payload = p;
    std::vector<std::pair<std::string, std::string>> rows{
        {"configuration", fc.describe()},
        {"N", std::to_string(fc.flag_dimension())},
        {"balanced ideals", std::to_string(res.count) + (res.truncated ? " (truncated)" : "") +
                                (o.resource_limited ? " (partial)" : "")}};
    if (!eo.count_only) rows.emplace_back("l(I) range", opt_str(mn) + " .. " + opt_str(mx));
    o.text = kv(rows);
    if (a.csv) {
        o.text = ideals_csv(fc, res);
    } else if (!a.count_only) {
        Table t({"#", "bitset", "l(I)", "N-l(I)", "coset dims"});
        std::size_t k = 0;
        for (const auto& b : res.ideals) {
            std::string dims;
            for (int d : thickening_profile(fc, b).dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
            t.add({std::to_string(k++), b.membership.to_hex(), std::to_string(b.length), std::to_string(b.codefect), dims});
        }
        o.text += "\n" + t.render();
    }
    return o;
}

struct SmallnessArgs {
    ConfigArgs cfg;
    BoundArgs bound;
    int k = 4;
};

Outcome cmd_certify(const Common& c, const SmallnessArgs& a) {
    auto fc = config_for(c, a.cfg);
    HdimBound h = bound_for(c, a.bound);
    Outcome o;
    EnumerationResult res;
    try {
        res = enumerate_balanced_ideals(fc, enum_options(c));
    } catch (const SearchLimitError& e) {
        res = e.partial();
        o.resource_limited = true;
        std::cerr << "resource limit: " << e.what() << "\n";
    }
    Json p;
    p["configuration"] = flag_configuration_json(fc);
    p["hdim"] = hdim_json(h);
    p["k"] = a.k;
    Json rows = Json::array();
    Table t({"bitset", "l(I)", "2l(I)+h", "2(N-l)-k", "certified", "max k"});
    bool all = true;
    for (const auto& b : res.ideals) {
        auto v = certify_k_small(fc, b, h, a.k);
        all = all && v.certified;
        Json r = verdict_json(v);
        r["bitset"] = b.membership.to_hex();
        rows.push_back(r);
        t.add({b.membership.to_hex(), std::to_string(b.length), to_string(v.lambda_bound), to_string(v.threshold),
               v.certified ? "yes" : "criterion fails", opt_str(v.max_k)});
    }
    p["ideal_count"] = res.ideals.size();
    p["complete"] = !o.resource_limited;
    p["all_certified"] = all;
    p["verdicts"] = rows;
    o.payload = p;
    o.text = kv({{"configuration", fc.describe()},
                 {"bound", h.describe()},
                 {"k", std::to_string(a.k)},
                 {"every ideal certified", all ? "yes" : "no"}}) +
             "\n" + t.render();
    return o;
}

Outcome cmd_verify_bound(const Common& c, const ConfigArgs& cfg) {
    auto fc = config_for(c, cfg);
    auto r = verify_length_bound(fc, enum_options(c));
    Outcome o;
    o.payload = length_report_json(r);
    o.resource_limited = !r.complete;
    o.text = kv({{"configuration", r.description},
                 {"N - 3", std::to_string(r.bound)},
                 {"max l(I)", opt_str(r.max_length) + (r.complete ? "" : " (search incomplete)")},
                 {"min l(I)", opt_str(r.min_length)},
                 {"search nodes", std::to_string(r.nodes)},
                 {"l(I) <= N-3", r.pass ? "PASS" : "FAIL"},
                 {"witness", r.witness ? r.witness->membership.to_hex() + " with l(I) = " + std::to_string(r.witness->length)
                                       : "-"}});
    return o;
}

struct SweepArgs {
    std::vector<std::string> types;
    int rank_cap = 0;
    std::string selector = "borel-complete";
    BoundArgs bound;
    int k = 4;
};

Outcome cmd_sweep(const Common& c, const SweepArgs& a) {
    SweepOptions so;
    for (const auto& t : a.types) so.types.push_back(parse_simple_type(t));
    if (a.rank_cap > 0)
        for (const auto& t : all_simple_types(a.rank_cap))
            if (std::find(so.types.begin(), so.types.end(), t) == so.types.end()) so.types.push_back(t);
    if (so.types.empty()) throw ValidationError("sweep needs --types or --rank-cap");
    so.selector = parse_parabolic_selector(a.selector);
    so.bound = a.bound.preset.empty() && a.bound.hdim.empty() ? HdimBound{2, true} : bound_for(c, a.bound);
    so.k = a.k;
    so.enumeration = enum_options(c);
    so.max_order = c.max_order;
    so.threads = c.threads;
    auto rows = classification_sweep(so);
    Outcome o;
    Json arr = Json::array();
    Table t({"type", "pa", "pd", "N", "#ideals", "min l", "max l", "certified", "notes"});
    for (const auto& r : rows) {
        arr.push_back(sweep_row_json(r));
        o.resource_limited = o.resource_limited || r.resource_limited;
        std::string notes;
        for (const auto& s : r.annotations) notes += (notes.empty() ? "" : "; ") + s;
        if (!r.error.empty()) notes += (notes.empty() ? "" : "; ") + r.error;
        t.add({r.type.name(), "{" + format_theta(r.theta_a) + "}", "{" + format_theta(r.theta_d) + "}",
               std::to_string(r.flag_dimension), std::to_string(r.ideal_count) + (r.count_is_lower_bound ? "+" : ""),
               opt_str(r.min_length), opt_str(r.max_length),
               r.all_certified ? (*r.all_certified ? "yes" : "criterion fails") : "undecided", notes});
    }
    o.payload["hdim"] = hdim_json(so.bound);
    o.payload["k"] = so.k;
    o.payload["selector"] = to_string(so.selector);
    o.payload["rows"] = arr;
    o.text = so.bound.describe() + ", k = " + std::to_string(so.k) + "\n\n" + t.render();
    return o;
}

Outcome cmd_moduli(const std::vector<int>& genera, const std::vector<std::string>& types, int rank_cap) {
    std::vector<SimpleType> ts;
    for (const auto& t : types) ts.push_back(parse_simple_type(t));
    if (rank_cap > 0)
        for (const auto& t : all_simple_types(rank_cap)) ts.push_back(t);
    if (ts.empty()) throw ValidationError("moduli needs --type or --rank-cap");
    if (genera.empty()) throw ValidationError("moduli needs --genus");
    Outcome o;
    Json arr = Json::array();
    Table t({"genus", "type", "dim G", "QF_S (C)", "QF_S(G) (C)", "Hitchin (R)"});
    for (int g : genera)
        for (const auto& ty : ts) {
            auto m = moduli_dimensions(g, build_root_system(ty));
            arr.push_back(moduli_json(m));
            t.add({std::to_string(g), ty.name(), std::to_string(m.dim_g), std::to_string(m.qf_surface),
                   std::to_string(m.qf_group), std::to_string(m.hitchin_real)});
        }
    o.payload["rows"] = arr;
    o.text = t.render();
    return o;
}

std::string dims_grid(const std::vector<std::vector<int>>& dims, int width, int height) {
    std::string out;
    for (int q = height - 1; q >= 0; --q) {
        out += "q=" + std::to_string(q) + " |";
        for (int p = 0; p < width; ++p) {
            std::string s = std::to_string(dims[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
            out += std::string(4 - std::min<std::size_t>(4, s.size()), ' ') + s;
        }
        out += "\n";
    }
    out += "     " + std::string(static_cast<std::size_t>(4 * width), '-') + "\n      ";
    for (int p = 0; p < width; ++p) {
        std::string s = "p" + std::to_string(p);
        out += std::string(4 - std::min<std::size_t>(4, s.size()), ' ') + s;
    }
    return out + "\n";
}

struct HomalgArgs {
    std::string input;
    std::string direction = "vertical";
    int r = 2;
    std::uint64_t seed = 1;
    int width = 4, height = 4, max_dim = 8, pieces = 6;
};

Outcome cmd_homalg(const std::string& action, const HomalgArgs& a) {
    Outcome o;
    if (action == "random") {
        std::mt19937_64 rng(a.seed);
        RandomComplexOptions ro;
        ro.max_width = a.width;
        ro.max_height = a.height;
        ro.max_dim = a.max_dim;
        ro.pieces = a.pieces;
        o.payload = double_complex_json(random_double_complex(rng, ro));
        o.text = o.payload.dump(2) + "\n";
        return o;
    }
    DoubleComplex dc = double_complex_from_json(read_json_file(a.input));
    if (action == "validate") {
        auto rep = validate(dc);
        o.payload = validation_json(rep);
        o.text = rep.ok ? "ok\n" : "violation (" + rep.kind + "): " + rep.message + "\n";
        if (!rep.ok) throw ValidationError(rep.message);
        return o;
    }
    if (action == "cohomology") {
        Json arr = Json::array();
        Table t({"k", "dim Tot^k", "dim H^k"});
        for (int n = 0; n < total_degree_count(dc); ++n) {
            int h = total_cohomology(dc, n);
            arr.push_back(h);
            t.add({std::to_string(n), std::to_string(total_dimension(dc, n)), std::to_string(h)});
        }
        o.payload["total_cohomology"] = arr;
        o.text = t.render();
        return o;
    }
    Direction dir = parse_direction(a.direction);
    if (action == "page" || action == "limit") {
        auto page = action == "page" ? spectral_page(dc, dir, a.r) : limit_page(dc, dir);
        o.payload = page_json(page);
        o.text = to_string(dir) + " E_" + std::to_string(page.r) + "\n" + dims_grid(page.dims, page.width, page.height);
        return o;
    }
    if (action == "ldt") {
        auto s = ldt(dc, dir);
        o.payload = ldt_json(s);
        o.text = "0 -> E_2^{1,0} (" + std::to_string(s.dim_e10) + ") -> H^1 (" + std::to_string(s.dim_h1) + ") -> E_2^{0,1} (" +
                 std::to_string(s.dim_e01) + ")\n" +
                 kv({{"rank alpha", std::to_string(rank(s.alpha))},
                     {"rank beta", std::to_string(rank(s.beta))},
                     {"exact", s.exact() ? "yes" : "no"}});
        return o;
    }
    throw ValidationError("unknown homalg action '" + action + "'");
}

struct GrpcohArgs {
    std::string presentation;
    int surface = 0;
    int free_rank = -1;
    std::string rep;
    int trivial = 0;
};

Outcome cmd_grpcoh(const GrpcohArgs& a) {
    GroupPresentation pres;
    int sources = (!a.presentation.empty()) + (a.surface > 0) + (a.free_rank >= 0);
    if (sources != 1) throw ValidationError("give exactly one of --presentation, --surface, --free");
    if (!a.presentation.empty()) pres = parse_presentation(read_file(a.presentation));
    else if (a.surface > 0) pres = surface_group_presentation(a.surface);
    else pres = free_group_presentation(a.free_rank);
    if (a.rep.empty() == (a.trivial <= 0)) throw ValidationError("give exactly one of --rep, --trivial");
    MatrixRep rep = a.rep.empty() ? trivial_representation(pres.generators, a.trivial) : representation_from_json(read_json_file(a.rep));
    auto dims = cohomology_dims(pres, rep);
    Outcome o;
    o.payload["presentation"] = presentation_json(pres);
    o.payload["dimension"] = rep.dimension;
    o.payload["cohomology"] = cohomology_json(dims);
    o.text = kv({{"generators", std::to_string(pres.generators)},
                 {"relators", std::to_string(pres.relators.size())},
                 {"module dim", std::to_string(rep.dimension)},
                 {"dim Z1", std::to_string(dims.z1)},
                 {"dim B1", std::to_string(dims.b1)},
                 {"dim H1", std::to_string(dims.h1)},
                 {"dim H0", std::to_string(dims.h0)}});
    return o;
}

Outcome cmd_cache(const Common& c, const std::string& action, const std::vector<std::string>& types) {
    WeylCache cache(WeylCache::default_directory());
    Outcome o;
    o.payload["directory"] = cache.directory().string();
    if (action == "clear") {
        o.payload["removed"] = cache.clear();
        o.text = "removed " + std::to_string(o.payload["removed"].get<std::size_t>()) + " entries from " + cache.directory().string() + "\n";
    } else if (action == "warm") {
        Json arr = Json::array();
        for (const auto& t : types) {
            auto w = cache.get(parse_simple_type(t), c.max_order);
            arr.push_back(cache.path_for(w.root_system().type()).filename().string());
        }
        o.payload["stored"] = arr;
        o.text = "cached " + std::to_string(arr.size()) + " groups in " + cache.directory().string() + "\n";
    } else if (action == "list" || action == "path") {
        Json arr = Json::array();
        std::string text = cache.directory().string() + "\n";
        auto entries = cache.entries();
        std::sort(entries.begin(), entries.end());
        for (const auto& e : entries) {
            arr.push_back(e.filename().string());
            text += "  " + e.filename().string() + "\n";
        }
        o.payload["entries"] = arr;
        o.text = action == "path" ? cache.directory().string() + "\n" : text;
    } else {
        throw ValidationError("unknown cache action '" + action + "' (list, path, warm, clear)");
    }
    return o;
}

}  // namespace

Outcome cmd_preset(const Common& c, const std::string& action, const std::string& spec, int k) {
    auto table = presets(c);
    Outcome o;
    if (action == "list") {
        Json hd = Json::array(), cf = Json::array();
        Table th({"hdim preset", "bound", "description"});
        for (const auto& p : table.presets()) {
            std::string b = make_hdim_bound(p.value, p.strict).describe();
            if (p.parameter) {
                b = std::string(p.strict ? "hdim < " : "hdim = ") + (p.scale == 1 ? "" : to_string(p.scale) + "*") + *p.parameter;
                if (sgn(p.offset) != 0) b += (sgn(p.offset) < 0 ? " - " : " + ") + to_string(abs(p.offset));
            }
            std::string shown = p.parameter ? p.name + "(" + *p.parameter + ")" : p.name;
            hd.push_back({{"name", shown}, {"bound", b}, {"description", p.description}});
            th.add({shown, b, p.description});
        }
        Table tc({"configuration", "type", "pa", "pd", "hdim", "description"});
        for (const auto& p : table.configurations()) {
            std::string shown = p.parameter ? p.name + "(" + *p.parameter + ")" : p.name;
            cf.push_back({{"name", shown}, {"type", p.type}, {"pa", p.pa}, {"pd", p.pd}, {"hdim", p.hdim},
                          {"description", p.description}});
            tc.add({shown, p.type, p.pa, p.pd, p.hdim, p.description});
        }
        o.payload["hdim_presets"] = hd;
        o.payload["configurations"] = cf;
        o.text = th.render() + "\n" + tc.render();
        return o;
    }
    if (action != "show") throw ValidationError("unknown preset action '" + action + "' (list, show)");
    if (spec.empty()) throw ValidationError("preset show needs a configuration name, e.g. ghys or rigid(4)");
    auto r = table.resolve_configuration(spec);
    auto w = weyl_for(c, r.type.name());
    auto fc = build_flag_configuration(w, r.theta_a, r.theta_d);
    EnumerationOptions eo = enum_options(c);
    eo.count_only = true;
    EnumerationResult counted;
    try {
        counted = enumerate_balanced_ideals(fc, eo);
    } catch (const SearchLimitError& e) {
        counted = e.partial();
        o.resource_limited = true;
    }
    eo.count_only = false;
    std::optional<LengthExtremes> ext;
    try {
        ext = max_min_ideal_length(fc, eo);
    } catch (const SearchLimitError&) {
        o.resource_limited = true;
    }
    Json p;
    p["name"] = r.name;
    p["description"] = r.description;
    p["configuration"] = flag_configuration_json(fc);
    p["hdim"] = hdim_json(r.bound);
    p["ideal_count"] = counted.count;
    p["count_is_lower_bound"] = o.resource_limited;
    p["max_ell"] = ext ? Json(ext->max_length) : Json(nullptr);
    p["min_ell"] = ext ? Json(ext->min_length) : Json(nullptr);
    std::vector<std::pair<std::string, std::string>> rows{
        {"configuration", r.name + " = " + fc.describe()},
        {"description", r.description},
        {"bound", r.bound.describe()},
        {"N", std::to_string(fc.flag_dimension())},
        {"balanced ideals", std::to_string(counted.count) + (o.resource_limited ? "+" : "")}};
    if (ext) {
        auto worst = certify_k_small(fc.flag_dimension(), ext->max_length, r.bound, k);
        auto best = certify_k_small(fc.flag_dimension(), ext->min_length, r.bound, k);
        p["k"] = k;
        p["longest_ideal"] = verdict_json(worst);
        p["shortest_ideal"] = verdict_json(best);
        rows.emplace_back("l(I) range", std::to_string(ext->min_length) + " .. " + std::to_string(ext->max_length));
        rows.emplace_back("k-small for every ideal", worst.certified ? "yes" : "criterion fails");
        rows.emplace_back("k-small for some ideal", best.certified ? "yes" : "criterion fails");
        rows.emplace_back("max certified k", opt_str(worst.max_k) + " .. " + opt_str(best.max_k));
        rows.emplace_back("k", std::to_string(k));
    }
    o.payload = p;
    o.text = kv(rows);
    return o;
}

int main(int argc, char** argv) {
    CLI::App app{"anosovkit: balanced ideals, k-smallness certificates and exact homological checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--json", common.json, "emit a JSON run report instead of tables");
    app.add_option("--threads", common.threads, "worker threads for enumeration and sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--no-cache", common.no_cache, "do not read or write the Weyl group cache");
    app.add_option("--max-order", common.max_order, "largest Weyl group to materialize");
    app.add_option("--max-nodes", common.max_nodes, "search-node cap for balanced-ideal enumeration");
    app.add_option("--presets", common.presets, "hdim preset file (default: $ANOSOVKIT_PRESETS or the shipped file)");

    std::string weyl_type;
    bool weyl_elements = false;
    auto* weyl = app.add_subcommand("weyl", "Weyl group and root system data");
    weyl->add_option("--type,-t,type", weyl_type, "simple type")->required();
    weyl->add_flag("--elements", weyl_elements, "list elements with reduced words");

    ConfigArgs flags_args;
    auto* flags = app.add_subcommand("flags", "flag configuration (P_A, F = G/P_D)");
    add_config_options(flags, flags_args);

    IdealArgs ideal_args;
    auto* ideals = app.add_subcommand("ideals", "enumerate balanced ideals");
    add_config_options(ideals, ideal_args.cfg);
    ideals->add_flag("--count-only", ideal_args.count_only, "report the count only");
    ideals->add_flag("--extremes-only", ideal_args.extremes_only, "report min/max l(I) only");
    ideals->add_flag("--csv", ideal_args.csv, "CSV summary rows (text mode)");
    ideals->add_option("--limit", ideal_args.limit, "stop after this many ideals");

    SmallnessArgs small_args;
    auto* small = app.add_subcommand("smallness", "k-smallness certificates and the l(I) <= N-3 bound");
    add_config_options(small, small_args.cfg);
    add_bound_options(small, small_args.bound);
    small->add_option("--k,-k", small_args.k, "codimension k")->check(CLI::NonNegativeNumber);
    auto* certify = small->add_subcommand("certify", "certify k-smallness for every balanced ideal (default)");
    auto* verify = small->add_subcommand("verify-bound", "check l(I) <= N-3 over all balanced ideals");
    certify->fallthrough();
    verify->fallthrough();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "classification sweep over types and parabolics");
    sweep->add_option("--types", sweep_args.types, "types, e.g. A2,B2,G2")->delimiter(',');
    sweep->add_option("--rank-cap", sweep_args.rank_cap, "add every simple type of rank <= cap");
    sweep->add_option("--selector", sweep_args.selector, "borel-complete, borel-all or symmetric-all");
    add_bound_options(sweep, sweep_args.bound);
    sweep->add_option("--k,-k", sweep_args.k, "codimension k")->check(CLI::NonNegativeNumber);

    std::vector<int> genera;
    std::vector<std::string> moduli_types;
    int moduli_rank_cap = 0;
    auto* moduli = app.add_subcommand("moduli", "moduli-space dimension formulas");
    moduli->add_option("--genus,-g", genera, "genus (repeatable or comma-separated)")->delimiter(',');
    moduli->add_option("--type,-t", moduli_types, "simple type(s)")->delimiter(',');
    moduli->add_option("--rank-cap", moduli_rank_cap, "every simple type of rank <= cap");

    HomalgArgs homalg_args;
    std::string homalg_action;
    auto* homalg = app.add_subcommand("homalg", "double complexes: validate, cohomology, page, limit, ldt, random");
    homalg->add_option("action", homalg_action, "validate | cohomology | page | limit | ldt | random")->required();
    homalg->add_option("--input,-i", homalg_args.input, "double complex JSON file");
    homalg->add_option("--direction", homalg_args.direction, "vertical or horizontal");
    homalg->add_option("--r,-r", homalg_args.r, "page index")->check(CLI::NonNegativeNumber);
    homalg->add_option("--seed", homalg_args.seed, "seed for `random`");
    homalg->add_option("--width", homalg_args.width, "max width for `random`");
    homalg->add_option("--height", homalg_args.height, "max height for `random`");
    homalg->add_option("--max-dim", homalg_args.max_dim, "max space dimension for `random`");
    homalg->add_option("--pieces", homalg_args.pieces, "building blocks for `random`");

    GrpcohArgs grp_args;
    auto* grpcoh = app.add_subcommand("grpcoh", "group cohomology dimensions via Fox calculus");
    grpcoh->add_option("--presentation,-p", grp_args.presentation, "presentation file");
    grpcoh->add_option("--surface", grp_args.surface, "closed surface group of this genus");
    grpcoh->add_option("--free", grp_args.free_rank, "free group of this rank");
    grpcoh->add_option("--rep", grp_args.rep, "representation JSON file");
    grpcoh->add_option("--trivial", grp_args.trivial, "trivial module of this dimension");

    std::string preset_action = "list", preset_spec;
    int preset_k = 4;
    auto* preset = app.add_subcommand("preset", "shipped hdim bounds and example configurations: list, show NAME");
    preset->add_option("action", preset_action, "list | show");
    preset->add_option("name", preset_spec, "configuration, e.g. ghys, rigid(5), line-hyperplane(3)");
    preset->add_option("--k,-k", preset_k, "codimension k")->check(CLI::NonNegativeNumber);

    std::string cache_action = "list";
    std::vector<std::string> cache_types;
    auto* cache = app.add_subcommand("cache", "Weyl group cache: list, path, warm, clear");
    cache->add_option("action", cache_action, "list | path | warm | clear");
    cache->add_option("--types", cache_types, "types to precompute for `warm`")->delimiter(',');

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
    std::string canonical;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--json") continue;
        if (a == "--threads") {
            ++i;
            continue;
        }
        if (a.rfind("--threads=", 0) == 0) continue;
        canonical += a + '\0';
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    int code = 0;
    try {
        if (*weyl) out = cmd_weyl(common, weyl_type, weyl_elements);
        else if (*flags) out = cmd_flags(common, flags_args);
        else if (*ideals) out = cmd_ideals(common, ideal_args);
        else if (*small) out = *verify ? cmd_verify_bound(common, small_args.cfg) : cmd_certify(common, small_args);
        else if (*sweep) out = cmd_sweep(common, sweep_args);
        else if (*moduli) out = cmd_moduli(genera, moduli_types, moduli_rank_cap);
        else if (*homalg) out = cmd_homalg(homalg_action, homalg_args);
        else if (*grpcoh) out = cmd_grpcoh(grp_args);
        else if (*cache) out = cmd_cache(common, cache_action, cache_types);
        else if (*preset) out = cmd_preset(common, preset_action, preset_spec, preset_k);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (out.resource_limited) code = 2;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (common.json) {
        Json report;
        report["command"] = command;
        report["config_hash"] = fnv1a_hex(canonical);
        report["wall_time_ms"] = ms;
        report["resource_limited"] = out.resource_limited;
        report["payload"] = out.payload;
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << out.text;
    }
    return code;
}
