#include "anosovkit/smallness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "anosovkit/errors.hpp"

#ifndef ANOSOVKIT_INSTALLED_PRESETS
#define ANOSOVKIT_INSTALLED_PRESETS ""
#endif
#ifndef ANOSOVKIT_SOURCE_PRESETS
#define ANOSOVKIT_SOURCE_PRESETS ""
#endif

namespace anosovkit {

std::string HdimBound::describe() const { return std::string("hdim ") + (strict ? "< " : "= ") + value.get_str(); }

HdimBound make_hdim_bound(const Rational& value, bool strict) {
    if (sgn(value) < 0) throw ValidationError("hdim bound must be nonnegative, got " + value.get_str());
    return HdimBound{value, strict};
}

std::optional<int> max_certified_k(int flag_dimension, int ideal_length, const HdimBound& h) {
    Rational slack = Rational(2 * (flag_dimension - ideal_length)) - h.value;
    BigInt k = h.strict ? floor(slack) : BigInt(ceil(slack) - 1);
    if (k < 0) return std::nullopt;
    return static_cast<int>(k.get_si());
}

SmallnessVerdict certify_k_small(int flag_dimension, int ideal_length, const HdimBound& h, int k) {
    if (k < 0) throw ValidationError("k must be nonnegative");
    SmallnessVerdict v;
    v.bound = h;
    v.flag_dimension = flag_dimension;
    v.ideal_length = ideal_length;
    v.k = k;
    v.lambda_bound = Rational(2 * ideal_length) + h.value;
    v.threshold = Rational(2 * (flag_dimension - ideal_length) - k);
    v.certified = h.strict ? h.value <= v.threshold : h.value < v.threshold;
    v.max_k = max_certified_k(flag_dimension, ideal_length, h);
    const std::string rel = h.strict ? (v.certified ? " <= " : " > ") : (v.certified ? " < " : " >= ");
    v.inequality = h.describe() + ", " + h.value.get_str() + rel + v.threshold.get_str() + " = 2(N - l) - k";
    return v;
}

std::optional<int> max_certified_k(const FlagConfiguration& fc, const BalancedIdeal& ideal, const HdimBound& h) {
    return max_certified_k(fc.flag_dimension(), ideal.length, h);
}

SmallnessVerdict certify_k_small(const FlagConfiguration& fc, const BalancedIdeal& ideal, const HdimBound& h, int k) {
    return certify_k_small(fc.flag_dimension(), ideal.length, h, k);
}

LengthBoundReport verify_length_bound(const FlagConfiguration& fc, const EnumerationOptions& opts) {
    LengthBoundReport rep;
    rep.description = fc.describe();
    rep.flag_dimension = fc.flag_dimension();
    rep.bound = fc.flag_dimension() - 3;
    EnumerationOptions o = opts;
    o.limit.reset();
    try {
        auto e = max_min_ideal_length(fc, o);
        if (e) {
            rep.max_length = e->max_length;
            rep.min_length = e->min_length;
            rep.nodes = e->nodes;
            if (e->max_length > rep.bound) rep.witness = e->max_witness;
        }
    } catch (const SearchLimitError& e) {
        rep.complete = false;
        rep.nodes = e.partial().nodes;
    }
    rep.pass = rep.complete && (!rep.max_length || *rep.max_length <= rep.bound);
    return rep;
}

ParabolicSelector parse_parabolic_selector(std::string_view text) {
    if (text == "borel-complete") return ParabolicSelector::BorelComplete;
    if (text == "borel-all") return ParabolicSelector::BorelAll;
    if (text == "symmetric-all") return ParabolicSelector::SymmetricAll;
    throw ParseError("unknown parabolic selector '" + std::string(text) +
                     "' (expected borel-complete, borel-all or symmetric-all)");
}

std::string to_string(ParabolicSelector s) {
    switch (s) {
        case ParabolicSelector::BorelComplete: return "borel-complete";
        case ParabolicSelector::BorelAll: return "borel-all";
        case ParabolicSelector::SymmetricAll: return "symmetric-all";
    }
    return "?";
}

std::vector<std::string> type_annotations(const SimpleType& t) {
    std::vector<std::string> out;
    if (t.family == Family::C && t.rank == 2) out.push_back("isomorphic to B2");
    if (t.family == Family::D && t.rank == 3) out.push_back("isomorphic to A3");
    const bool small = (t.family == Family::A && t.rank <= 3) || (t.family == Family::B && t.rank == 2) ||
                       (t.family == Family::C && t.rank == 2) || (t.family == Family::D && t.rank == 3);
    if (small) out.push_back("excluded type: A1, A2, A3 and B2 fall outside the l(I) <= N-3 hypothesis");
    if (t.family == Family::F || t.family == Family::E)
        out.push_back("excluded for the Hitchin bound (F4, E6, E7, E8); exclusion possibly unnecessary");
    return out;
}

namespace {

std::vector<Theta> proper_subsets(int rank) {
    std::vector<Theta> out;
    for (unsigned mask = 0; mask + 1 < (1u << rank); ++mask) {
        Theta t;
        for (int i = 0; i < rank; ++i)
            if (mask >> i & 1u) t.push_back(i);
        out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(), [](const Theta& a, const Theta& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

}  // namespace

std::vector<std::pair<Theta, Theta>> selector_configurations(const WeylGroup& w, ParabolicSelector s) {
    std::vector<std::pair<Theta, Theta>> out;
    switch (s) {
        case ParabolicSelector::BorelComplete: out.emplace_back(Theta{}, Theta{}); break;
        case ParabolicSelector::BorelAll:
            for (auto& d : proper_subsets(w.rank())) out.emplace_back(Theta{}, d);
            break;
        case ParabolicSelector::SymmetricAll:
            for (auto& a : proper_subsets(w.rank()))
                if (is_symmetric_parabolic(w, a))
                    for (auto& d : proper_subsets(w.rank())) out.emplace_back(a, d);
            break;
    }
    return out;
}

std::vector<SweepRow> classification_sweep(const SweepOptions& opts) {
    struct Job {
        std::shared_ptr<const WeylGroup> weyl;
        SweepRow row;
    };
    std::vector<Job> jobs;
    for (const auto& t : opts.types) {
        validate_simple_type(t);
        std::shared_ptr<const WeylGroup> w;
        SweepRow base;
        base.type = t;
        base.annotations = type_annotations(t);
        try {
            w = std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(t), opts.max_order));
        } catch (const ResourceLimitError& e) {
            base.resource_limited = true;
            base.error = e.what();
            jobs.push_back({nullptr, std::move(base)});
            continue;
        }
        for (auto& [a, d] : selector_configurations(*w, opts.selector)) {
            SweepRow row = base;
            row.theta_a = a;
            row.theta_d = d;
            jobs.push_back({w, std::move(row)});
        }
    }

    auto run_row = [&](Job& job) {
        SweepRow& row = job.row;
        if (!job.weyl) return;
        auto fc = build_flag_configuration(job.weyl, row.theta_a, row.theta_d);
        row.flag_dimension = fc.flag_dimension();
        EnumerationOptions eo = opts.enumeration;
        eo.limit.reset();
        eo.threads = 1;
        eo.count_only = true;
        bool complete = true;
        try {
            row.ideal_count = enumerate_balanced_ideals(fc, eo).count;
        } catch (const SearchLimitError& e) {
            row.ideal_count = e.partial().count;
            row.count_is_lower_bound = true;
            row.resource_limited = true;
            row.error = e.what();
        }
        try {
            eo.count_only = false;
            if (auto e = max_min_ideal_length(fc, eo)) {
                row.max_length = e->max_length;
                row.min_length = e->min_length;
            }
        } catch (const SearchLimitError& e) {
            complete = false;
            row.resource_limited = true;
            row.error = e.what();
        }
        // Certification is monotone in l(I), so the longest ideal decides.
        bool worst_ok = !row.max_length ||
                        certify_k_small(row.flag_dimension, *row.max_length, opts.bound, opts.k).certified;
        if (!worst_ok)
            row.all_certified = false;
        else if (complete)
            row.all_certified = true;
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) run_row(jobs[i]);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(jobs.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(std::move(j.row));
    return rows;
}

ModuliDimensions moduli_dimensions(int genus, const RootSystem& rs) {
    if (genus < 2) throw ValidationError("genus must be at least 2, got " + std::to_string(genus));
    ModuliDimensions m;
    m.genus = genus;
    m.type = rs.type();
    m.dim_g = dim_lie_algebra(rs);
    m.qf_surface = 6 * genus - 3;
    m.qf_group = 6 * genus - 6 + m.dim_g;
    m.hitchin_real = (2 * genus - 2) * m.dim_g + 2 * m.dim_g;
    return m;
}

PresetTable PresetTable::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("preset file: ") + e.what());
    }
    PresetTable t;
    try {
        for (const auto& p : j.at("presets")) {
            HdimPreset h;
            h.name = p.at("name").get<std::string>();
            h.description = p.value("description", "");
            h.strict = p.at("strict").get<bool>();
            if (p.contains("parameter")) {
                h.parameter = p.at("parameter").get<std::string>();
                h.scale = parse_rational(p.value("scale", "1"));
                h.offset = parse_rational(p.value("offset", "0"));
                if (p.contains("min_parameter")) h.min_parameter = p.at("min_parameter").get<int>();
            } else {
                h.value = parse_rational(p.at("value").get<std::string>());
                if (sgn(h.value) < 0) throw ValidationError("preset '" + h.name + "' has a negative value");
            }
            t.presets_.push_back(std::move(h));
        }
        for (const auto& p : j.value("configurations", nlohmann::json::array())) {
            ConfigurationPreset c;
            c.name = p.at("name").get<std::string>();
            c.description = p.value("description", "");
            c.type = p.at("type").get<std::string>();
            c.pa = p.value("pa", "");
            c.pd = p.value("pd", "");
            c.hdim = p.at("hdim").get<std::string>();
            if (p.contains("parameter")) c.parameter = p.at("parameter").get<std::string>();
            if (p.contains("min_parameter")) c.min_parameter = p.at("min_parameter").get<int>();
            t.configurations_.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("preset file: ") + e.what());
    }
    return t;
}

PresetTable PresetTable::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open preset file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::filesystem::path PresetTable::default_path() {
    if (const char* env = std::getenv("ANOSOVKIT_PRESETS"); env && *env) return env;
    for (const char* p : {ANOSOVKIT_INSTALLED_PRESETS, ANOSOVKIT_SOURCE_PRESETS})
        if (*p && std::filesystem::exists(p)) return p;
    throw ValidationError("no hdim preset file found; set ANOSOVKIT_PRESETS");
}

PresetTable PresetTable::load_default() { return from_file(default_path()); }

HdimBound PresetTable::resolve(std::string_view spec) const {
    std::string name(spec);
    std::optional<std::string> arg;
    if (auto open = spec.find('('); open != std::string_view::npos) {
        if (spec.back() != ')') throw ParseError("malformed preset '" + std::string(spec) + "'");
        name = std::string(spec.substr(0, open));
        arg = std::string(spec.substr(open + 1, spec.size() - open - 2));
    }
    for (const auto& p : presets_) {
        if (p.name != name) continue;
        if (!p.parameter) {
            if (arg) throw ValidationError("preset '" + name + "' takes no parameter");
            return make_hdim_bound(p.value, p.strict);
        }
        if (!arg) throw ValidationError("preset '" + name + "' needs a parameter " + *p.parameter + ", e.g. " + name + "(3)");
        Rational n = parse_rational(*arg);
        if (n.get_den() != 1) throw ValidationError("preset parameter must be an integer");
        if (p.min_parameter && n < *p.min_parameter)
            throw ValidationError("preset '" + name + "' needs " + *p.parameter + " >= " + std::to_string(*p.min_parameter));
        return make_hdim_bound(p.scale * n + p.offset, p.strict);
    }
    std::string known;
    for (const auto& p : presets_) known += (known.empty() ? "" : ", ") + p.name;
    throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
}

namespace {

std::pair<std::string, std::optional<int>> split_call(std::string_view spec) {
    auto open = spec.find('(');
    if (open == std::string_view::npos) return {std::string(spec), std::nullopt};
    if (spec.back() != ')') throw ParseError("malformed preset '" + std::string(spec) + "'");
    Rational n = parse_rational(spec.substr(open + 1, spec.size() - open - 2));
    if (n.get_den() != 1) throw ValidationError("preset parameter must be an integer");
    return {std::string(spec.substr(0, open)), static_cast<int>(n.get_num().get_si())};
}

std::string substitute(const std::string& text, std::optional<int> n) {
    static const std::regex slot(R"(\{n([+-][0-9]+)?\})");
    std::string out;
    auto last = text.cbegin();
    for (std::sregex_iterator it(text.begin(), text.end(), slot), end; it != end; ++it) {
        if (!n) throw ValidationError("preset text '" + text + "' uses {n} but the preset takes no parameter");
        out.append(last, (*it)[0].first);
        out += std::to_string(*n + ((*it)[1].matched ? std::stoi((*it)[1].str()) : 0));
        last = (*it)[0].second;
    }
    out.append(last, text.cend());
    return out;
}

Theta preset_theta(const std::string& text, int rank) {
    if (text.empty() || text.front() != '~') return parse_theta(text, rank);
    Theta drop = parse_theta(std::string_view(text).substr(1), rank);
    Theta out;
    for (int i = 0; i < rank; ++i)
        if (!std::binary_search(drop.begin(), drop.end(), i)) out.push_back(i);
    return out;
}

}  // namespace

ResolvedConfiguration PresetTable::resolve_configuration(std::string_view spec) const {
    auto [name, arg] = split_call(spec);
    for (const auto& c : configurations_) {
        if (c.name != name) continue;
        if (c.parameter && !arg)
            throw ValidationError("configuration '" + name + "' needs a parameter " + *c.parameter + ", e.g. " + name + "(4)");
        if (!c.parameter && arg) throw ValidationError("configuration '" + name + "' takes no parameter");
        if (arg && c.min_parameter && *arg < *c.min_parameter)
            throw ValidationError("configuration '" + name + "' needs " + *c.parameter + " >= " + std::to_string(*c.min_parameter));
        ResolvedConfiguration r;
        r.name = std::string(spec);
        r.description = c.description;
        r.type = parse_simple_type(substitute(c.type, arg));
        validate_simple_type(r.type);
        r.theta_a = preset_theta(substitute(c.pa, arg), r.type.rank);
        r.theta_d = preset_theta(substitute(c.pd, arg), r.type.rank);
        r.hdim_spec = substitute(c.hdim, arg);
        r.bound = resolve(r.hdim_spec);
        return r;
    }
    std::string known;
    for (const auto& c : configurations_) known += (known.empty() ? "" : ", ") + c.name;
    throw ValidationError("unknown configuration '" + name + "' (known: " + known + ")");
}

}  // namespace anosovkit
