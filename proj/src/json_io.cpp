#include "anosovkit/json_io.hpp"

#include <cstdio>

#include "anosovkit/errors.hpp"

namespace anosovkit {

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json theta_json(const Theta& t) {
    Json a = Json::array();
    for (int i : t) a.push_back(i + 1);
    return a;
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("expected a rational string or integer, got " + j.dump());
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON input: ") + e.what());
    }
}

}  // namespace

Json weyl_info_json(const WeylGroup& w) {
    const RootSystem& rs = w.root_system();
    Json j;
    j["type"] = rs.type().name();
    j["rank"] = rs.rank();
    j["order"] = w.size();
    j["positive_roots"] = rs.num_positive();
    j["longest_length"] = w.length(w.w0());
    j["dim_g"] = dim_lie_algebra(rs);
    j["cartan"] = rs.cartan();
    Json perm = Json::array();
    for (int s : minus_w0_permutation(rs)) perm.push_back(s + 1);
    j["minus_w0"] = perm;
    j["w0"] = w.name(w.w0());
    return j;
}

Json flag_configuration_json(const FlagConfiguration& fc) {
    Json j;
    j["type"] = fc.weyl().root_system().type().name();
    j["theta_a"] = theta_json(fc.theta_a());
    j["theta_d"] = theta_json(fc.theta_d());
    j["theta_a_symmetric"] = fc.theta_a_symmetric();
    j["flag_dimension"] = fc.flag_dimension();
    j["cosets"] = fc.cosets().size();
    j["coset_size"] = fc.coset_size();
    std::size_t orbits = 0;
    for (ElementId x = 0; x < fc.weyl().size(); ++x)
        if (fc.orbit_of(x) == x) ++orbits;
    j["double_cosets"] = orbits;
    std::vector<std::size_t> hist(static_cast<std::size_t>(fc.flag_dimension()) + 1, 0);
    for (ElementId c : fc.cosets()) ++hist[static_cast<std::size_t>(fc.weyl().length(c))];
    j["schubert_cells_by_dimension"] = hist;
    return j;
}

Json ideal_json(const FlagConfiguration& fc, const BalancedIdeal& b) {
    Json j;
    j["bitset"] = b.membership.to_hex();
    j["ell"] = b.length;
    j["codefect"] = b.codefect;
    j["max_weyl_length"] = b.max_weyl_length;
    j["coset_dims"] = thickening_profile(fc, b).dims;
    return j;
}

Json enumeration_json(const FlagConfiguration& fc, const EnumerationResult& r) {
    Json j;
    j["configuration"] = flag_configuration_json(fc);
    j["count"] = r.count;
    j["truncated"] = r.truncated;
    Json arr = Json::array();
    for (const auto& b : r.ideals) arr.push_back(ideal_json(fc, b));
    j["ideals"] = arr;
    return j;
}

std::string ideals_csv(const FlagConfiguration& fc, const EnumerationResult& r) {
    std::string out = "type,theta_a,theta_d,N,index,bitset,ell,codefect,max_weyl_length\n";
    const std::string prefix = fc.weyl().root_system().type().name() + ",\"" + format_theta(fc.theta_a()) + "\",\"" +
                               format_theta(fc.theta_d()) + "\"," + std::to_string(fc.flag_dimension()) + ",";
    for (std::size_t k = 0; k < r.ideals.size(); ++k) {
        const auto& b = r.ideals[k];
        out += prefix + std::to_string(k) + "," + b.membership.to_hex() + "," + std::to_string(b.length) + "," +
               std::to_string(b.codefect) + "," + std::to_string(b.max_weyl_length) + "\n";
    }
    return out;
}

Json profile_json(const ThickeningProfile& p) {
    Json j;
    j["cosets"] = p.cosets;
    j["dims"] = p.dims;
    j["histogram"] = p.histogram;
    return j;
}

Json hdim_json(const HdimBound& h) {
    Json j;
    j["value"] = to_string(h.value);
    j["strict"] = h.strict;
    return j;
}

Json verdict_json(const SmallnessVerdict& v) {
    Json j;
    j["hdim"] = hdim_json(v.bound);
    j["N"] = v.flag_dimension;
    j["ell"] = v.ideal_length;
    j["k"] = v.k;
    j["lambda_bound"] = to_string(v.lambda_bound);
    j["threshold"] = to_string(v.threshold);
    j["certified"] = v.certified;
    j["max_k"] = optional_int(v.max_k);
    j["inequality"] = v.inequality;
    return j;
}

Json length_report_json(const LengthBoundReport& r) {
    Json j;
    j["configuration"] = r.description;
    j["N"] = r.flag_dimension;
    j["bound"] = r.bound;
    j["max_ell"] = optional_int(r.max_length);
    j["min_ell"] = optional_int(r.min_length);
    j["pass"] = r.pass;
    j["complete"] = r.complete;
    j["search_nodes"] = r.nodes;
    if (r.witness) {
        Json w;
        w["bitset"] = r.witness->membership.to_hex();
        w["ell"] = r.witness->length;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json sweep_row_json(const SweepRow& r) {
    Json j;
    j["type"] = r.type.name();
    j["theta_a"] = theta_json(r.theta_a);
    j["theta_d"] = theta_json(r.theta_d);
    j["N"] = r.flag_dimension;
    j["ideal_count"] = r.ideal_count;
    j["count_is_lower_bound"] = r.count_is_lower_bound;
    j["min_ell"] = optional_int(r.min_length);
    j["max_ell"] = optional_int(r.max_length);
    j["all_certified"] = r.all_certified ? Json(*r.all_certified) : Json(nullptr);
    j["annotations"] = r.annotations;
    j["resource_limited"] = r.resource_limited;
    j["error"] = r.error;
    return j;
}

Json moduli_json(const ModuliDimensions& m) {
    Json j;
    j["genus"] = m.genus;
    j["type"] = m.type.name();
    j["dim_g"] = m.dim_g;
    j["qf_surface_complex_dim"] = m.qf_surface;
    j["qf_group_complex_dim"] = m.qf_group;
    j["hitchin_real_dim"] = m.hitchin_real;
    return j;
}

Json matrix_json(const Matrix& m) {
    Json a = Json::array();
    for (const auto& x : m.data()) a.push_back(to_string(x));
    return a;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array()) throw ParseError("matrix must be a flat array of rationals");
    if (j.size() != rows * cols)
        throw ValidationError("matrix has " + std::to_string(j.size()) + " entries, expected " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < j.size(); ++k) m(k / std::max<std::size_t>(cols, 1), k % std::max<std::size_t>(cols, 1)) = rational_from_json(j[k]);
    return m;
}

Json matrix_rows_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_rows_json(const Json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("matrix rows have unequal lengths");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

Json double_complex_json(const DoubleComplex& dc) {
    Json j;
    j["width"] = dc.width();
    j["height"] = dc.height();
    j["dims"] = dc.dims();
    Json dh = Json::array(), dv = Json::array();
    for (int p = 0; p + 1 < dc.width(); ++p) {
        Json col = Json::array();
        for (int q = 0; q < dc.height(); ++q) col.push_back(matrix_json(dc.d_h(p, q)));
        dh.push_back(col);
    }
    for (int p = 0; p < dc.width(); ++p) {
        Json col = Json::array();
        for (int q = 0; q + 1 < dc.height(); ++q) col.push_back(matrix_json(dc.d_v(p, q)));
        dv.push_back(col);
    }
    j["d_h"] = dh;
    j["d_v"] = dv;
    return j;
}

DoubleComplex double_complex_from_json(const Json& j) {
    return guarded([&] {
        const int w = j.at("width").get<int>();
        const int h = j.at("height").get<int>();
        auto dims = j.at("dims").get<std::vector<std::vector<int>>>();
        DoubleComplex dc(w, h, dims);
        auto fetch = [&](const char* key, int p, int q) -> const Json* {
            if (!j.contains(key)) return nullptr;
            const Json& a = j.at(key);
            if (!a.is_array() || p >= static_cast<int>(a.size())) return nullptr;
            const Json& col = a[static_cast<std::size_t>(p)];
            if (!col.is_array() || q >= static_cast<int>(col.size())) return nullptr;
            return &col[static_cast<std::size_t>(q)];
        };
        for (int p = 0; p < w; ++p)
            for (int q = 0; q < h; ++q) {
                if (p + 1 < w)
                    if (const Json* m = fetch("d_h", p, q))
                        dc.set_d_h(p, q, matrix_from_json(*m, static_cast<std::size_t>(dc.dim(p + 1, q)), static_cast<std::size_t>(dc.dim(p, q))));
                if (q + 1 < h)
                    if (const Json* m = fetch("d_v", p, q))
                        dc.set_d_v(p, q, matrix_from_json(*m, static_cast<std::size_t>(dc.dim(p, q + 1)), static_cast<std::size_t>(dc.dim(p, q))));
            }
        return dc;
    });
}

Json validation_json(const ValidationReport& r) {
    Json j;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["kind"] = r.kind;
        j["p"] = r.p;
        j["q"] = r.q;
        j["message"] = r.message;
    }
    return j;
}

Json page_json(const SpectralPage& p) {
    Json j;
    j["direction"] = to_string(p.direction);
    j["r"] = p.r;
    j["dims"] = p.dims;
    Json maps = Json::array();
    for (int a = 0; a < p.width; ++a)
        for (int b = 0; b < p.height; ++b) {
            const Matrix& m = p.maps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (m.rows() == 0 || m.cols() == 0) continue;
            auto [tp, tq] = p.target(a, b);
            Json e;
            e["source"] = {a, b};
            e["target"] = {tp, tq};
            e["rows"] = m.rows();
            e["cols"] = m.cols();
            e["matrix"] = matrix_json(m);
            maps.push_back(e);
        }
    j["maps"] = maps;
    return j;
}

Json ldt_json(const LdtSequence& s) {
    Json j;
    j["direction"] = to_string(s.direction);
    j["dims"] = {0, s.dim_e10, s.dim_h1, s.dim_e01};
    j["alpha"] = matrix_rows_json(s.alpha);
    j["beta"] = matrix_rows_json(s.beta);
    j["composite_zero"] = s.composite_zero;
    j["injective"] = s.injective;
    j["exact_at_h1"] = s.exact_at_h1;
    j["exact"] = s.exact();
    return j;
}

Json presentation_json(const GroupPresentation& p) {
    Json j;
    j["generators"] = p.generators;
    j["relators"] = p.relators;
    return j;
}

Json representation_json(const MatrixRep& r) {
    Json j;
    j["dimension"] = r.dimension;
    Json ms = Json::array();
    for (const auto& m : r.matrices) ms.push_back(matrix_rows_json(m));
    j["matrices"] = ms;
    return j;
}

MatrixRep representation_from_json(const Json& j) {
    return guarded([&] {
        MatrixRep r;
        r.dimension = j.at("dimension").get<int>();
        if (r.dimension < 0) throw ValidationError("dimension must be nonnegative");
        for (const auto& m : j.at("matrices")) {
            Matrix mat = matrix_from_rows_json(m);
            if (r.dimension == 0 && mat.rows() == 0) mat = Matrix(0, 0);
            if (mat.rows() != static_cast<std::size_t>(r.dimension) || mat.cols() != static_cast<std::size_t>(r.dimension))
                throw ValidationError("representation matrix is not " + std::to_string(r.dimension) + "x" +
                                      std::to_string(r.dimension));
            r.matrices.push_back(std::move(mat));
        }
        return r;
    });
}

Json cohomology_json(const CohomologyDims& c) {
    Json j;
    j["z1"] = c.z1;
    j["b1"] = c.b1;
    j["h1"] = c.h1;
    j["h0"] = c.h0;
    return j;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace anosovkit
