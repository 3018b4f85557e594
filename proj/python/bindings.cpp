#include <random>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/json_io.hpp>

namespace py = pybind11;
using namespace anosovkit;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
    if (py::isinstance<py::str>(o)) return Json::parse(o.cast<std::string>());
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::shared_ptr<const WeylGroup> group(const std::string& type, bool use_cache, std::uint64_t max_order) {
    SimpleType t = parse_simple_type(type);
    if (!use_cache) return std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(t), max_order));
    return std::make_shared<const WeylGroup>(WeylCache(WeylCache::default_directory()).get(t, max_order));
}

EnumerationOptions options(std::optional<std::size_t> limit, std::uint64_t max_nodes, unsigned threads, bool count_only) {
    EnumerationOptions o;
    o.limit = limit;
    o.max_nodes = max_nodes;
    o.threads = threads;
    o.count_only = count_only;
    return o;
}

HdimBound bound(const std::string& value, bool strict) { return make_hdim_bound(parse_rational(value), strict); }

DoubleComplex complex_of(const py::object& o) { return double_complex_from_json(from_py(o)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    auto base = py::register_exception<Error>(m, "AnosovkitError");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    auto limit = py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base);
    py::register_exception<SearchLimitError>(m, "SearchLimitError", limit);

    m.def("weyl_info", [](const std::string& type, bool use_cache, std::uint64_t max_order) {
        return to_py(weyl_info_json(*group(type, use_cache, max_order)));
    }, py::arg("type"), py::arg("use_cache") = true, py::arg("max_order") = kDefaultMaxOrder);

    m.def("cache_directory", [] { return WeylCache::default_directory(); });

    py::class_<FlagConfiguration>(m, "FlagConfiguration")
        .def(py::init([](const std::string& type, const std::string& pa, const std::string& pd, bool allow_nonsymmetric,
                         bool use_cache) {
                 auto w = group(type, use_cache, kDefaultMaxOrder);
                 return build_flag_configuration(w, parse_theta(pa, w->rank()), parse_theta(pd, w->rank()),
                                                 allow_nonsymmetric);
             }),
             py::arg("type"), py::arg("pa") = "", py::arg("pd") = "", py::arg("allow_nonsymmetric") = false,
             py::arg("use_cache") = true)
        .def_property_readonly("flag_dimension", &FlagConfiguration::flag_dimension)
        .def("describe", &FlagConfiguration::describe)
        .def("info", [](const FlagConfiguration& fc) { return to_py(flag_configuration_json(fc)); })
        .def("__repr__", [](const FlagConfiguration& fc) { return "<FlagConfiguration " + fc.describe() + ">"; });

    m.def("enumerate_ideals", [](const FlagConfiguration& fc, std::optional<std::size_t> limit, std::uint64_t max_nodes,
                                 unsigned threads, bool count_only) {
        EnumerationResult r;
        {
            py::gil_scoped_release release;
            r = enumerate_balanced_ideals(fc, options(limit, max_nodes, threads, count_only));
        }
        return to_py(enumeration_json(fc, r));
    }, py::arg("config"), py::arg("limit") = py::none(), py::arg("max_nodes") = EnumerationOptions{}.max_nodes,
       py::arg("threads") = 1, py::arg("count_only") = false);

    m.def("length_extremes", [](const FlagConfiguration& fc, std::uint64_t max_nodes) -> py::object {
        auto e = max_min_ideal_length(fc, options(std::nullopt, max_nodes, 1, false));
        if (!e) return py::none();
        py::dict d;
        d["max_ell"] = e->max_length;
        d["min_ell"] = e->min_length;
        d["max_witness"] = to_py(ideal_json(fc, e->max_witness));
        d["min_witness"] = to_py(ideal_json(fc, e->min_witness));
        d["search_nodes"] = e->nodes;
        return std::move(d);
    }, py::arg("config"), py::arg("max_nodes") = EnumerationOptions{}.max_nodes);

    m.def("verify_length_bound", [](const FlagConfiguration& fc, std::uint64_t max_nodes) {
        return to_py(length_report_json(verify_length_bound(fc, options(std::nullopt, max_nodes, 1, false))));
    }, py::arg("config"), py::arg("max_nodes") = EnumerationOptions{}.max_nodes);

    m.def("certify", [](int flag_dimension, int ideal_length, const std::string& hdim, bool strict, int k) {
        return to_py(verdict_json(certify_k_small(flag_dimension, ideal_length, bound(hdim, strict), k)));
    }, py::arg("flag_dimension"), py::arg("ideal_length"), py::arg("hdim"), py::arg("strict"), py::arg("k"));

    m.def("max_certified_k", [](int flag_dimension, int ideal_length, const std::string& hdim, bool strict) {
        return max_certified_k(flag_dimension, ideal_length, bound(hdim, strict));
    }, py::arg("flag_dimension"), py::arg("ideal_length"), py::arg("hdim"), py::arg("strict"));

    m.def("resolve_preset", [](const std::string& spec, const std::filesystem::path& path) {
        return to_py(hdim_json(PresetTable::from_file(path).resolve(spec)));
    }, py::arg("spec"), py::arg("path"));

    m.def("resolve_configuration", [](const std::string& spec, const std::filesystem::path& path) {
        auto r = PresetTable::from_file(path).resolve_configuration(spec);
        py::dict d;
        d["name"] = r.name;
        d["description"] = r.description;
        d["type"] = r.type.name();
        d["pa"] = format_theta(r.theta_a);
        d["pd"] = format_theta(r.theta_d);
        d["hdim_preset"] = r.hdim_spec;
        d["hdim"] = to_py(hdim_json(r.bound));
        return d;
    }, py::arg("spec"), py::arg("path"));

    m.def("sweep", [](const std::vector<std::string>& types, const std::string& selector, const std::string& hdim,
                      bool strict, int k, unsigned threads, std::uint64_t max_nodes) {
        SweepOptions o;
        for (const auto& t : types) o.types.push_back(parse_simple_type(t));
        o.selector = parse_parabolic_selector(selector);
        o.bound = bound(hdim, strict);
        o.k = k;
        o.threads = threads;
        o.enumeration.max_nodes = max_nodes;
        std::vector<SweepRow> rows;
        {
            py::gil_scoped_release release;
            rows = classification_sweep(o);
        }
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(sweep_row_json(r));
        return to_py(arr);
    }, py::arg("types"), py::arg("selector") = "borel-complete", py::arg("hdim") = "2", py::arg("strict") = true,
       py::arg("k") = 4, py::arg("threads") = 1, py::arg("max_nodes") = EnumerationOptions{}.max_nodes);

    m.def("moduli", [](int genus, const std::string& type) {
        return to_py(moduli_json(moduli_dimensions(genus, build_root_system(parse_simple_type(type)))));
    }, py::arg("genus"), py::arg("type"));

    m.def("validate_complex", [](const py::object& c) { return to_py(validation_json(validate(complex_of(c)))); },
          py::arg("complex"));
    m.def("total_cohomology", [](const py::object& c) {
        auto dc = complex_of(c);
        std::vector<int> out;
        for (int n = 0; n < total_degree_count(dc); ++n) out.push_back(total_cohomology(dc, n));
        return out;
    }, py::arg("complex"));
    m.def("spectral_page", [](const py::object& c, const std::string& direction, int r) {
        return to_py(page_json(spectral_page(complex_of(c), parse_direction(direction), r)));
    }, py::arg("complex"), py::arg("direction") = "vertical", py::arg("r") = 2);
    m.def("limit_page", [](const py::object& c, const std::string& direction) {
        return to_py(page_json(limit_page(complex_of(c), parse_direction(direction))));
    }, py::arg("complex"), py::arg("direction") = "vertical");
    m.def("ldt", [](const py::object& c, const std::string& direction) {
        return to_py(ldt_json(ldt(complex_of(c), parse_direction(direction))));
    }, py::arg("complex"), py::arg("direction") = "vertical");
    m.def("random_complex", [](std::uint64_t seed, int width, int height, int max_dim, int pieces) {
        std::mt19937_64 rng(seed);
        RandomComplexOptions o;
        o.max_width = width;
        o.max_height = height;
        o.max_dim = max_dim;
        o.pieces = pieces;
        return to_py(double_complex_json(random_double_complex(rng, o)));
    }, py::arg("seed"), py::arg("width") = 6, py::arg("height") = 6, py::arg("max_dim") = 16, py::arg("pieces") = 6);

    m.def("surface_presentation", [](int genus) { return format_presentation(surface_group_presentation(genus)); },
          py::arg("genus"));
    m.def("group_cohomology", [](const std::string& presentation, const py::object& rep) {
        return to_py(cohomology_json(cohomology_dims(parse_presentation(presentation), representation_from_json(from_py(rep)))));
    }, py::arg("presentation"), py::arg("representation"));
    m.def("trivial_representation", [](int generators, int dimension) {
        return to_py(representation_json(trivial_representation(generators, dimension)));
    }, py::arg("generators"), py::arg("dimension"));
}
