#include <random>

#include <doctest.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/json_io.hpp>

using namespace anosovkit;

namespace {

FlagConfiguration borel(const char* t) {
    return build_flag_configuration(
        std::make_shared<const WeylGroup>(generate_weyl_group(build_root_system(parse_simple_type(t)))), {}, {});
}

}  // namespace

TEST_SUITE("json_io") {
    TEST_CASE("double complexes round trip through text") {
        std::mt19937_64 rng(41);
        RandomComplexOptions o;
        o.max_width = 4;
        o.max_height = 4;
        o.max_dim = 8;
        for (int trial = 0; trial < 10; ++trial) {
            auto dc = random_double_complex(rng, o);
            std::string text = double_complex_json(dc).dump();
            auto back = double_complex_from_json(Json::parse(text));
            CHECK(back == dc);
            CHECK(double_complex_json(back).dump() == text);
        }
    }

    TEST_CASE("missing maps default to zero; malformed input is a parse error") {
        auto dc = double_complex_from_json(Json::parse(R"({"width": 2, "height": 1, "dims": [[1], [2]]})"));
        CHECK(dc.d_h(0, 0).is_zero());
        CHECK(dc.d_h(0, 0).rows() == 2);
        auto with_map = double_complex_from_json(
            Json::parse(R"({"width": 2, "height": 1, "dims": [[1], [2]], "d_h": [[["1/2", 3]]]})"));
        CHECK(with_map.d_h(0, 0)(0, 0) == Rational(1, 2));
        CHECK(with_map.d_h(0, 0)(1, 0) == 3);
        CHECK_THROWS_AS(double_complex_from_json(Json::parse(R"({"width": 2})")), ParseError);
        CHECK_THROWS_AS(double_complex_from_json(Json::parse(R"({"width": 2, "height": 1, "dims": [[1], [2]], "d_h": [[["x", 1]]]})")),
                        ParseError);
        CHECK_THROWS_AS(double_complex_from_json(Json::parse(R"({"width": 2, "height": 1, "dims": [[1], [2]], "d_h": [[[1]]]})")),
                        ValidationError);
    }

    TEST_CASE("representations and matrices round trip") {
        std::mt19937_64 rng(42);
        auto rep = random_surface_representation(rng, 2, 3);
        auto back = representation_from_json(Json::parse(representation_json(rep).dump()));
        CHECK(back.dimension == 3);
        CHECK(back.matrices == rep.matrices);
        auto [g, gi] = random_invertible(rng, 4);
        CHECK(matrix_from_rows_json(matrix_rows_json(gi)) == gi);
        CHECK(matrix_from_json(matrix_json(g), 4, 4) == g);
        CHECK_THROWS_AS(matrix_from_json(matrix_json(g), 3, 4), ValidationError);
        CHECK_THROWS_AS(representation_from_json(Json::parse(R"({"dimension": 2, "matrices": [[[1]]]})")), ValidationError);
        CHECK_THROWS_AS(representation_from_json(Json::parse(R"({"matrices": []})")), ParseError);
    }

    TEST_CASE("payloads are byte-identical across runs") {
        auto a = enumeration_json(borel("B3"), enumerate_balanced_ideals(borel("B3"))).dump();
        EnumerationOptions many;
        many.threads = 8;
        auto fc = borel("B3");
        auto b = enumeration_json(fc, enumerate_balanced_ideals(fc, many)).dump();
        CHECK(a == b);
        auto j = Json::parse(a);
        CHECK(j["count"] == 29);
        CHECK(j["ideals"].size() == 29);
        CHECK(j["ideals"][0].contains("bitset"));
    }

    TEST_CASE("report shapes") {
        auto fc = borel("A2");
        auto info = weyl_info_json(fc.weyl());
        CHECK(info["order"] == 6);
        CHECK(info["positive_roots"] == 3);
        CHECK(info["dim_g"] == 8);
        CHECK(info["minus_w0"] == Json::array({2, 1}));
        auto conf = flag_configuration_json(fc);
        CHECK(conf["flag_dimension"] == 3);
        CHECK(conf["schubert_cells_by_dimension"] == Json::array({1, 2, 2, 1}));
        auto r = verify_length_bound(fc);
        auto lr = length_report_json(r);
        CHECK(lr["pass"] == false);
        CHECK(lr["witness"]["ell"] == 1);
        CHECK(hdim_json(make_hdim_bound(parse_rational("3/2"), true))["value"] == "3/2");
        auto csv = ideals_csv(fc, enumerate_balanced_ideals(fc));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    }

    TEST_CASE("FNV-1a") {
        CHECK(fnv1a_hex("") == "cbf29ce484222325");
        CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    }
}
