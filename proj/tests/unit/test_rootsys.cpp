#include <numeric>

#include <doctest.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/rootsys.hpp>
#include <anosovkit/weyl.hpp>

#include "../support/oracles.hpp"

using namespace anosovkit;

TEST_SUITE("rootsys") {
    TEST_CASE("positive root counts") {
        CHECK(build_root_system(parse_simple_type("A2")).num_positive() == 3);
        CHECK(build_root_system(parse_simple_type("G2")).num_positive() == 6);
        CHECK(build_root_system(parse_simple_type("B2")).num_positive() == 4);
    }

    TEST_CASE("Lie algebra dimensions") {
        CHECK(dim_lie_algebra(build_root_system(parse_simple_type("A2"))) == 8);
        CHECK(dim_lie_algebra(build_root_system(parse_simple_type("G2"))) == 14);
        CHECK(dim_lie_algebra(build_root_system(parse_simple_type("E8"))) == 248);
    }

    TEST_CASE("every type of rank <= 8: closure matches the closed form and the hand-written Cartan matrix") {
        for (const auto& t : all_simple_types(8)) {
            CAPTURE(t.name());
            RootSystem rs = build_root_system(t);
            CHECK(rs.num_positive() == positive_root_count(t));
            auto a = oracle::cartan(static_cast<char>(t.family), t.rank);
            CHECK(rs.cartan() == a);
            auto pos = oracle::positive_roots(a);
            CHECK(pos.size() == static_cast<std::size_t>(rs.num_positive()));
            for (const auto& r : rs.positive_roots()) CHECK(pos.count(std::vector<long long>(r.begin(), r.end())) == 1);
        }
    }

    TEST_CASE("canonical root order: height, then coordinates") {
        RootSystem rs = build_root_system(parse_simple_type("B3"));
        const auto& roots = rs.positive_roots();
        auto height = [](const Root& r) { return std::accumulate(r.begin(), r.end(), 0); };
        for (std::size_t i = 0; i + 1 < roots.size(); ++i) CHECK(height(roots[i]) <= height(roots[i + 1]));
        for (int i = 0; i < rs.rank(); ++i) {
            Root e(static_cast<std::size_t>(rs.rank()), 0);
            e[static_cast<std::size_t>(i)] = 1;
            CHECK(rs.root(rs.simple_index(i)) == e);
        }
        for (int k = 0; k < rs.num_roots(); ++k) {
            Root r = rs.root(k), neg = rs.root(rs.negate(k));
            for (std::size_t c = 0; c < r.size(); ++c) CHECK(r[c] == -neg[c]);
            CHECK(rs.find(r) == k);
        }
    }

    TEST_CASE("-w0 permutation") {
        auto perm = [](const char* t) { return minus_w0_permutation(build_root_system(parse_simple_type(t))); };
        CHECK(perm("A2") == std::vector<int>{1, 0});
        CHECK(perm("B2") == std::vector<int>{0, 1});
        CHECK(perm("A1") == std::vector<int>{0});
        CHECK(perm("D5") == std::vector<int>{0, 1, 2, 4, 3});
        CHECK(perm("D4") == std::vector<int>{0, 1, 2, 3});
        CHECK(perm("E6") == std::vector<int>{5, 1, 4, 3, 2, 0});
        for (const auto& t : all_simple_types(8)) {
            CAPTURE(t.name());
            RootSystem rs = build_root_system(t);
            auto s = minus_w0_permutation(rs);
            for (int i = 0; i < rs.rank(); ++i) {
                CHECK(s[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])] == i);
                for (int j = 0; j < rs.rank(); ++j)
                    CHECK(rs.cartan()[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])][static_cast<std::size_t>(s[static_cast<std::size_t>(j)])] ==
                          rs.cartan()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            }
        }
    }

    TEST_CASE("type parsing and validation") {
        CHECK(parse_simple_type("b3") == SimpleType{Family::B, 3});
        CHECK(parse_simple_type("E8").name() == "E8");
        CHECK_THROWS_AS(parse_simple_type("Z9"), ParseError);
        CHECK_THROWS_AS(parse_simple_type("A"), ParseError);
        CHECK_THROWS_AS(parse_simple_type("G3"), ValidationError);
        CHECK_THROWS_AS(parse_simple_type("D2"), ValidationError);
        CHECK_THROWS_AS(parse_simple_type("E5"), ValidationError);
        CHECK_THROWS_AS(parse_simple_type("B1"), ValidationError);
        CHECK(all_simple_types(2).size() == 5);
    }

    TEST_CASE("reflections are involutions fixing the root set") {
        RootSystem rs = build_root_system(parse_simple_type("G2"));
        for (int b = 0; b < rs.num_positive(); ++b) {
            auto t = rs.reflection(b);
            CHECK(t[static_cast<std::size_t>(b)] == rs.negate(b));
            for (int k = 0; k < rs.num_roots(); ++k) CHECK(t[t[static_cast<std::size_t>(k)]] == k);
        }
    }
}
