#include <random>

#include <doctest.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/grpcoh.hpp>

#include "../support/grp_oracles.hpp"

using namespace anosovkit;

TEST_SUITE("grpcoh") {
    TEST_CASE("Fox system examples") {
        auto free2 = free_group_presentation(2);
        auto fox = fox_system(free2, trivial_representation(2, 3));
        CHECK(fox.rows() == 0);
        CHECK(cohomology_dims(free2, trivial_representation(2, 3)).z1 == 6);

        auto trivial_group = make_presentation(1, {{1}});
        CHECK(cohomology_dims(trivial_group, trivial_representation(1, 1)).z1 == 0);

        auto s2 = surface_group_presentation(2);
        CHECK(fox_system(s2, trivial_representation(4, 1)).is_zero());
        CHECK(cohomology_dims(s2, trivial_representation(4, 1)) == CohomologyDims{4, 0, 4, 1});
        CHECK(cohomology_dims(s2, trivial_representation(4, 2)) == CohomologyDims{8, 0, 8, 2});
    }

    TEST_CASE("random surface representations: h1 = (2g - 2) d when h0 = 0") {
        std::mt19937_64 rng(31);
        for (int g = 2; g <= 4; ++g)
            for (int d = 1; d <= 3; ++d) {
                auto pres = surface_group_presentation(g);
                auto rep = random_surface_representation(rng, g, d);
                CHECK_NOTHROW(check_representation(pres, rep));
                auto c = cohomology_dims(pres, rep);
                CAPTURE(g);
                CAPTURE(d);
                CHECK(c.z1 == oracle::z1(pres, rep));
                CHECK(c.h0 == 0);
                CHECK(coinvariant_dimension(rep) == 0);
                CHECK(c.h1 == (2 * g - 2) * d);
                CHECK(c.z1 == (2 * g - 1) * d + c.h0);
                CHECK(c.h1 >= 0);
                CHECK(c.b1 <= d);
                CHECK(c.h0 <= d);
            }
    }

    TEST_CASE("z1 = (2g - 1) d + h2 when invariants appear") {
        std::mt19937_64 rng(32);
        for (int trial = 0; trial < 6; ++trial) {
            auto pres = surface_group_presentation(2);
            auto rep = random_surface_representation(rng, 2, 2);
            MatrixRep sum;
            sum.dimension = 3;
            for (const auto& m : rep.matrices) {
                Matrix big = Matrix::identity(3);
                big.set_block(0, 0, m);
                sum.matrices.push_back(big);
            }
            auto c = cohomology_dims(pres, sum);
            CHECK(c.h0 == 1);
            CHECK(coinvariant_dimension(sum) == 1);
            CHECK(c.z1 == 3 * 3 + coinvariant_dimension(sum));
            CHECK(c.z1 == oracle::z1(pres, sum));
        }
    }

    TEST_CASE("free groups") {
        std::mt19937_64 rng(33);
        for (int d = 1; d <= 4; ++d) {
            auto rep = random_free_representation(rng, 2, d);
            auto c = cohomology_dims(free_group_presentation(2), rep);
            if (c.h0 == 0) CHECK(c.h1 == d);
            CHECK(c.z1 == 2 * d);
        }
    }

    TEST_CASE("conjugation leaves every dimension unchanged") {
        std::mt19937_64 rng(34);
        auto pres = parse_presentation("3\n1 2 -1 -2\n");
        for (int trial = 0; trial < 10; ++trial) {
            MatrixRep rep;
            rep.dimension = 3;
            auto a = random_free_representation(rng, 1, 3).matrices[0];
            Matrix a2 = a * a;
            rep.matrices = {a, a2, random_free_representation(rng, 1, 3).matrices[0]};
            auto [g, gi] = random_invertible(rng, 3, 3);
            auto c = cohomology_dims(pres, rep);
            CHECK(c == cohomology_dims(pres, conjugate(rep, g, gi)));
            CHECK(c.z1 == oracle::z1(pres, rep));
        }
    }

    TEST_CASE("invalid inputs") {
        CHECK_THROWS_AS(make_presentation(2, {{1, 3}}), ValidationError);
        CHECK_THROWS_AS(make_presentation(2, {{0}}), ValidationError);
        auto s2 = surface_group_presentation(2);
        MatrixRep wrong = trivial_representation(3, 1);
        CHECK_THROWS_AS(cohomology_dims(s2, wrong), ValidationError);
        MatrixRep bad_relator = trivial_representation(4, 2);
        bad_relator.matrices[0](0, 1) = 1;
        bad_relator.matrices[1](1, 1) = 2;
        CHECK_THROWS_AS(check_representation(s2, bad_relator), ValidationError);
        MatrixRep singular = trivial_representation(4, 1);
        singular.matrices[2](0, 0) = 0;
        CHECK_THROWS_AS(cohomology_dims(s2, singular), ValidationError);
        MatrixRep shape = trivial_representation(4, 2);
        shape.matrices[1] = Matrix::identity(3);
        CHECK_THROWS_AS(cohomology_dims(s2, shape), ValidationError);
        std::mt19937_64 rng(1);
        CHECK_THROWS_AS(random_surface_representation(rng, 1, 2), ValidationError);
    }

    TEST_CASE("presentation text format") {
        auto p = parse_presentation("# genus 2\n4\n1 2 -1 -2 3 4 -3 -4  # relator\n\n");
        CHECK(p == surface_group_presentation(2));
        CHECK(parse_presentation(format_presentation(p)) == p);
        CHECK(parse_presentation("2\n1 -1\n").relators.empty());
        CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
        CHECK_THROWS_AS(parse_presentation("2 3\n"), ParseError);
        CHECK_THROWS_AS(parse_presentation("2\n1 x\n"), ParseError);
        CHECK_THROWS_AS(parse_presentation("# nothing\n"), ParseError);
        CHECK_THROWS_AS(parse_presentation("2\n1 5\n"), ValidationError);
    }

    TEST_CASE("word evaluation") {
        MatrixRep rep;
        rep.dimension = 2;
        Matrix a(2, 2);
        a(0, 0) = 1, a(0, 1) = 1, a(1, 1) = 1;
        rep.matrices = {a};
        Matrix a3 = evaluate_word(rep, {1, 1, 1});
        CHECK(a3(0, 1) == 3);
        CHECK(evaluate_word(rep, {1, -1}) == Matrix::identity(2));
        CHECK_THROWS_AS(evaluate_word(rep, {2}), ValidationError);
    }
}
