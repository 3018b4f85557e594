#include <numeric>
#include <random>

#include <doctest.h>

#include <anosovkit/errors.hpp>
#include <anosovkit/linalg.hpp>

#include "../support/bridge.hpp"

using namespace anosovkit;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi, bool fractions = false) {
    std::uniform_int_distribution<int> val(lo, hi), den(1, 4);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = val(rng);
            if (fractions) {
                m(i, j) /= den(rng);
                m(i, j).canonicalize();
            }
        }
    return m;
}

// Low-rank product so that rank deficiency is common.
Matrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<std::size_t> k(0, std::min(r, c));
    std::size_t inner = k(rng);
    return random_matrix(rng, r, inner, -3, 3, true) * random_matrix(rng, inner, c, -3, 3);
}

Rational leibniz(const Matrix& m) {
    std::vector<std::size_t> p(m.rows());
    std::iota(p.begin(), p.end(), 0);
    Rational total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
        Rational term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < p.size(); ++i) term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("rationals") {
        CHECK(parse_rational("3") == 3);
        CHECK(parse_rational("-6/4") == Rational(-3, 2));
        CHECK(parse_rational("1.25") == Rational(5, 4));
        CHECK_THROWS_AS(parse_rational("10/-4"), ParseError);
        CHECK(to_string(Rational(7)) == "7");
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("abc"), ParseError);
        CHECK_THROWS_AS(parse_rational(""), ParseError);
        CHECK(floor(Rational(-3, 2)) == -2);
        CHECK(ceil(Rational(-3, 2)) == -1);
        CHECK(ceil(Rational(4)) == 4);
    }

    TEST_CASE("determinant agrees with the Leibniz expansion") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t n = static_cast<std::size_t>(trial % 6);
            Matrix m = trial % 3 ? random_matrix(rng, n, n, -4, 4, trial % 2) : random_low_rank(rng, n, n);
            CHECK(determinant(m) == leibniz(m));
        }
    }

    TEST_CASE("rank agrees with Gaussian elimination") {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 200; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 9);
            std::size_t r = dim(rng), c = dim(rng);
            Matrix m = trial % 2 ? random_low_rank(rng, r, c) : random_matrix(rng, r, c, -2, 2, true);
            CHECK(rank(m) == oracle::rank(oracle::to_q(m)));
            CHECK(rank(m.transpose()) == rank(m));
        }
        CHECK(rank(Matrix()) == 0);
        CHECK(rank(Matrix(3, 0)) == 0);
    }

    TEST_CASE("nullspace, rref, solve, inverse") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 80; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(1, 8);
            std::size_t r = dim(rng), c = dim(rng);
            Matrix m = random_low_rank(rng, r, c);
            Matrix n = nullspace(m);
            CHECK(n.rows() == c);
            CHECK(n.cols() == c - rank(m));
            CHECK((m * n).is_zero());
            CHECK(rank(n) == n.cols());

            std::vector<std::size_t> piv;
            Matrix e = rref(m, &piv);
            CHECK(piv.size() == rank(m));
            for (std::size_t k = 0; k < piv.size(); ++k) CHECK(e(k, piv[k]) == 1);
            CHECK(independent_columns(m) == piv);

            std::vector<Rational> x(c);
            for (auto& v : x) v = static_cast<int>(rng() % 7) - 3;
            auto b = m.apply(x);
            auto sol = solve(m, b);
            REQUIRE(sol.has_value());
            CHECK(m.apply(*sol) == b);

            Matrix sq = random_matrix(rng, r, r, -3, 3, true);
            auto inv = inverse(sq);
            CHECK(inv.has_value() == (determinant(sq) != 0));
            if (inv) CHECK(sq * *inv == Matrix::identity(r));
        }
        Matrix singular(2, 2);
        singular(0, 0) = 1, singular(0, 1) = 2, singular(1, 0) = 2, singular(1, 1) = 4;
        CHECK_FALSE(inverse(singular).has_value());
        CHECK_FALSE(solve(singular, {Rational(1), Rational(0)}).has_value());
    }

    TEST_CASE("complements and coordinates modulo a subspace") {
        std::mt19937_64 rng(14);
        for (int trial = 0; trial < 50; ++trial) {
            Matrix whole = random_low_rank(rng, 7, 5);
            Matrix sub = whole * random_matrix(rng, 5, 2, -2, 2);
            Matrix comp = complement_columns(sub, whole);
            CHECK(rank(sub.hconcat(comp)) == rank(whole));
            CHECK(rank(sub) + comp.cols() == rank(whole));
            if (comp.cols() == 0) continue;
            std::vector<Rational> coeff(comp.cols());
            for (auto& v : coeff) v = static_cast<int>(rng() % 5) - 2;
            std::vector<Rational> s(sub.cols());
            for (auto& v : s) v = static_cast<int>(rng() % 5) - 2;
            auto vec = comp.apply(coeff);
            auto shift = sub.apply(s);
            for (std::size_t i = 0; i < vec.size(); ++i) vec[i] += shift[i];
            CHECK(coordinates_modulo(sub, comp, vec) == coeff);
        }
        Matrix base(2, 1), extra(2, 0);
        base(0, 0) = 1;
        CHECK_THROWS_AS(coordinates_modulo(base, extra, {Rational(0), Rational(1)}), Error);
    }

    TEST_CASE("random invertible pairs") {
        std::mt19937_64 rng(15);
        for (std::size_t n = 0; n < 7; ++n) {
            auto [g, gi] = random_invertible(rng, n);
            CHECK(g * gi == Matrix::identity(n));
            CHECK(gi * g == Matrix::identity(n));
        }
    }

    TEST_CASE("matrix helpers") {
        Matrix a(2, 3);
        a(0, 1) = 5, a(1, 2) = -1;
        CHECK(a.transpose().transpose() == a);
        CHECK(a.block(0, 1, 2, 2)(0, 0) == 5);
        Matrix b = a.hconcat(Matrix::identity(2));
        CHECK(b.cols() == 5);
        CHECK(b.select_cols({3, 4}) == Matrix::identity(2));
        CHECK(b.select_rows({1})(0, 2) == -1);
        Matrix c = Matrix::zero(2, 3);
        c.set_block(0, 1, Matrix::identity(2));
        CHECK(c(1, 2) == 1);
        CHECK((a - a).is_zero());
        CHECK(a.scaled(2)(0, 1) == 10);
        CHECK(Matrix::from_columns(2, {{1, 2}, {3, 4}})(1, 0) == 2);
    }
}
