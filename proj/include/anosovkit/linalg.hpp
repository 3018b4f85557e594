#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "anosovkit/rational.hpp"

namespace anosovkit {

/// Dense row-major matrix over Q.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    const std::vector<Rational>& data() const noexcept { return data_; }

    std::vector<Rational> column(std::size_t c) const;
    Matrix transpose() const;
    bool is_zero() const;

    /// Rows [r0, r0+nr) and columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    /// [this | other]
    Matrix hconcat(const Matrix& other) const;
    /// Selects the listed rows / columns in order.
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const Rational& s) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained
/// by clearing each row's denominators.
std::size_t rank(const Matrix& m);
/// Determinant of a square matrix, fraction-free.
Rational determinant(const Matrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Columns spanning {x : m x = 0}; shape cols x nullity.
Matrix nullspace(const Matrix& m);
/// Indices of a maximal independent set of columns, chosen greedily left to right.
std::vector<std::size_t> independent_columns(const Matrix& m);
/// Some x with m x = b, if one exists.
std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Given column bases `sub` of U and `whole` of V with U inside V, returns
/// columns of `whole` completing `sub` to a basis of V (so they represent V/U).
Matrix complement_columns(const Matrix& sub, const Matrix& whole);

/// Coordinates of v in the basis [base | extra] (which must be independent
/// and span v); returns the coordinates on `extra` only.
std::vector<Rational> coordinates_modulo(const Matrix& base, const Matrix& extra, const std::vector<Rational>& v);

/// Random invertible matrix (row operations with coefficients in [-c, c] and
/// swaps applied to the identity) together with its inverse.
std::pair<Matrix, Matrix> random_invertible(std::mt19937_64& rng, std::size_t n, int coefficient_bound = 2);

}  // namespace anosovkit
