#include "anosovkit/linalg.hpp"

#include <cassert>
#include <stdexcept>

#include "anosovkit/errors.hpp"

namespace anosovkit {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
}

std::vector<Rational> Matrix::column(std::size_t c) const {
    std::vector<Rational> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

Matrix Matrix::hconcat(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hconcat: row mismatch");
    Matrix m(rows_, cols_ + o.cols_);
    m.set_block(0, 0, *this);
    m.set_block(0, cols_, o);
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(idx[r], c);
    return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = (*this)(r, idx[c]);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) m(i, j) += aik * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= s;
    return m;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn(v[k]) != 0) out[i] += (*this)(i, k) * v[k];
    return out;
}

namespace {

// Integer rows with the same row space: each row scaled by the lcm of its denominators.
std::vector<std::vector<BigInt>> integer_rows(const Matrix& m) {
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
    return a;
}

// Bareiss forward elimination; returns the rank and, for square input, the sign-corrected last pivot.
std::size_t bareiss(std::vector<std::vector<BigInt>>& a, std::size_t cols, int* sign) {
    const std::size_t rows = a.size();
    BigInt prev = 1;
    std::size_t r = 0;
    int s = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            std::swap(a[piv], a[r]);
            s = -s;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    if (sign) *sign = s;
    return r;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    auto a = integer_rows(m);
    return bareiss(a, m.cols(), nullptr);
}

Rational determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    // Clear denominators per row and undo the scaling at the end.
    Rational scale = 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t r = 0; r < n; ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
        scale *= Rational(l);
    }
    int sign = 1;
    if (bareiss(a, n, &sign) < n) return 0;
    Rational det(a[n - 1][n - 1]);
    det *= sign;
    det /= scale;
    return det;
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
    Matrix a = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return a;
}

Matrix nullspace(const Matrix& m) {
    std::vector<std::size_t> piv;
    Matrix a = rref(m, &piv);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : piv) is_pivot[c] = 1;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix basis(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -a(r, free[k]);
    }
    return basis;
}

std::vector<std::size_t> independent_columns(const Matrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv;
}

std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b) {
    Matrix aug(m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t r = 0; r < m.rows(); ++r) aug(r, m.cols()) = b[r];
    std::vector<std::size_t> piv;
    Matrix red = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = red(r, m.cols());
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    Matrix red = rref(m.hconcat(Matrix::identity(n)));
    for (std::size_t i = 0; i < n; ++i)
        if (red(i, i) != 1) return std::nullopt;
    return red.block(0, n, n, n);
}

Matrix complement_columns(const Matrix& sub, const Matrix& whole) {
    if (whole.cols() == 0) return Matrix(whole.rows(), 0);
    Matrix joint = sub.cols() ? sub.hconcat(whole) : whole;
    std::vector<std::size_t> chosen;
    for (auto c : independent_columns(joint))
        if (c >= sub.cols()) chosen.push_back(c - sub.cols());
    return whole.select_cols(chosen);
}

std::vector<Rational> coordinates_modulo(const Matrix& base, const Matrix& extra, const std::vector<Rational>& v) {
    Matrix joint = base.cols() ? base.hconcat(extra) : extra;
    if (joint.cols() == 0) return {};
    auto x = solve(joint, v);
    if (!x) throw Error("coordinates_modulo: vector outside the span");
    return {x->begin() + static_cast<std::ptrdiff_t>(base.cols()), x->end()};
}

std::pair<Matrix, Matrix> random_invertible(std::mt19937_64& rng, std::size_t n, int coefficient_bound) {
    Matrix g = Matrix::identity(n), inv = Matrix::identity(n);
    if (n == 0) return {g, inv};
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-coefficient_bound, coefficient_bound);
    const std::size_t ops = 2 * n;
    for (std::size_t k = 0; k < ops; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int c = coef(rng);
        if (c == 0) {
            for (std::size_t t = 0; t < n; ++t) {
                std::swap(g(i, t), g(j, t));
                std::swap(inv(t, i), inv(t, j));
            }
            continue;
        }
        // g <- (1 + c e_ij) g, inv <- inv (1 - c e_ij)
        for (std::size_t t = 0; t < n; ++t) {
            if (sgn(g(j, t))) g(i, t) += c * g(j, t);
            if (sgn(inv(t, i))) inv(t, j) -= c * inv(t, i);
        }
    }
    return {g, inv};
}

}  // namespace anosovkit
