#pragma once

// Page and cohomology dimensions computed straight from the definitions with
// the test-side elimination in oracles.hpp.

#include <anosovkit/homalg.hpp>

#include "bridge.hpp"

namespace oracle {

inline QMat block_or_zero(const anosovkit::DoubleComplex& dc, bool horizontal, int p, int q) {
    const int src = dc.dim(p, q);
    const int dst = horizontal ? dc.dim(p + 1, q) : dc.dim(p, q + 1);
    if (src == 0 || dst == 0) return zeros(static_cast<std::size_t>(dst), static_cast<std::size_t>(src));
    return to_q(horizontal ? dc.d_h(p, q) : dc.d_v(p, q));
}

// Swaps the two axes without touching the library's transpose.
inline anosovkit::DoubleComplex swap_axes(const anosovkit::DoubleComplex& dc) {
    std::vector<std::vector<int>> dims(static_cast<std::size_t>(dc.height()), std::vector<int>(static_cast<std::size_t>(dc.width())));
    for (int p = 0; p < dc.width(); ++p)
        for (int q = 0; q < dc.height(); ++q) dims[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = dc.dim(p, q);
    anosovkit::DoubleComplex t(dc.height(), dc.width(), dims);
    for (int p = 0; p < dc.width(); ++p)
        for (int q = 0; q < dc.height(); ++q) {
            if (p + 1 < dc.width()) t.set_d_v(q, p, dc.d_h(p, q));
            if (q + 1 < dc.height()) t.set_d_h(q, p, dc.d_v(p, q));
        }
    return t;
}

// Tot^n with blocks in increasing p and D = d_h + (-1)^p d_v.
inline QMat total(const anosovkit::DoubleComplex& dc, int n) {
    std::vector<int> src_off, dst_off;
    int src = 0, dst = 0;
    for (int p = 0; p < dc.width(); ++p) {
        src_off.push_back(src);
        dst_off.push_back(dst);
        src += dc.dim(p, n - p);
        dst += dc.dim(p, n + 1 - p);
    }
    QMat d = zeros(static_cast<std::size_t>(dst), static_cast<std::size_t>(src));
    for (int p = 0; p < dc.width(); ++p) {
        const int q = n - p;
        if (dc.dim(p, q) == 0) continue;
        auto place = [&](const QMat& m, int row0, int sign) {
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m[i].size(); ++j)
                    d[static_cast<std::size_t>(row0) + i][static_cast<std::size_t>(src_off[static_cast<std::size_t>(p)]) + j] += sign * m[i][j];
        };
        if (p + 1 < dc.width() && dc.dim(p + 1, q) > 0) place(block_or_zero(dc, true, p, q), dst_off[static_cast<std::size_t>(p + 1)], 1);
        if (dc.dim(p, q + 1) > 0) place(block_or_zero(dc, false, p, q), dst_off[static_cast<std::size_t>(p)], p % 2 ? -1 : 1);
    }
    return d;
}

inline int total_dim(const anosovkit::DoubleComplex& dc, int n) {
    int s = 0;
    for (int p = 0; p < dc.width(); ++p) s += dc.dim(p, n - p);
    return s;
}

inline int total_cohomology(const anosovkit::DoubleComplex& dc, int n) {
    return total_dim(dc, n) - static_cast<int>(rank(total(dc, n))) - (n > 0 ? static_cast<int>(rank(total(dc, n - 1))) : 0);
}

// Vertical E_1^{p,q}: cohomology of column p at q.
inline int e1_vertical(const anosovkit::DoubleComplex& dc, int p, int q) {
    return dc.dim(p, q) - static_cast<int>(rank(block_or_zero(dc, false, p, q))) -
           (q > 0 ? static_cast<int>(rank(block_or_zero(dc, false, p, q - 1))) : 0);
}

inline QMat columns_of(const std::vector<std::vector<mpq_class>>& vs, std::size_t rows) {
    QMat m = zeros(rows, vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m[i][j] = vs[j][i];
    return m;
}

inline QMat mul(const QMat& a, const QMat& b, std::size_t inner, std::size_t cols) {
    QMat c = zeros(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Vertical E_2^{p,q} = {x : d_v x = 0, d_h x in im d_v} / (im d_v + d_h(ker d_v)).
inline int e2_vertical(const anosovkit::DoubleComplex& dc, int p, int q) {
    const auto nx = static_cast<std::size_t>(dc.dim(p, q));
    if (nx == 0) return 0;
    const auto ny = static_cast<std::size_t>(dc.dim(p + 1, q - 1));
    const auto r1 = static_cast<std::size_t>(dc.dim(p, q + 1));
    const auto r2 = static_cast<std::size_t>(dc.dim(p + 1, q));
    QMat sys = zeros(r1 + r2, nx + ny);
    QMat dv = block_or_zero(dc, false, p, q);
    QMat dh = block_or_zero(dc, true, p, q);
    QMat dvy = q > 0 ? block_or_zero(dc, false, p + 1, q - 1) : zeros(r2, 0);
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < nx; ++j) sys[i][j] = dv[i][j];
    for (std::size_t i = 0; i < r2; ++i) {
        for (std::size_t j = 0; j < nx; ++j) sys[r1 + i][j] = dh[i][j];
        for (std::size_t j = 0; j < ny; ++j) sys[r1 + i][nx + j] = -dvy[i][j];
    }
    auto ker = kernel(sys, nx + ny);
    QMat zx = zeros(nx, ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j)
        for (std::size_t i = 0; i < nx; ++i) zx[i][j] = ker[j][i];
    const int z = static_cast<int>(rank(zx));

    std::vector<std::vector<mpq_class>> bvecs;
    if (q > 0) {
        QMat in = block_or_zero(dc, false, p, q - 1);
        for (std::size_t j = 0; j < (in.empty() ? 0 : in[0].size()); ++j) {
            std::vector<mpq_class> v(nx);
            for (std::size_t i = 0; i < nx; ++i) v[i] = in[i][j];
            bvecs.push_back(v);
        }
    }
    if (p > 0) {
        const auto nz = static_cast<std::size_t>(dc.dim(p - 1, q));
        auto kz = kernel(block_or_zero(dc, false, p - 1, q), nz);
        QMat h = block_or_zero(dc, true, p - 1, q);
        QMat img = mul(h, columns_of(kz, nz), nz, kz.size());
        for (std::size_t j = 0; j < kz.size(); ++j) {
            std::vector<mpq_class> v(nx);
            for (std::size_t i = 0; i < nx; ++i) v[i] = img[i][j];
            bvecs.push_back(v);
        }
    }
    const int b = static_cast<int>(rank(columns_of(bvecs, nx)));
    return z - b;
}

}  // namespace oracle
