#pragma once

// Reference implementations used only by the tests. Nothing here calls the
// library's root-system, Weyl-group, ideal or elimination code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using IntMat = std::vector<long long>;  // n x n, row-major
using Cartan = std::vector<std::vector<int>>;

// <alpha_i^vee, alpha_j>, Bourbaki numbering, written out by hand.
inline Cartan cartan(char family, int n) {
    Cartan a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    auto set = [&](int i, int j, int v) { a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v; };
    for (int i = 1; i <= n; ++i) set(i, i, 2);
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) {
            set(i, i + 1, -1);
            set(i + 1, i, -1);
        }
    };
    switch (family) {
        case 'A': chain(1, n); break;
        case 'B':
            chain(1, n);
            set(n, n - 1, -2);
            break;
        case 'C':
            chain(1, n);
            set(n - 1, n, -2);
            break;
        case 'D':
            chain(1, n - 1);
            set(n - 2, n, -1);
            set(n, n - 2, -1);
            break;
        case 'E':
            set(1, 3, -1), set(3, 1, -1);
            set(2, 4, -1), set(4, 2, -1);
            chain(3, n);
            break;
        case 'F':
            chain(1, 4);
            set(3, 2, -2);
            break;
        case 'G':
            set(1, 2, -3);
            set(2, 1, -1);
            break;
        default: break;
    }
    return a;
}

inline IntMat mat_mul(const IntMat& x, const IntMat& y, int n) {
    IntMat z(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long v = x[static_cast<std::size_t>(i * n + k)];
            if (!v) continue;
            for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(i * n + j)] += v * y[static_cast<std::size_t>(k * n + j)];
        }
    return z;
}

inline IntMat mat_identity(int n) {
    IntMat m(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = 1;
    return m;
}

inline std::vector<long long> mat_apply(const IntMat& m, const std::vector<long long>& v, int n) {
    std::vector<long long> out(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i * n + j)] * v[static_cast<std::size_t>(j)];
    return out;
}

// s_i(alpha_j) = alpha_j - <alpha_i^vee, alpha_j> alpha_i, acting on simple-root coordinates.
inline std::vector<IntMat> simple_reflections(const Cartan& a) {
    const int n = static_cast<int>(a.size());
    std::vector<IntMat> s;
    for (int i = 0; i < n; ++i) {
        IntMat m = mat_identity(n);
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i * n + j)] -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        s.push_back(std::move(m));
    }
    return s;
}

inline std::set<std::vector<long long>> positive_roots(const Cartan& a) {
    const int n = static_cast<int>(a.size());
    auto s = simple_reflections(a);
    std::set<std::vector<long long>> all;
    std::vector<std::vector<long long>> frontier;
    for (int i = 0; i < n; ++i) {
        std::vector<long long> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        if (all.insert(e).second) frontier.push_back(e);
    }
    while (!frontier.empty()) {
        auto r = frontier.back();
        frontier.pop_back();
        for (const auto& m : s) {
            auto t = mat_apply(m, r, n);
            if (all.insert(t).second) frontier.push_back(t);
        }
    }
    std::set<std::vector<long long>> pos;
    for (const auto& r : all)
        if (std::all_of(r.begin(), r.end(), [](long long c) { return c >= 0; })) pos.insert(r);
    return pos;
}

// The Weyl group as a matrix group, elements in BFS order with word lengths.
struct MatrixGroup {
    int n = 0;
    std::vector<IntMat> gens;
    std::vector<IntMat> elems;
    std::vector<int> length;
    std::map<IntMat, int> index;

    int find(const IntMat& m) const {
        auto it = index.find(m);
        return it == index.end() ? -1 : it->second;
    }
    int mul(int x, int y) const { return find(mat_mul(elems[static_cast<std::size_t>(x)], elems[static_cast<std::size_t>(y)], n)); }
    int longest() const { return static_cast<int>(std::max_element(length.begin(), length.end()) - length.begin()); }
};

inline MatrixGroup matrix_group(const Cartan& a, std::size_t cap = 2000000) {
    MatrixGroup g;
    g.n = static_cast<int>(a.size());
    g.gens = simple_reflections(a);
    g.elems.push_back(mat_identity(g.n));
    g.length.push_back(0);
    g.index[g.elems[0]] = 0;
    for (std::size_t head = 0; head < g.elems.size() && g.elems.size() <= cap; ++head) {
        for (const auto& s : g.gens) {
            IntMat m = mat_mul(g.elems[head], s, g.n);
            if (g.index.count(m)) continue;
            g.index[m] = static_cast<int>(g.elems.size());
            g.elems.push_back(std::move(m));
            g.length.push_back(g.length[head] + 1);
        }
    }
    return g;
}

inline IntMat word_matrix(const MatrixGroup& g, const std::vector<int>& word) {
    IntMat m = mat_identity(g.n);
    for (int i : word) m = mat_mul(m, g.gens[static_cast<std::size_t>(i)], g.n);
    return m;
}

// Subword property: x <= y iff x is a subword product of a reduced word of y.
inline std::set<int> bruhat_below_subword(const MatrixGroup& g, const std::vector<int>& reduced_word_of_y) {
    std::set<IntMat> prods{mat_identity(g.n)};
    for (int i : reduced_word_of_y) {
        std::set<IntMat> next = prods;
        for (const auto& p : prods) next.insert(mat_mul(p, g.gens[static_cast<std::size_t>(i)], g.n));
        prods.swap(next);
    }
    std::set<int> out;
    for (const auto& p : prods) out.insert(g.find(p));
    return out;
}

// Reduced word via BFS parents: descend along a right descent.
inline std::vector<int> reduced_word(const MatrixGroup& g, int x) {
    std::vector<int> rev;
    while (g.length[static_cast<std::size_t>(x)] > 0) {
        for (int i = 0; i < g.n; ++i) {
            int y = g.find(mat_mul(g.elems[static_cast<std::size_t>(x)], g.gens[static_cast<std::size_t>(i)], g.n));
            if (g.length[static_cast<std::size_t>(y)] < g.length[static_cast<std::size_t>(x)]) {
                rev.push_back(i);
                x = y;
                break;
            }
        }
    }
    return {rev.rbegin(), rev.rend()};
}

inline std::vector<int> subgroup(const MatrixGroup& g, const std::vector<int>& theta) {
    std::set<int> seen{0};
    std::vector<int> todo{0};
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        for (int i : theta) {
            int y = g.find(mat_mul(g.elems[static_cast<std::size_t>(x)], g.gens[static_cast<std::size_t>(i)], g.n));
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

struct IdealData {
    std::set<int> members;
    int ell = 0;
};

// Balanced ideals by exhausting the 2^(|W|/2) subsets that pick one element
// of each {x, w0 x}, filtered by the remaining conditions.
inline std::vector<IdealData> balanced_ideals(const MatrixGroup& g, const std::vector<int>& theta_a,
                                              const std::vector<int>& theta_d) {
    const int size = static_cast<int>(g.elems.size());
    const int w0 = g.longest();
    std::vector<std::set<int>> below(static_cast<std::size_t>(size));
    for (int y = 0; y < size; ++y) below[static_cast<std::size_t>(y)] = bruhat_below_subword(g, reduced_word(g, y));
    std::vector<std::pair<int, int>> pairs;
    std::vector<bool> done(static_cast<std::size_t>(size), false);
    for (int x = 0; x < size; ++x) {
        if (done[static_cast<std::size_t>(x)]) continue;
        int y = g.mul(w0, x);
        done[static_cast<std::size_t>(x)] = done[static_cast<std::size_t>(y)] = true;
        pairs.emplace_back(x, y);
    }
    const auto wd = subgroup(g, theta_d);
    std::vector<int> ell_d(static_cast<std::size_t>(size));
    for (int x = 0; x < size; ++x) {
        int m = 1 << 30;
        for (int u : wd) m = std::min(m, g.length[static_cast<std::size_t>(g.mul(x, u))]);
        ell_d[static_cast<std::size_t>(x)] = m;
    }
    std::vector<IdealData> out;
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<bool> in(static_cast<std::size_t>(size), false);
        for (std::size_t k = 0; k < pairs.size(); ++k) in[static_cast<std::size_t>(mask >> k & 1u ? pairs[k].second : pairs[k].first)] = true;
        if (!in[0]) continue;
        bool ok = true;
        for (int x = 0; x < size && ok; ++x) {
            if (!in[static_cast<std::size_t>(x)]) continue;
            for (int y : below[static_cast<std::size_t>(x)])
                if (!in[static_cast<std::size_t>(y)]) ok = false;
            for (int i : theta_a)
                if (!in[static_cast<std::size_t>(g.find(mat_mul(g.gens[static_cast<std::size_t>(i)], g.elems[static_cast<std::size_t>(x)], g.n)))]) ok = false;
            for (int i : theta_d)
                if (!in[static_cast<std::size_t>(g.find(mat_mul(g.elems[static_cast<std::size_t>(x)], g.gens[static_cast<std::size_t>(i)], g.n)))]) ok = false;
        }
        if (!ok) continue;
        IdealData d;
        for (int x = 0; x < size; ++x)
            if (in[static_cast<std::size_t>(x)]) {
                d.members.insert(x);
                d.ell = std::max(d.ell, ell_d[static_cast<std::size_t>(x)]);
            }
        out.push_back(std::move(d));
    }
    return out;
}

// Plain Gaussian elimination over Q.
using QMat = std::vector<std::vector<mpq_class>>;

inline std::size_t rank(QMat m) {
    std::size_t r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Basis of {x : m x = 0}, as vectors.
inline std::vector<std::vector<mpq_class>> kernel(QMat m, std::size_t cols) {
    const std::size_t rows = m.size();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        mpq_class inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
        std::vector<mpq_class> v(cols, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
        out.push_back(std::move(v));
    }
    return out;
}

inline QMat zeros(std::size_t r, std::size_t c) { return QMat(r, std::vector<mpq_class>(c, 0)); }

}  // namespace oracle
