#include "anosovkit/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "anosovkit/errors.hpp"

namespace anosovkit {

std::string SimpleType::name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

void validate_simple_type(const SimpleType& t) {
    const int n = t.rank;
    const std::string nm = t.name();
    switch (t.family) {
        case Family::A:
            if (n < 1) throw ValidationError(nm + ": type A requires rank >= 1");
            return;
        case Family::B:
            if (n < 2) throw ValidationError(nm + ": type B requires rank >= 2");
            return;
        case Family::C:
            if (n < 2) throw ValidationError(nm + ": type C requires rank >= 2");
            return;
        case Family::D:
            if (n < 3) throw ValidationError(nm + ": type D requires rank >= 3");
            return;
        case Family::E:
            if (n < 6 || n > 8) throw ValidationError(nm + ": type E requires rank 6, 7 or 8");
            return;
        case Family::F:
            if (n != 4) throw ValidationError(nm + ": type F requires rank 4");
            return;
        case Family::G:
            if (n != 2) throw ValidationError(nm + ": type G requires rank 2");
            return;
    }
    throw ValidationError("unknown family");
}

SimpleType parse_simple_type(std::string_view text) {
    if (text.size() < 2) throw ParseError("cannot parse type '" + std::string(text) + "': expected e.g. A3, B2, G2");
    char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
    if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
        throw ParseError("cannot parse type '" + std::string(text) + "': family must be one of A-G");
    auto digits = text.substr(1);
    int rank = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ParseError("cannot parse type '" + std::string(text) + "': rank must be a decimal integer");
    SimpleType t{static_cast<Family>(f), rank};
    validate_simple_type(t);
    return t;
}

std::vector<SimpleType> all_simple_types(int max_rank) {
    std::vector<SimpleType> out;
    for (int n = 1; n <= max_rank; ++n) out.push_back({Family::A, n});
    for (int n = 2; n <= max_rank; ++n) out.push_back({Family::B, n});
    for (int n = 2; n <= max_rank; ++n) out.push_back({Family::C, n});
    for (int n = 3; n <= max_rank; ++n) out.push_back({Family::D, n});
    for (int n = 6; n <= std::min(8, max_rank); ++n) out.push_back({Family::E, n});
    if (max_rank >= 4) out.push_back({Family::F, 4});
    if (max_rank >= 2) out.push_back({Family::G, 2});
    return out;
}

int positive_root_count(const SimpleType& t) {
    const int n = t.rank;
    switch (t.family) {
        case Family::A: return n * (n + 1) / 2;
        case Family::B:
        case Family::C: return n * n;
        case Family::D: return n * (n - 1);
        case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
        case Family::F: return 24;
        case Family::G: return 6;
    }
    return 0;
}

namespace {

// Gram matrix of the simple roots, Bourbaki numbering, short roots of squared length 2.
std::vector<std::vector<int>> gram_matrix(const SimpleType& t) {
    const int n = t.rank;
    std::vector<std::vector<int>> g(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    auto at = [&](int i, int j) -> int& { return g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; };
    auto edge = [&](int i, int j, int v) { at(i, j) = at(j, i) = v; };
    switch (t.family) {
        case Family::A:
            for (int i = 1; i <= n; ++i) at(i, i) = 2;
            for (int i = 1; i < n; ++i) edge(i, i + 1, -1);
            break;
        case Family::B:
            for (int i = 1; i < n; ++i) at(i, i) = 4;
            at(n, n) = 2;
            for (int i = 1; i < n; ++i) edge(i, i + 1, -2);
            break;
        case Family::C:
            for (int i = 1; i < n; ++i) at(i, i) = 2;
            at(n, n) = 4;
            for (int i = 1; i < n - 1; ++i) edge(i, i + 1, -1);
            edge(n - 1, n, -2);
            break;
        case Family::D:
            for (int i = 1; i <= n; ++i) at(i, i) = 2;
            for (int i = 1; i <= n - 2; ++i) edge(i, i + 1, -1);
            edge(n - 2, n, -1);
            break;
        case Family::E:
            for (int i = 1; i <= n; ++i) at(i, i) = 2;
            edge(1, 3, -1);
            edge(2, 4, -1);
            for (int i = 3; i < n; ++i) edge(i, i + 1, -1);
            break;
        case Family::F:
            at(1, 1) = at(2, 2) = 4;
            at(3, 3) = at(4, 4) = 2;
            edge(1, 2, -2);
            edge(2, 3, -2);
            edge(3, 4, -1);
            break;
        case Family::G:
            at(1, 1) = 2;
            at(2, 2) = 6;
            edge(1, 2, -3);
            break;
    }
    return g;
}

}  // namespace

RootSystem::RootSystem(SimpleType t) : type_(t) {
    validate_simple_type(t);
    const int n = t.rank;
    const auto un = static_cast<std::size_t>(n);
    auto gram = gram_matrix(t);
    length_sq_.resize(un);
    cartan_.assign(un, std::vector<int>(un, 0));
    for (std::size_t i = 0; i < un; ++i) {
        length_sq_[i] = gram[i][i];
        for (std::size_t j = 0; j < un; ++j) cartan_[i][j] = 2 * gram[i][j] / gram[i][i];
    }

    auto apply_simple = [&](std::size_t i, const Root& r) {
        int c = 0;
        for (std::size_t j = 0; j < un; ++j) c += cartan_[i][j] * r[j];
        Root out = r;
        out[i] -= c;
        return out;
    };

    std::set<Root> seen;
    std::vector<Root> frontier;
    for (std::size_t i = 0; i < un; ++i) {
        Root r(un, 0);
        r[i] = 1;
        seen.insert(r);
        frontier.push_back(r);
    }
    while (!frontier.empty()) {
        std::vector<Root> next;
        for (const auto& r : frontier)
            for (std::size_t i = 0; i < un; ++i) {
                Root s = apply_simple(i, r);
                if (seen.insert(s).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
    }
    for (const auto& r : seen)
        if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) positive_.push_back(r);

    auto height = [](const Root& r) {
        int h = 0;
        for (int c : r) h += c;
        return h;
    };
    std::sort(positive_.begin(), positive_.end(), [&](const Root& a, const Root& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });

    simple_pos_.resize(un);
    for (std::size_t i = 0; i < un; ++i) {
        Root r(un, 0);
        r[i] = 1;
        simple_pos_[i] = find(r);
    }

    const int total = num_roots();
    simple_perm_.assign(un, std::vector<std::uint16_t>(static_cast<std::size_t>(total)));
    for (std::size_t i = 0; i < un; ++i)
        for (int k = 0; k < total; ++k) {
            int img = find(apply_simple(i, root(k)));
            simple_perm_[i][static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(img);
        }
}

Root RootSystem::root(int index) const {
    if (index < num_positive()) return positive_[static_cast<std::size_t>(index)];
    Root r = positive_[static_cast<std::size_t>(index - num_positive())];
    for (int& c : r) c = -c;
    return r;
}

int RootSystem::find(const Root& r) const {
    bool neg = std::any_of(r.begin(), r.end(), [](int c) { return c < 0; });
    Root key = r;
    if (neg)
        for (int& c : key) c = -c;
    int h = 0;
    for (int c : key) h += c;
    // Binary search on the canonical (height asc, lex desc) order.
    auto it = std::lower_bound(positive_.begin(), positive_.end(), key, [&](const Root& a, const Root& b) {
        int ha = 0;
        for (int c : a) ha += c;
        if (ha != h) return ha < h;
        return a > b;
    });
    if (it == positive_.end() || *it != key) return -1;
    int idx = static_cast<int>(it - positive_.begin());
    return neg ? idx + num_positive() : idx;
}

long long RootSystem::inner(const Root& a, const Root& b) const {
    long long s = 0;
    const auto un = static_cast<std::size_t>(rank());
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) {
            // (alpha_i, alpha_j) = cartan[i][j] * |alpha_i|^2 / 2
            long long gij = static_cast<long long>(cartan_[i][j]) * length_sq_[i] / 2;
            s += static_cast<long long>(a[i]) * gij * b[j];
        }
    return s;
}

std::vector<std::uint16_t> RootSystem::reflection(int beta) const {
    const Root b = root(beta);
    const long long bb = inner(b, b);
    std::vector<std::uint16_t> out(static_cast<std::size_t>(num_roots()));
    for (int k = 0; k < num_roots(); ++k) {
        Root g = root(k);
        long long c = 2 * inner(g, b) / bb;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] -= static_cast<int>(c) * b[i];
        out[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(find(g));
    }
    return out;
}

RootSystem build_root_system(const SimpleType& t) { return RootSystem(t); }

int dim_lie_algebra(const RootSystem& rs) { return rs.rank() + 2 * rs.num_positive(); }

std::vector<int> minus_w0_permutation(const RootSystem& rs) {
    // Grow w by right multiplication by any s_i with w(alpha_i) > 0 until no
    // such i remains; the result is w0.
    const int total = rs.num_roots();
    std::vector<std::uint16_t> w(static_cast<std::size_t>(total));
    for (int k = 0; k < total; ++k) w[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(k);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int i = 0; i < rs.rank(); ++i) {
            if (!rs.is_positive(w[static_cast<std::size_t>(rs.simple_index(i))])) continue;
            const auto& s = rs.simple_reflection(i);
            std::vector<std::uint16_t> ws(w.size());
            for (std::size_t k = 0; k < w.size(); ++k) ws[k] = w[s[k]];
            w = std::move(ws);
            grew = true;
        }
    }
    std::vector<int> sigma(static_cast<std::size_t>(rs.rank()));
    for (int i = 0; i < rs.rank(); ++i) {
        int img = rs.negate(w[static_cast<std::size_t>(rs.simple_index(i))]);
        for (int j = 0; j < rs.rank(); ++j)
            if (rs.simple_index(j) == img) sigma[static_cast<std::size_t>(i)] = j;
    }
    return sigma;
}

}  // namespace anosovkit
