#include "anosovkit/ideals.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

namespace anosovkit {

bool is_balanced_ideal(const FlagConfiguration& fc, const Bitset& m) {
    const WeylGroup& w = fc.weyl();
    if (m.size() != w.size()) return false;
    if (!m.test(w.identity())) return false;
    bool ok = true;
    m.for_each([&](std::size_t xi) {
        if (!ok) return;
        auto x = static_cast<ElementId>(xi);
        if (!w.bruhat_below(x).is_subset_of(m)) ok = false;
        for (int i : fc.theta_a())
            if (!m.test(w.left_multiply(i, x))) ok = false;
        for (int i : fc.theta_d())
            if (!m.test(w.right_multiply(x, i))) ok = false;
    });
    if (!ok) return false;
    for (ElementId x = 0; x < w.size(); ++x)
        if (m.test(x) == m.test(w.left_multiply_w0(x))) return false;
    return true;
}

BalancedIdeal make_balanced_ideal(const FlagConfiguration& fc, Bitset membership) {
    BalancedIdeal b;
    int ell = 0, wl = 0;
    membership.for_each([&](std::size_t x) {
        ell = std::max(ell, fc.coset_length(static_cast<ElementId>(x)));
        wl = std::max(wl, fc.weyl().length(static_cast<ElementId>(x)));
    });
    b.membership = std::move(membership);
    b.length = ell;
    b.codefect = fc.flag_dimension() - ell;
    b.max_weyl_length = wl;
    return b;
}

namespace {

struct SearchState {
    Bitset in;
    Bitset out;  // always w0 * in
    std::size_t cursor = 0;
};

class BalancedSearch {
public:
    BalancedSearch(const FlagConfiguration& fc, const EnumerationOptions& opts) : fc_(fc), w_(fc.weyl()), opts_(opts) {
        const std::size_t n = w_.size();
        // Downward closure of each W_A x W_D orbit; shared by all members of an orbit.
        down_of_.assign(n, nullptr);
        closures_.reserve(n);
        for (ElementId x = 0; x < n; ++x) {
            if (fc.orbit_of(x) != x) continue;
            const auto& members = fc.orbit_members(x);
            if (members.size() == 1) {
                down_of_[x] = &w_.bruhat_below(x);
                continue;
            }
            Bitset d(n);
            for (ElementId y : members) d |= w_.bruhat_below(y);
            closures_.push_back(std::move(d));
        }
        std::size_t k = 0;
        for (ElementId x = 0; x < n; ++x) {
            if (fc.orbit_of(x) != x || fc.orbit_members(x).size() == 1) continue;
            down_of_[x] = &closures_[k++];
        }
        for (ElementId x = 0; x < n; ++x) down_of_[x] = down_of_[fc.orbit_of(x)];

        for (ElementId x = 0; x < n; ++x) {
            ElementId y = w_.left_multiply_w0(x);
            auto key = [&](ElementId e) { return std::pair{w_.length(e), e}; };
            if (key(x) < key(y)) pairs_.emplace_back(x, y);
        }
        std::sort(pairs_.begin(), pairs_.end(), [&](auto a, auto b) {
            return std::pair{w_.length(a.first), a.first} < std::pair{w_.length(b.first), b.first};
        });
    }

    EnumerationResult run() {
        SearchState root{Bitset(w_.size()), Bitset(w_.size()), 0};
        std::vector<SearchState> tasks;
        std::uint64_t frontier_nodes = 0;
        bool frontier_overflow = false;
        split(root, 0, tasks, frontier_nodes, frontier_overflow);
        nodes_ = frontier_nodes;
        if (frontier_overflow) abort_ = true;

        const std::size_t cap = opts_.limit && !opts_.count_only ? *opts_.limit + 1 : SIZE_MAX;
        std::vector<std::vector<Bitset>> found(tasks.size());
        counts_.assign(tasks.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            std::uint64_t local = 0;
            while (!abort_) {
                std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) break;
                descend(tasks[t], found[t], counts_[t], cap, local);
            }
            flush(local);
        };
        const unsigned threads = std::max(1u, opts_.threads);
        if (threads == 1 || tasks.size() < 2) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < std::min<std::size_t>(threads, tasks.size()); ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        EnumerationResult res;
        for (auto c : counts_) res.count += c;
        std::vector<Bitset> merged;
        for (auto& f : found)
            for (auto& b : f) merged.push_back(std::move(b));
        if (opts_.limit && merged.size() > *opts_.limit) {
            merged.resize(*opts_.limit);
            res.truncated = true;
            res.count = merged.size();
        }
        for (auto& b : merged) res.ideals.push_back(make_balanced_ideal(fc_, std::move(b)));
        std::sort(res.ideals.begin(), res.ideals.end(),
                  [](const BalancedIdeal& a, const BalancedIdeal& b) { return lex_less(a.membership, b.membership); });
        res.nodes = nodes_.load();
        if (abort_) {
            throw SearchLimitError("balanced-ideal search for " + fc_.describe() + " exceeded " +
                                       std::to_string(opts_.max_nodes) + " nodes after finding " +
                                       std::to_string(res.count) + " ideals",
                                   std::move(res));
        }
        return res;
    }

    std::optional<Bitset> find(const std::vector<ElementId>& required, const Bitset& forbidden) {
        SearchState st{Bitset(w_.size()), Bitset(w_.size()), 0};
        for (ElementId y : required)
            if (!include(st, y)) return std::nullopt;
        bool ok = true;
        forbidden.for_each([&](std::size_t z) {
            if (ok) ok = include(st, w_.left_multiply_w0(static_cast<ElementId>(z)));
        });
        if (!ok) return std::nullopt;
        std::optional<Bitset> hit;
        first(st, hit);
        if (abort_) {
            EnumerationResult partial;
            partial.nodes = nodes_.load();
            throw SearchLimitError("balanced-ideal search for " + fc_.describe() + " exceeded " +
                                       std::to_string(opts_.max_nodes) + " nodes",
                                   std::move(partial));
        }
        return hit;
    }

    std::uint64_t nodes() const { return nodes_.load(); }

private:
    bool first(SearchState& st, std::optional<Bitset>& hit) {
        if (nodes_.fetch_add(1) + 1 > opts_.max_nodes) {
            abort_ = true;
            return true;
        }
        if (!advance(st)) {
            hit = st.in;
            return true;
        }
        const auto [x, y] = pairs_[st.cursor];
        for (ElementId choice : {x, y}) {
            SearchState child = st;
            if (include(child, choice) && first(child, hit)) return true;
        }
        return false;
    }

    // Adds y and its closure to `in`, mirroring into `out`; false on contradiction.
    bool include(SearchState& st, ElementId y) const {
        if (st.in.test(y)) return true;
        if (st.out.test(y)) return false;
        const auto& d = down_of_[y]->words();
        auto& in = st.in.words();
        auto& out = st.out.words();
        for (std::size_t k = 0; k < d.size(); ++k) {
            Bitset::Word fresh = d[k] & ~in[k];
            if (!fresh) continue;
            if (fresh & out[k]) return false;
            in[k] |= fresh;
            while (fresh) {
                auto z = static_cast<ElementId>(k * Bitset::kWordBits + static_cast<std::size_t>(std::countr_zero(fresh)));
                fresh &= fresh - 1;
                ElementId m = w_.left_multiply_w0(z);
                if (st.in.test(m)) return false;
                st.out.set(m);
            }
        }
        return true;
    }

    bool advance(SearchState& st) const {
        while (st.cursor < pairs_.size()) {
            ElementId x = pairs_[st.cursor].first;
            if (!st.in.test(x) && !st.out.test(x)) return true;
            ++st.cursor;
        }
        return false;
    }

    void split(SearchState& st, int depth, std::vector<SearchState>& tasks, std::uint64_t& nodes, bool& overflow) {
        if (overflow) return;
        if (++nodes > opts_.max_nodes) {
            overflow = true;
            return;
        }
        if (depth == opts_.split_depth || !advance(st)) {
            // Re-entered by descend(), which counts this node again.
            --nodes;
            tasks.push_back(st);
            return;
        }
        const auto [x, y] = pairs_[st.cursor];
        for (ElementId choice : {x, y}) {
            SearchState child = st;
            if (include(child, choice)) split(child, depth + 1, tasks, nodes, overflow);
        }
    }

    void descend(SearchState& st, std::vector<Bitset>& out, std::uint64_t& count, std::size_t cap, std::uint64_t& local) {
        if (abort_ || out.size() >= cap) return;
        if ((++local & 1023u) == 0) flush(local);
        if (!advance(st)) {
            ++count;
            if (!opts_.count_only) out.push_back(st.in);
            return;
        }
        const auto [x, y] = pairs_[st.cursor];
        for (ElementId choice : {x, y}) {
            SearchState child = st;
            if (include(child, choice)) descend(child, out, count, cap, local);
        }
    }

    void flush(std::uint64_t& local) {
        if (!local) return;
        std::uint64_t total = nodes_.fetch_add(local) + local;
        local = 0;
        if (total > opts_.max_nodes) abort_ = true;
    }

    const FlagConfiguration& fc_;
    const WeylGroup& w_;
    EnumerationOptions opts_;
    std::vector<Bitset> closures_;
    std::vector<const Bitset*> down_of_;
    std::vector<std::pair<ElementId, ElementId>> pairs_;
    std::vector<std::uint64_t> counts_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> abort_{false};
};

}  // namespace

EnumerationResult enumerate_balanced_ideals(const FlagConfiguration& fc, const EnumerationOptions& opts) {
    BalancedSearch search(fc, opts);
    return search.run();
}

std::vector<Bitset> brute_force_balanced_ideals(const FlagConfiguration& fc) {
    const WeylGroup& w = fc.weyl();
    const std::size_t n = w.size();
    if (n > kBruteForceMaxOrder)
        throw ValidationError("brute-force oracle limited to |W| <= " + std::to_string(kBruteForceMaxOrder));
    using Mask = std::uint64_t;
    std::vector<Mask> below(n, 0), left_img(n * fc.theta_a().size()), right_img(n * fc.theta_d().size());
    std::vector<ElementId> mirror(n);
    for (ElementId y = 0; y < n; ++y) {
        for (ElementId x = 0; x < n; ++x)
            if (w.bruhat_leq(x, y)) below[y] |= Mask{1} << x;
        mirror[y] = w.left_multiply_w0(y);
    }
    const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<Bitset> out;
    for (Mask m = 0; m <= full; ++m) {
        if (std::popcount(m) * 2 != static_cast<int>(n)) continue;
        if (!(m & 1u)) continue;
        bool ok = true;
        for (ElementId x = 0; x < n && ok; ++x) {
            bool in = m >> x & 1u;
            bool mirror_in = m >> mirror[x] & 1u;
            if (in == mirror_in) ok = false;
            if (!in) continue;
            if ((below[x] & m) != below[x]) ok = false;
            for (int i : fc.theta_a())
                if (!(m >> w.left_multiply(i, x) & 1u)) ok = false;
            for (int i : fc.theta_d())
                if (!(m >> w.right_multiply(x, i) & 1u)) ok = false;
        }
        if (ok) {
            Bitset b(n);
            for (ElementId x = 0; x < n; ++x)
                if (m >> x & 1u) b.set(x);
            out.push_back(std::move(b));
        }
        if (m == full) break;
    }
    std::sort(out.begin(), out.end(), [](const Bitset& a, const Bitset& b) { return lex_less(a, b); });
    return out;
}

std::optional<BalancedIdeal> find_balanced_ideal(const FlagConfiguration& fc, const std::vector<ElementId>& required,
                                                 const Bitset& forbidden, const EnumerationOptions& opts) {
    BalancedSearch search(fc, opts);
    Bitset none(fc.weyl().size());
    auto hit = search.find(required, forbidden.size() ? forbidden : none);
    if (!hit) return std::nullopt;
    return make_balanced_ideal(fc, std::move(*hit));
}

std::optional<LengthExtremes> max_min_ideal_length(const FlagConfiguration& fc, const EnumerationOptions& opts) {
    const WeylGroup& w = fc.weyl();
    const std::size_t n = w.size();
    BalancedSearch search(fc, opts);
    const Bitset none(n);
    auto any = search.find({}, none);
    if (!any) return std::nullopt;
    LengthExtremes e;
    e.max_witness = e.min_witness = make_balanced_ideal(fc, std::move(*any));
    e.max_length = e.min_length = e.max_witness.length;
    const int top = fc.flag_dimension();

    // An ideal of length m contains an orbit whose longest coset has length m;
    // orbits above the current level have already been ruled out.
    std::vector<std::vector<ElementId>> by_level(static_cast<std::size_t>(top) + 1);
    std::vector<int> orbit_top(n, 0);
    for (ElementId x = 0; x < n; ++x) {
        ElementId r = fc.orbit_of(x);
        orbit_top[r] = std::max(orbit_top[r], fc.coset_length(x));
    }
    for (ElementId x = 0; x < n; ++x)
        if (fc.orbit_of(x) == x) by_level[static_cast<std::size_t>(orbit_top[x])].push_back(x);
    for (int m = top; m > e.max_length; --m) {
        bool found = false;
        for (ElementId r : by_level[static_cast<std::size_t>(m)])
            if (auto hit = search.find({r}, none)) {
                e.max_witness = make_balanced_ideal(fc, std::move(*hit));
                e.max_length = m;
                found = true;
                break;
            }
        if (found) break;
    }

    for (int m = 0; m < e.min_length; ++m) {
        Bitset above(n);
        for (ElementId x = 0; x < n; ++x)
            if (fc.coset_length(x) > m) above.set(x);
        if (auto hit = search.find({}, above)) {
            e.min_witness = make_balanced_ideal(fc, std::move(*hit));
            e.min_length = m;
            break;
        }
    }
    e.nodes = search.nodes();
    return e;
}

ThickeningProfile thickening_profile(const FlagConfiguration& fc, const BalancedIdeal& ideal) {
    ThickeningProfile p;
    for (ElementId c : fc.cosets())
        if (ideal.membership.test(c)) {
            p.cosets.push_back(c);
            p.dims.push_back(fc.weyl().length(c));
        }
    int top = 0;
    for (int d : p.dims) top = std::max(top, d);
    p.histogram.assign(static_cast<std::size_t>(top) + 1, 0);
    for (int d : p.dims) ++p.histogram[static_cast<std::size_t>(d)];
    return p;
}

}  // namespace anosovkit
