#include "anosovkit/flags.hpp"

#include <algorithm>
#include <charconv>

#include "anosovkit/errors.hpp"

namespace anosovkit {

Theta parse_theta(std::string_view text, int rank) {
    Theta out;
    std::size_t pos = 0;
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    if (trim(text).empty()) return out;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto tok = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size())
            throw ParseError("cannot parse simple-root index list '" + std::string(text) + "'");
        if (v < 1 || v > rank)
            throw ValidationError("simple-root index " + std::to_string(v) + " out of range 1.." + std::to_string(rank));
        out.push_back(v - 1);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw ValidationError("duplicate simple-root index in '" + std::string(text) + "'");
    return out;
}

std::string format_theta(const Theta& theta) {
    std::string s;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(theta[k] + 1);
    }
    return s;
}

bool is_symmetric_parabolic(const WeylGroup& w, const Theta& theta) {
    for (int i : theta) {
        ElementId s = w.from_word({i});
        ElementId conj = w.multiply(w.multiply(w.w0(), s), w.w0());
        bool inside = false;
        for (int j : theta)
            if (w.from_word({j}) == conj) inside = true;
        if (!inside) return false;
    }
    return true;
}

const std::vector<ElementId>& FlagConfiguration::orbit_members(ElementId rep) const { return orbit_members_[rep]; }

std::string FlagConfiguration::describe() const {
    return weyl_->root_system().type().name() + " [pa=" + format_theta(theta_a_) + "; pd=" + format_theta(theta_d_) + "]";
}

namespace {

void check_theta(const Theta& t, int rank, const char* what) {
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < 0 || t[k] >= rank) throw ValidationError(std::string(what) + ": simple-root index out of range");
        if (k && t[k] <= t[k - 1]) throw ValidationError(std::string(what) + ": indices must be sorted and distinct");
    }
    if (static_cast<int>(t.size()) == rank)
        throw ValidationError(std::string(what) + ": every simple root selected; P = G is not a proper parabolic subgroup");
}

// Closure of `start` under x -> x s (s in right) and x -> s x (s in left).
std::vector<ElementId> orbit(const WeylGroup& w, ElementId start, const Theta& left, const Theta& right) {
    std::vector<ElementId> members{start};
    std::vector<char> seen(w.size(), 0);
    seen[start] = 1;
    for (std::size_t k = 0; k < members.size(); ++k) {
        ElementId x = members[k];
        for (int i : right) {
            ElementId y = w.right_multiply(x, i);
            if (!seen[y]) seen[y] = 1, members.push_back(y);
        }
        for (int i : left) {
            ElementId y = w.left_multiply(i, x);
            if (!seen[y]) seen[y] = 1, members.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace

FlagConfiguration build_flag_configuration(std::shared_ptr<const WeylGroup> wp, Theta theta_a, Theta theta_d,
                                           bool allow_nonsymmetric) {
    const WeylGroup& w = *wp;
    check_theta(theta_a, w.rank(), "theta_A");
    check_theta(theta_d, w.rank(), "theta_D");
    FlagConfiguration fc;
    fc.symmetric_ = is_symmetric_parabolic(w, theta_a);
    if (!fc.symmetric_ && !allow_nonsymmetric)
        throw ValidationError("theta_A = {" + format_theta(theta_a) +
                              "} is not symmetric: P_A must be a symmetric parabolic subgroup, i.e. W_A must be "
                              "invariant under conjugation by w0 (equivalently -w0 must map theta_A to itself)");
    fc.weyl_ = std::move(wp);
    fc.theta_a_ = std::move(theta_a);
    fc.theta_d_ = std::move(theta_d);

    const std::size_t n = w.size();
    fc.coset_of_.assign(n, 0);
    std::vector<char> done(n, 0);
    for (ElementId x = 0; x < n; ++x) {
        if (done[x]) continue;
        // Ids are length-sorted, so the first unvisited member is the minimal representative.
        auto members = orbit(w, x, {}, fc.theta_d_);
        for (ElementId y : members) fc.coset_of_[y] = x, done[y] = 1;
        fc.cosets_.push_back(x);
    }

    fc.orbit_of_.assign(n, 0);
    fc.orbit_members_.assign(n, {});
    std::fill(done.begin(), done.end(), 0);
    for (ElementId x = 0; x < n; ++x) {
        if (done[x]) continue;
        auto members = orbit(w, x, fc.theta_a_, fc.theta_d_);
        for (ElementId y : members) fc.orbit_of_[y] = x, done[y] = 1;
        fc.orbit_members_[x] = std::move(members);
    }

    int n_max = 0;
    for (ElementId c : fc.cosets_) n_max = std::max(n_max, w.length(c));
    fc.n_ = n_max;
    return fc;
}

int flag_dimension(const FlagConfiguration& fc) { return fc.flag_dimension(); }

}  // namespace anosovkit
