#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anosovkit/bitset.hpp"
#include "anosovkit/errors.hpp"
#include "anosovkit/flags.hpp"

namespace anosovkit {

/// A balanced ideal of type (P_A, F) together with its length data.
struct BalancedIdeal {
    Bitset membership;
    /// Maximum Schubert dimension over the cosets I/W_D.
    int length = 0;
    /// N - length.
    int codefect = 0;
    /// Maximum Weyl length over the elements of I; equals `length` when W_D is trivial.
    int max_weyl_length = 0;

    friend bool operator==(const BalancedIdeal&, const BalancedIdeal&) = default;
};

/// Cosets of I/W_D with their Schubert dimensions.
struct ThickeningProfile {
    std::vector<ElementId> cosets;  ///< minimal representatives, ascending
    std::vector<int> dims;          ///< dims[k] = l_D(cosets[k])
    std::vector<std::size_t> histogram;  ///< histogram[d] = #cosets of dimension d
};

struct EnumerationOptions {
    /// Stop after this many ideals (in search order) and mark the result truncated.
    std::optional<std::size_t> limit;
    /// Cap on search nodes across all workers.
    std::uint64_t max_nodes = 100'000'000;
    unsigned threads = 1;
    /// Decisions taken sequentially before subtrees are farmed out; fixed so
    /// output does not depend on the thread count.
    int split_depth = 8;
    /// Count ideals without materializing them; `ideals` stays empty.
    bool count_only = false;
};

struct EnumerationResult {
    std::vector<BalancedIdeal> ideals;  ///< canonical (lex_less on membership) order
    bool truncated = false;
    std::uint64_t nodes = 0;
    /// Number of ideals found, including those not stored under count_only.
    std::uint64_t count = 0;
};

/// Thrown when the node cap is exceeded; carries what was found so far.
class SearchLimitError : public ResourceLimitError {
public:
    SearchLimitError(const std::string& msg, EnumerationResult partial)
        : ResourceLimitError(msg), partial_(std::move(partial)) {}
    const EnumerationResult& partial() const noexcept { return partial_; }

private:
    EnumerationResult partial_;
};

/// Checks identity membership, downward closure, left W_A and right W_D
/// invariance, and W = I u w0 I with I n w0 I empty.
bool is_balanced_ideal(const FlagConfiguration& fc, const Bitset& membership);

/// Fills length, codefect and max_weyl_length for a membership set.
BalancedIdeal make_balanced_ideal(const FlagConfiguration& fc, Bitset membership);

/// Backtracking enumeration over {x, w0 x} pairs with closure propagation.
EnumerationResult enumerate_balanced_ideals(const FlagConfiguration& fc, const EnumerationOptions& opts = {});

/// Exhaustive scan of all 2^|W| subsets; only for |W| <= kBruteForceMaxOrder.
inline constexpr std::size_t kBruteForceMaxOrder = 26;
std::vector<Bitset> brute_force_balanced_ideals(const FlagConfiguration& fc);

/// First balanced ideal in search order containing every element of
/// `required` and disjoint from `forbidden` (either may be empty).
std::optional<BalancedIdeal> find_balanced_ideal(const FlagConfiguration& fc, const std::vector<ElementId>& required,
                                                 const Bitset& forbidden, const EnumerationOptions& opts = {});

struct LengthExtremes {
    int max_length = 0;
    int min_length = 0;
    BalancedIdeal max_witness;
    BalancedIdeal min_witness;
    std::uint64_t nodes = 0;
};
/// Extremal l(I) over all balanced ideals by branch and bound: each level is
/// settled by a feasibility search with forced or forbidden elements, so no
/// ideal list is built. nullopt when none exist.
std::optional<LengthExtremes> max_min_ideal_length(const FlagConfiguration& fc, const EnumerationOptions& opts = {});

ThickeningProfile thickening_profile(const FlagConfiguration& fc, const BalancedIdeal& ideal);

}  // namespace anosovkit
