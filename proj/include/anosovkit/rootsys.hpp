#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace anosovkit {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// A simple Lie type, e.g. A3 or G2.
struct SimpleType {
    Family family = Family::A;
    int rank = 1;

    std::string name() const;
    friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

/// Throws ValidationError when (family, rank) is not a simple type:
/// A n>=1, B n>=2, C n>=2, D n>=3, E n in {6,7,8}, F n=4, G n=2.
void validate_simple_type(const SimpleType& t);

/// Parses "A3", "b2", "E8" (case-insensitive family letter, decimal rank).
/// Throws ParseError for malformed text and ValidationError for a bad rank.
SimpleType parse_simple_type(std::string_view text);

/// Every simple type of rank <= max_rank in the canonical listing order
/// A1..An, B2.., C2.., D3.., E6.., F4, G2.
std::vector<SimpleType> all_simple_types(int max_rank);

/// Closed-form |Phi+| for the type.
int positive_root_count(const SimpleType& t);

/// Coordinates of a root in the simple-root basis.
using Root = std::vector<int>;

/// Root system of a simple type with Bourbaki numbering.
///
/// Roots are indexed densely: positive roots 0..P-1 in canonical order
/// (height, then lexicographic coordinates), and the negative of positive
/// root i at index P+i. Simple roots are the first `rank` positive roots
/// in Bourbaki order.
class RootSystem {
public:
    explicit RootSystem(SimpleType t);

    const SimpleType& type() const noexcept { return type_; }
    int rank() const noexcept { return type_.rank; }
    int num_positive() const noexcept { return static_cast<int>(positive_.size()); }
    int num_roots() const noexcept { return 2 * num_positive(); }

    /// cartan()[i][j] = <alpha_i^vee, alpha_j>.
    const std::vector<std::vector<int>>& cartan() const noexcept { return cartan_; }
    /// Squared lengths of the simple roots (short roots have 2).
    const std::vector<int>& simple_length_sq() const noexcept { return length_sq_; }

    const std::vector<Root>& positive_roots() const noexcept { return positive_; }
    Root root(int index) const;
    bool is_positive(int index) const noexcept { return index < num_positive(); }
    int negate(int index) const noexcept { return index < num_positive() ? index + num_positive() : index - num_positive(); }
    /// Index of the simple root alpha_i (0-based i).
    int simple_index(int i) const noexcept { return simple_pos_[static_cast<std::size_t>(i)]; }
    /// Index of a root given by coordinates, or -1.
    int find(const Root& r) const;

    /// Action of s_i on root indices.
    const std::vector<std::uint16_t>& simple_reflection(int i) const { return simple_perm_[static_cast<std::size_t>(i)]; }
    /// Action of the reflection t_beta for positive root `beta` on root indices.
    std::vector<std::uint16_t> reflection(int beta) const;

    /// Symmetric form (alpha, beta) on root coordinates.
    long long inner(const Root& a, const Root& b) const;

    friend bool operator==(const RootSystem&, const RootSystem&) = default;

private:
    SimpleType type_;
    std::vector<std::vector<int>> cartan_;
    std::vector<int> length_sq_;
    std::vector<Root> positive_;
    std::vector<int> simple_pos_;
    std::vector<std::vector<std::uint16_t>> simple_perm_;
};

RootSystem build_root_system(const SimpleType& t);

/// rank + 2 |Phi+|.
int dim_lie_algebra(const RootSystem& rs);

/// The involution sigma of simple-root indices (0-based) with
/// -w0(alpha_i) = alpha_sigma(i).
std::vector<int> minus_w0_permutation(const RootSystem& rs);

}  // namespace anosovkit
