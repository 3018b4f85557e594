#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "anosovkit/bitset.hpp"
#include "anosovkit/rootsys.hpp"

namespace anosovkit {

using ElementId = std::uint32_t;

/// Default guard on materialized group order (the order of W(E6)).
inline constexpr std::uint64_t kDefaultMaxOrder = 51840;

/// Order of W for the type, from the product of its degrees.
std::uint64_t weyl_group_order(const SimpleType& t);

/// A finite Weyl group with every element materialized.
///
/// Elements carry dense ids in breadth-first order from the identity under
/// right multiplication by simple reflections, so ids are sorted by length;
/// id 0 is the identity and the last id is w0. An element is identified by
/// its inversion set {beta > 0 : w(beta) < 0}.
class WeylGroup {
public:
    const RootSystem& root_system() const noexcept { return rs_; }
    std::size_t size() const noexcept { return length_.size(); }
    int rank() const noexcept { return rs_.rank(); }

    ElementId identity() const noexcept { return 0; }
    ElementId w0() const noexcept { return static_cast<ElementId>(size() - 1); }

    int length(ElementId x) const noexcept { return length_[x]; }
    int max_length() const noexcept { return rs_.num_positive(); }

    /// Image of root index k under x.
    int act(ElementId x, int k) const noexcept {
        return perm_[static_cast<std::size_t>(x) * static_cast<std::size_t>(rs_.num_roots()) + static_cast<std::size_t>(k)];
    }
    Bitset inversion_set(ElementId x) const;

    /// x * s_i and s_i * x for simple reflection index i (0-based).
    ElementId right_multiply(ElementId x, int i) const noexcept { return right_[static_cast<std::size_t>(i)][x]; }
    ElementId left_multiply(int i, ElementId x) const noexcept { return left_[static_cast<std::size_t>(i)][x]; }
    ElementId left_multiply_w0(ElementId x) const noexcept { return left_w0_[x]; }

    ElementId multiply(ElementId x, ElementId y) const;
    ElementId inverse(ElementId x) const;
    /// Product s_{i1} s_{i2} ... for 0-based indices.
    ElementId from_word(const std::vector<int>& word) const;
    /// Lexicographically-first reduced word (0-based generator indices).
    std::vector<int> reduced_word(ElementId x) const;
    /// "e" or e.g. "s1s2" with 1-based Bourbaki indices.
    std::string name(ElementId x) const;

    bool is_right_descent(ElementId x, int i) const noexcept { return !rs_.is_positive(act(x, rs_.simple_index(i))); }

    /// Bruhat covers x of y (x < y, l(x) = l(y) - 1), ascending ids.
    const std::vector<ElementId>& covers(ElementId y) const noexcept { return covers_[y]; }
    /// All x with x <= y in the strong Bruhat order.
    const Bitset& bruhat_below(ElementId y) const noexcept { return below_[y]; }
    bool bruhat_leq(ElementId x, ElementId y) const noexcept { return below_[y].test(x); }

    friend bool operator==(const WeylGroup&, const WeylGroup&) = default;

    /// Versioned binary image; identical groups produce identical bytes.
    std::string serialize() const;
    static WeylGroup deserialize(const std::string& bytes);

    static constexpr std::uint32_t kFormatVersion = 1;

private:
    friend WeylGroup generate_weyl_group(const RootSystem& rs, std::uint64_t max_order);
    explicit WeylGroup(RootSystem rs) : rs_(std::move(rs)) {}

    std::optional<ElementId> lookup(const std::vector<std::uint16_t>& perm) const;
    void build_index();

    RootSystem rs_;
    std::vector<std::uint16_t> perm_;
    std::vector<int> length_;
    std::vector<std::vector<ElementId>> right_;
    std::vector<std::vector<ElementId>> left_;
    std::vector<ElementId> left_w0_;
    std::vector<std::vector<ElementId>> covers_;
    std::vector<Bitset> below_;
    std::unordered_map<Bitset, ElementId, BitsetHash> index_;
};

/// Materializes W with lengths, multiplication tables, covers and the full
/// Bruhat order. Throws ResourceLimitError before allocating when |W|
/// exceeds max_order.
WeylGroup generate_weyl_group(const RootSystem& rs, std::uint64_t max_order = kDefaultMaxOrder);

bool bruhat_leq(const WeylGroup& w, ElementId x, ElementId y);
ElementId left_multiply_w0(const WeylGroup& w, ElementId x);
std::vector<ElementId> covers(const WeylGroup& w, ElementId y);

/// On-disk cache of generated groups, one file per type and format version.
class WeylCache {
public:
    /// Uses $ANOSOVKIT_CACHE_DIR, else $XDG_CACHE_HOME/anosovkit, else ~/.cache/anosovkit.
    static std::filesystem::path default_directory();

    explicit WeylCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& directory() const noexcept { return dir_; }
    std::filesystem::path path_for(const SimpleType& t) const;

    std::optional<WeylGroup> load(const SimpleType& t) const;
    void store(const WeylGroup& w) const;
    /// Loads when present, otherwise generates and stores.
    WeylGroup get(const SimpleType& t, std::uint64_t max_order = kDefaultMaxOrder) const;
    std::vector<std::filesystem::path> entries() const;
    std::size_t clear() const;

private:
    std::filesystem::path dir_;
};

}  // namespace anosovkit
