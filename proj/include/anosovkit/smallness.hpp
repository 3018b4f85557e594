#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anosovkit/ideals.hpp"
#include "anosovkit/rational.hpp"
#include "anosovkit/rootsys.hpp"

namespace anosovkit {

/// Hausdorff-dimension input for the limit curve: "hdim < value" when
/// strict, "hdim = value" otherwise.
struct HdimBound {
    Rational value;
    bool strict = false;

    std::string describe() const;
    friend bool operator==(const HdimBound&, const HdimBound&) = default;
};

/// Throws ValidationError for a negative value.
HdimBound make_hdim_bound(const Rational& value, bool strict);

/// Outcome of the k-smallness criterion for one ideal; `certified == false`
/// means the sufficient criterion fails, nothing more.
struct SmallnessVerdict {
    HdimBound bound;
    int flag_dimension = 0;
    int ideal_length = 0;
    int k = 0;
    /// 2 l(I) + h
    Rational lambda_bound;
    /// 2 (N - l(I)) - k
    Rational threshold;
    bool certified = false;
    std::optional<int> max_k;
    /// The inequality that was checked, e.g. "2 < 2" or "hdim < 2 <= 2".
    std::string inequality;
};

std::optional<int> max_certified_k(int flag_dimension, int ideal_length, const HdimBound& h);
SmallnessVerdict certify_k_small(int flag_dimension, int ideal_length, const HdimBound& h, int k);

std::optional<int> max_certified_k(const FlagConfiguration& fc, const BalancedIdeal& ideal, const HdimBound& h);
SmallnessVerdict certify_k_small(const FlagConfiguration& fc, const BalancedIdeal& ideal, const HdimBound& h, int k);

struct LengthBoundReport {
    std::string description;
    int flag_dimension = 0;
    /// N - 3
    int bound = 0;
    std::optional<int> max_length;
    std::optional<int> min_length;
    /// Every balanced ideal has l(I) <= N - 3.
    bool pass = false;
    /// An ideal attaining the maximum length when the bound fails.
    std::optional<BalancedIdeal> witness;
    /// False when the search hit the node cap before settling the maximum.
    bool complete = true;
    std::uint64_t nodes = 0;
};

LengthBoundReport verify_length_bound(const FlagConfiguration& fc, const EnumerationOptions& opts = {});

enum class ParabolicSelector { BorelComplete, BorelAll, SymmetricAll };
ParabolicSelector parse_parabolic_selector(std::string_view text);
std::string to_string(ParabolicSelector s);

struct SweepOptions {
    std::vector<SimpleType> types;
    ParabolicSelector selector = ParabolicSelector::BorelComplete;
    HdimBound bound{2, true};
    int k = 4;
    EnumerationOptions enumeration;
    std::uint64_t max_order = kDefaultMaxOrder;
    /// Rows computed concurrently.
    unsigned threads = 1;
};

struct SweepRow {
    SimpleType type;
    Theta theta_a;
    Theta theta_d;
    int flag_dimension = 0;
    std::uint64_t ideal_count = 0;
    /// ideal_count is only a lower bound (node cap hit).
    bool count_is_lower_bound = false;
    std::optional<int> min_length;
    std::optional<int> max_length;
    /// Every enumerated ideal is certified k-small; unset if undecided.
    std::optional<bool> all_certified;
    std::vector<std::string> annotations;
    bool resource_limited = false;
    std::string error;
};

/// Type-level annotations: small-rank exclusions and the exceptional types
/// excluded for the Hitchin bound.
std::vector<std::string> type_annotations(const SimpleType& t);

/// (theta_A, theta_D) pairs for a type under a selector, in canonical order.
std::vector<std::pair<Theta, Theta>> selector_configurations(const WeylGroup& w, ParabolicSelector s);

std::vector<SweepRow> classification_sweep(const SweepOptions& opts);

struct ModuliDimensions {
    int genus = 0;
    SimpleType type;
    int dim_g = 0;
    /// complex dimension of the quasi-Fuchsian space of the surface: 6g - 3
    int qf_surface = 0;
    /// 6g - 6 + dim G
    int qf_group = 0;
    /// real dimension of the Hitchin component: (2g - 2) dim G + 2 dim G
    int hitchin_real = 0;
};

ModuliDimensions moduli_dimensions(int genus, const RootSystem& rs);

/// A named hdim bound, possibly parametrized as value = scale * n + offset.
struct HdimPreset {
    std::string name;
    std::string description;
    bool strict = false;
    Rational value;
    std::optional<std::string> parameter;
    Rational scale;
    Rational offset;
    std::optional<int> min_parameter;
};

/// A named (type, theta_A, theta_D, hdim) example. Text fields may contain
/// {n}, {n-1}, {n+1} placeholders; a theta starting with '~' lists the simple
/// roots to leave out.
struct ConfigurationPreset {
    std::string name;
    std::string description;
    std::string type;
    std::string pa;
    std::string pd;
    std::string hdim;
    std::optional<std::string> parameter;
    std::optional<int> min_parameter;
};

struct ResolvedConfiguration {
    std::string name;
    std::string description;
    SimpleType type;
    Theta theta_a;
    Theta theta_d;
    std::string hdim_spec;
    HdimBound bound;
};

class PresetTable {
public:
    static PresetTable from_json_text(const std::string& text);
    static PresetTable from_file(const std::filesystem::path& path);
    /// $ANOSOVKIT_PRESETS, else the installed data file, else the source tree copy.
    static std::filesystem::path default_path();
    static PresetTable load_default();

    const std::vector<HdimPreset>& presets() const noexcept { return presets_; }
    /// Resolves "qf", "hitchin", "son1-lattice(4)" and similar.
    HdimBound resolve(std::string_view spec) const;

    const std::vector<ConfigurationPreset>& configurations() const noexcept { return configurations_; }
    /// Resolves "ghys", "rigid(4)", "line-hyperplane(3)" and similar.
    ResolvedConfiguration resolve_configuration(std::string_view spec) const;

private:
    std::vector<HdimPreset> presets_;
    std::vector<ConfigurationPreset> configurations_;
};

}  // namespace anosovkit
