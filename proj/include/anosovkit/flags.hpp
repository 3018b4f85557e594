#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "anosovkit/weyl.hpp"

namespace anosovkit {

/// Sorted, duplicate-free 0-based simple-root indices.
using Theta = std::vector<int>;

/// Parses comma-separated 1-based Bourbaki indices ("" is the empty set).
Theta parse_theta(std::string_view text, int rank);
/// Inverse of parse_theta.
std::string format_theta(const Theta& theta);

/// True iff conjugation by w0 maps the generators of W_theta into W_theta.
bool is_symmetric_parabolic(const WeylGroup& w, const Theta& theta);

/// Parabolic data (P_A, P_D = stabilizer of the flag variety) over a Weyl group.
///
/// Right cosets xW_D are indexed by their minimal-length representative.
/// theta = {} is the Borel; theta containing every simple root is rejected.
class FlagConfiguration {
public:
    const WeylGroup& weyl() const noexcept { return *weyl_; }
    std::shared_ptr<const WeylGroup> weyl_ptr() const noexcept { return weyl_; }
    const Theta& theta_a() const noexcept { return theta_a_; }
    const Theta& theta_d() const noexcept { return theta_d_; }
    bool theta_a_symmetric() const noexcept { return symmetric_; }

    /// Complex dimension of the flag variety G/P_D.
    int flag_dimension() const noexcept { return n_; }

    /// Minimal representatives, ascending.
    const std::vector<ElementId>& cosets() const noexcept { return cosets_; }
    ElementId coset_of(ElementId x) const noexcept { return coset_of_[x]; }
    /// Schubert-cell dimension of the coset containing x.
    int coset_length(ElementId x) const noexcept { return weyl_->length(coset_of_[x]); }
    std::size_t coset_size() const noexcept { return weyl_->size() / cosets_.size(); }

    /// Smallest id in W_A x W_D, the orbit deciding x under both invariances.
    ElementId orbit_of(ElementId x) const noexcept { return orbit_of_[x]; }
    const std::vector<ElementId>& orbit_members(ElementId rep) const;

    std::string describe() const;

private:
    friend FlagConfiguration build_flag_configuration(std::shared_ptr<const WeylGroup>, Theta, Theta, bool);
    FlagConfiguration() = default;

    std::shared_ptr<const WeylGroup> weyl_;
    Theta theta_a_;
    Theta theta_d_;
    bool symmetric_ = true;
    int n_ = 0;
    std::vector<ElementId> cosets_;
    std::vector<ElementId> coset_of_;
    std::vector<ElementId> orbit_of_;
    std::vector<std::vector<ElementId>> orbit_members_;  // indexed by element id; non-empty for representatives
};

/// Builds cosets, Schubert dimensions and N. Throws ValidationError for
/// out-of-range or improper theta, and for a theta_A that is not symmetric
/// unless allow_nonsymmetric is set.
FlagConfiguration build_flag_configuration(std::shared_ptr<const WeylGroup> w, Theta theta_a, Theta theta_d,
                                           bool allow_nonsymmetric = false);

int flag_dimension(const FlagConfiguration& fc);

}  // namespace anosovkit
