#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anosovkit/linalg.hpp"

namespace anosovkit {

/// Finite first-quadrant double complex over Q. Spaces C^{p,q} for
/// 0 <= p < width, 0 <= q < height; d_h(p,q): C^{p,q} -> C^{p+1,q} exists
/// for p < width-1, d_v(p,q): C^{p,q} -> C^{p,q+1} for q < height-1.
/// Squares commute; the total differential is d_h + (-1)^p d_v.
class DoubleComplex {
public:
    DoubleComplex() = default;
    /// All-zero maps between spaces of the given dims (dims[p][q]).
    DoubleComplex(int width, int height, std::vector<std::vector<int>> dims);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int dim(int p, int q) const;
    const std::vector<std::vector<int>>& dims() const noexcept { return dims_; }

    const Matrix& d_h(int p, int q) const { return dh_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
    const Matrix& d_v(int p, int q) const { return dv_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
    /// Shapes are checked against dims; throws ValidationError on mismatch.
    void set_d_h(int p, int q, Matrix m);
    void set_d_v(int p, int q, Matrix m);

    /// C'^{q,p} = C^{p,q} with the two differentials exchanged.
    DoubleComplex transpose() const;

    friend bool operator==(const DoubleComplex&, const DoubleComplex&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::vector<int>> dims_;
    std::vector<std::vector<Matrix>> dh_;
    std::vector<std::vector<Matrix>> dv_;
};

struct ValidationReport {
    bool ok = true;
    /// "d_h^2", "d_v^2", "commute" or "shape"; empty when ok.
    std::string kind;
    int p = -1;
    int q = -1;
    std::string message;
};

ValidationReport validate(const DoubleComplex& dc);
/// Throws ValidationError carrying the report message when invalid.
void require_valid(const DoubleComplex& dc);

/// Total degree n ranges over 0 .. width + height - 2.
int total_degree_count(const DoubleComplex& dc);
int total_dimension(const DoubleComplex& dc, int n);
/// D: Tot^n -> Tot^{n+1}; blocks ordered by increasing p.
Matrix total_differential(const DoubleComplex& dc, int n);
int total_cohomology(const DoubleComplex& dc, int n);

enum class Direction { Vertical, Horizontal };
Direction parse_direction(std::string_view text);
std::string to_string(Direction d);

/// E_r page of the spectral sequence of the column filtration (vertical,
/// d_r of degree (r, 1-r)) or the row filtration (horizontal, degree (1-r, r)).
struct SpectralPage {
    Direction direction = Direction::Vertical;
    int r = 0;
    int width = 0;
    int height = 0;
    std::vector<std::vector<int>> dims;
    /// maps[p][q]: E_r^{p,q} -> E_r at the target position; zero rows when
    /// the target lies outside the grid.
    std::vector<std::vector<Matrix>> maps;

    /// Target position of the differential leaving (p, q).
    std::pair<int, int> target(int p, int q) const;
    bool in_grid(int p, int q) const { return p >= 0 && q >= 0 && p < width && q < height; }
};

/// Page index after which every differential leaves the grid.
int stable_page(const DoubleComplex& dc);

SpectralPage spectral_page(const DoubleComplex& dc, Direction dir, int r);
/// E_r with r = stable_page(dc).
SpectralPage limit_page(const DoubleComplex& dc, Direction dir);

/// 0 -> E_2^{1,0} -alpha-> H^1 -beta-> E_2^{0,1}, where the superscripts
/// are (filtration degree, complementary degree): for the vertical direction
/// these are the grid positions (1,0) and (0,1), for the horizontal one
/// (0,1) and (1,0).
struct LdtSequence {
    Direction direction = Direction::Vertical;
    int dim_e10 = 0;
    int dim_h1 = 0;
    int dim_e01 = 0;
    Matrix alpha;  ///< dim_h1 x dim_e10
    Matrix beta;   ///< dim_e01 x dim_h1
    bool composite_zero = false;
    bool injective = false;
    bool exact_at_h1 = false;

    bool exact() const { return composite_zero && injective && exact_at_h1; }
};

LdtSequence ldt(const DoubleComplex& dc, Direction dir);

/// Maps f(p,q): X^{p,q} -> Y^{p,q} commuting with both differentials.
struct DoubleComplexMorphism {
    std::vector<std::vector<Matrix>> maps;
};

/// Checks shapes and f d = d f for both differentials.
ValidationReport validate_morphism(const DoubleComplex& x, const DoubleComplex& y, const DoubleComplexMorphism& f);

/// Maps induced on the three LDT terms and whether both squares commute.
struct LdtMorphism {
    Matrix on_e10;
    Matrix on_h1;
    Matrix on_e01;
    bool commutes = false;
};

LdtMorphism ldt_morphism(const DoubleComplex& x, const DoubleComplex& y, const DoubleComplexMorphism& f, Direction dir);

/// X (+) Y, blockwise.
DoubleComplex direct_sum(const DoubleComplex& x, const DoubleComplex& y);

struct RandomComplexOptions {
    int max_width = 16;
    int max_height = 16;
    int max_dim = 64;
    /// Number of building blocks attempted.
    int pieces = 6;
    /// Basis changes use elementary operations with coefficients in [-c, c].
    int coefficient_bound = 2;
};

/// Valid-by-construction complex: a direct sum of unit squares, zigzags,
/// points and tensor products of cochain complexes, conjugated by random
/// invertible basis changes in each space.
DoubleComplex random_double_complex(std::mt19937_64& rng, const RandomComplexOptions& opts = {});

/// Y^{p,q} = g(p,q) X^{p,q}; returns Y together with the isomorphism X -> Y.
std::pair<DoubleComplex, DoubleComplexMorphism> random_isomorph(const DoubleComplex& x, std::mt19937_64& rng,
                                                                int coefficient_bound = 2);

}  // namespace anosovkit
