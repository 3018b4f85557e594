#include "anosovkit/homalg.hpp"

#include <algorithm>
#include <map>

#include "anosovkit/errors.hpp"

namespace anosovkit {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::string at(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

}  // namespace

DoubleComplex::DoubleComplex(int width, int height, std::vector<std::vector<int>> dims)
    : width_(width), height_(height), dims_(std::move(dims)) {
    if (width < 0 || height < 0) throw ValidationError("double complex extents must be nonnegative");
    if (dims_.size() != idx(width)) throw ValidationError("dims must have `width` rows");
    for (const auto& col : dims_) {
        if (col.size() != idx(height)) throw ValidationError("dims rows must have `height` entries");
        for (int d : col)
            if (d < 0) throw ValidationError("dimensions must be nonnegative");
    }
    dh_.assign(idx(std::max(width - 1, 0)), std::vector<Matrix>(idx(height)));
    dv_.assign(idx(width), std::vector<Matrix>(idx(std::max(height - 1, 0))));
    for (int p = 0; p + 1 < width; ++p)
        for (int q = 0; q < height; ++q) dh_[idx(p)][idx(q)] = Matrix(idx(dim(p + 1, q)), idx(dim(p, q)));
    for (int p = 0; p < width; ++p)
        for (int q = 0; q + 1 < height; ++q) dv_[idx(p)][idx(q)] = Matrix(idx(dim(p, q + 1)), idx(dim(p, q)));
}

int DoubleComplex::dim(int p, int q) const {
    if (p < 0 || q < 0 || p >= width_ || q >= height_) return 0;
    return dims_[idx(p)][idx(q)];
}

void DoubleComplex::set_d_h(int p, int q, Matrix m) {
    if (p < 0 || p + 1 >= width_ || q < 0 || q >= height_) throw ValidationError("d_h" + at(p, q) + " outside the grid");
    if (m.rows() != idx(dim(p + 1, q)) || m.cols() != idx(dim(p, q)))
        throw ValidationError("d_h" + at(p, q) + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              ", expected " + std::to_string(dim(p + 1, q)) + "x" + std::to_string(dim(p, q)));
    dh_[idx(p)][idx(q)] = std::move(m);
}

void DoubleComplex::set_d_v(int p, int q, Matrix m) {
    if (p < 0 || p >= width_ || q < 0 || q + 1 >= height_) throw ValidationError("d_v" + at(p, q) + " outside the grid");
    if (m.rows() != idx(dim(p, q + 1)) || m.cols() != idx(dim(p, q)))
        throw ValidationError("d_v" + at(p, q) + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              ", expected " + std::to_string(dim(p, q + 1)) + "x" + std::to_string(dim(p, q)));
    dv_[idx(p)][idx(q)] = std::move(m);
}

DoubleComplex DoubleComplex::transpose() const {
    std::vector<std::vector<int>> d(idx(height_), std::vector<int>(idx(width_)));
    for (int p = 0; p < width_; ++p)
        for (int q = 0; q < height_; ++q) d[idx(q)][idx(p)] = dim(p, q);
    DoubleComplex t(height_, width_, std::move(d));
    for (int p = 0; p < width_; ++p)
        for (int q = 0; q < height_; ++q) {
            if (q + 1 < height_) t.set_d_h(q, p, d_v(p, q));
            if (p + 1 < width_) t.set_d_v(q, p, d_h(p, q));
        }
    return t;
}

ValidationReport validate(const DoubleComplex& dc) {
    auto fail = [](std::string kind, int p, int q, std::string msg) {
        return ValidationReport{false, std::move(kind), p, q, std::move(msg)};
    };
    const int w = dc.width(), h = dc.height();
    for (int p = 0; p < w; ++p)
        for (int q = 0; q < h; ++q) {
            if (p + 1 < w && (dc.d_h(p, q).rows() != idx(dc.dim(p + 1, q)) || dc.d_h(p, q).cols() != idx(dc.dim(p, q))))
                return fail("shape", p, q, "d_h" + at(p, q) + " has the wrong shape");
            if (q + 1 < h && (dc.d_v(p, q).rows() != idx(dc.dim(p, q + 1)) || dc.d_v(p, q).cols() != idx(dc.dim(p, q))))
                return fail("shape", p, q, "d_v" + at(p, q) + " has the wrong shape");
        }
    for (int p = 0; p < w; ++p)
        for (int q = 0; q < h; ++q) {
            if (p + 2 < w && !(dc.d_h(p + 1, q) * dc.d_h(p, q)).is_zero())
                return fail("d_h^2", p, q, "d_h o d_h != 0 starting at " + at(p, q));
            if (q + 2 < h && !(dc.d_v(p, q + 1) * dc.d_v(p, q)).is_zero())
                return fail("d_v^2", p, q, "d_v o d_v != 0 starting at " + at(p, q));
            if (p + 1 < w && q + 1 < h && !(dc.d_v(p + 1, q) * dc.d_h(p, q) == dc.d_h(p, q + 1) * dc.d_v(p, q)))
                return fail("commute", p, q, "square at " + at(p, q) + " does not commute");
        }
    return {};
}

void require_valid(const DoubleComplex& dc) {
    auto r = validate(dc);
    if (!r.ok) throw ValidationError("invalid double complex: " + r.message);
}

int total_degree_count(const DoubleComplex& dc) {
    return dc.width() && dc.height() ? dc.width() + dc.height() - 1 : 0;
}

namespace {

struct Block {
    int p, q;
    std::size_t offset, dim;
};

std::vector<Block> blocks(const DoubleComplex& dc, int n) {
    std::vector<Block> out;
    std::size_t off = 0;
    for (int p = std::max(0, n - dc.height() + 1); p <= std::min(n, dc.width() - 1); ++p) {
        int q = n - p;
        out.push_back({p, q, off, idx(dc.dim(p, q))});
        off += idx(dc.dim(p, q));
    }
    return out;
}

std::size_t block_total(const std::vector<Block>& b) { return b.empty() ? 0 : b.back().offset + b.back().dim; }

}  // namespace

int total_dimension(const DoubleComplex& dc, int n) {
    if (n < 0) return 0;
    return static_cast<int>(block_total(blocks(dc, n)));
}

Matrix total_differential(const DoubleComplex& dc, int n) {
    auto src = blocks(dc, n);
    auto dst = blocks(dc, n + 1);
    Matrix d(block_total(dst), block_total(src));
    auto find = [&](int p, int q) -> const Block* {
        for (const auto& b : dst)
            if (b.p == p && b.q == q) return &b;
        return nullptr;
    };
    for (const auto& b : src) {
        if (const Block* t = find(b.p + 1, b.q); t && b.p + 1 < dc.width()) d.set_block(t->offset, b.offset, dc.d_h(b.p, b.q));
        if (const Block* t = find(b.p, b.q + 1); t && b.q + 1 < dc.height()) {
            Matrix v = dc.d_v(b.p, b.q);
            d.set_block(t->offset, b.offset, b.p % 2 ? v.scaled(-1) : v);
        }
    }
    return d;
}

int total_cohomology(const DoubleComplex& dc, int n) {
    require_valid(dc);
    int dim = total_dimension(dc, n);
    if (dim == 0) return 0;
    int out = static_cast<int>(rank(total_differential(dc, n)));
    int in = n > 0 ? static_cast<int>(rank(total_differential(dc, n - 1))) : 0;
    return dim - out - in;
}

Direction parse_direction(std::string_view text) {
    if (text == "vertical" || text == "v") return Direction::Vertical;
    if (text == "horizontal" || text == "h") return Direction::Horizontal;
    throw ParseError("unknown direction '" + std::string(text) + "' (expected vertical or horizontal)");
}

std::string to_string(Direction d) { return d == Direction::Vertical ? "vertical" : "horizontal"; }

std::pair<int, int> SpectralPage::target(int p, int q) const {
    return direction == Direction::Vertical ? std::pair{p + r, q - r + 1} : std::pair{p - r + 1, q + r};
}

int stable_page(const DoubleComplex& dc) { return std::max(dc.width(), dc.height()) + 1; }

namespace {

// Spectral sequence of the filtration of Tot by p (vertical) or q (horizontal):
// E_r^{s,n} = Z_r^s / (Z_{r-1}^{s+1} + D Z_{r-1}^{s-r+1}), Z_r^s = F^s n D^{-1} F^{s+r}.
class FilteredTotal {
public:
    FilteredTotal(const DoubleComplex& dc, Direction dir) : dc_(dc), dir_(dir) {
        degrees_ = total_degree_count(dc);
        for (int n = 0; n < degrees_; ++n) {
            blocks_.push_back(blocks(dc, n));
            diff_.push_back(total_differential(dc, n));
        }
    }

    int degrees() const { return degrees_; }
    int filt(int p, int q) const { return dir_ == Direction::Vertical ? p : q; }
    int dim(int n) const { return n >= 0 && n < degrees_ ? static_cast<int>(block_total(blocks_[idx(n)])) : 0; }
    const Matrix& D(int n) const { return diff_[idx(n)]; }

    std::pair<int, int> grid(int s, int n) const {
        return dir_ == Direction::Vertical ? std::pair{s, n - s} : std::pair{n - s, s};
    }
    std::pair<int, int> filtration_degree(int p, int q) const { return {filt(p, q), p + q}; }

    // Coordinates of Tot^n lying in F^s (or outside it).
    std::vector<std::size_t> coords(int n, int s, bool inside) const {
        std::vector<std::size_t> out;
        if (n < 0 || n >= degrees_) return out;
        for (const auto& b : blocks_[idx(n)])
            if ((filt(b.p, b.q) >= s) == inside)
                for (std::size_t k = 0; k < b.dim; ++k) out.push_back(b.offset + k);
        return out;
    }

    Matrix inclusion(int n, const std::vector<std::size_t>& cs) const {
        Matrix e(idx(dim(n)), cs.size());
        for (std::size_t k = 0; k < cs.size(); ++k) e(cs[k], k) = 1;
        return e;
    }

    // Basis (columns in Tot^n) of Z_r^s; for r <= 0 this is F^s.
    Matrix Z(int s, int n, int r) const {
        auto key = std::tuple{s, n, std::max(r, 0)};
        if (auto it = z_cache_.find(key); it != z_cache_.end()) return it->second;
        auto fs = coords(n, s, true);
        Matrix e = inclusion(n, fs);
        Matrix out = e;
        if (r > 0 && n + 1 < degrees_ && !fs.empty()) {
            auto outside = coords(n + 1, s + r, false);
            if (!outside.empty()) {
                Matrix restricted = D(n).select_rows(outside).select_cols(fs);
                out = e * nullspace(restricted);
            }
        }
        z_cache_.emplace(key, out);
        return out;
    }

    struct Space {
        Matrix den;
        Matrix reps;
    };

    Space space(int s, int n, int r) const {
        auto key = std::tuple{s, n, r};
        if (auto it = space_cache_.find(key); it != space_cache_.end()) return it->second;
        Matrix num = Z(s, n, r);
        Matrix den = Z(s + 1, n, r - 1);
        if (n > 0) {
            Matrix src = Z(s - r + 1, n - 1, r - 1);
            if (src.cols()) den = den.hconcat(D(n - 1) * src);
        }
        Space sp{den, complement_columns(den, num)};
        space_cache_.emplace(key, sp);
        return sp;
    }

private:
    const DoubleComplex& dc_;
    Direction dir_;
    int degrees_ = 0;
    std::vector<std::vector<Block>> blocks_;
    std::vector<Matrix> diff_;
    mutable std::map<std::tuple<int, int, int>, Matrix> z_cache_;
    mutable std::map<std::tuple<int, int, int>, Space> space_cache_;
};

Matrix classes_of(const Matrix& vectors, const Matrix& den, const Matrix& reps) {
    Matrix out(reps.cols(), vectors.cols());
    for (std::size_t c = 0; c < vectors.cols(); ++c) {
        auto coords = coordinates_modulo(den, reps, vectors.column(c));
        for (std::size_t k = 0; k < coords.size(); ++k) out(k, c) = coords[k];
    }
    return out;
}

struct Cohomology1 {
    Matrix boundaries;
    Matrix reps;
};

Cohomology1 first_cohomology(const FilteredTotal& ft) {
    Matrix cocycles = nullspace(ft.D(1));
    Matrix bounds = ft.dim(0) ? ft.D(0) : Matrix(idx(ft.dim(1)), 0);
    return {bounds, complement_columns(bounds, cocycles)};
}

}  // namespace

SpectralPage spectral_page(const DoubleComplex& dc, Direction dir, int r) {
    if (r < 0) throw ValidationError("page index must be nonnegative");
    require_valid(dc);
    FilteredTotal ft(dc, dir);
    SpectralPage page;
    page.direction = dir;
    page.r = r;
    page.width = dc.width();
    page.height = dc.height();
    page.dims.assign(idx(dc.width()), std::vector<int>(idx(dc.height()), 0));
    page.maps.assign(idx(dc.width()), std::vector<Matrix>(idx(dc.height())));
    for (int p = 0; p < dc.width(); ++p)
        for (int q = 0; q < dc.height(); ++q) {
            auto [s, n] = ft.filtration_degree(p, q);
            page.dims[idx(p)][idx(q)] = static_cast<int>(ft.space(s, n, r).reps.cols());
        }
    for (int p = 0; p < dc.width(); ++p)
        for (int q = 0; q < dc.height(); ++q) {
            const std::size_t src_dim = idx(page.dims[idx(p)][idx(q)]);
            auto [tp, tq] = page.target(p, q);
            if (!page.in_grid(tp, tq)) {
                page.maps[idx(p)][idx(q)] = Matrix(0, src_dim);
                continue;
            }
            auto [s, n] = ft.filtration_degree(p, q);
            auto [ts, tn] = ft.filtration_degree(tp, tq);
            const auto& src = ft.space(s, n, r);
            const auto& dst = ft.space(ts, tn, r);
            if (src_dim == 0 || dst.reps.cols() == 0) {
                page.maps[idx(p)][idx(q)] = Matrix(dst.reps.cols(), src_dim);
                continue;
            }
            page.maps[idx(p)][idx(q)] = classes_of(ft.D(n) * src.reps, dst.den, dst.reps);
        }
    return page;
}

SpectralPage limit_page(const DoubleComplex& dc, Direction dir) { return spectral_page(dc, dir, stable_page(dc)); }

LdtSequence ldt(const DoubleComplex& dc, Direction dir) {
    require_valid(dc);
    FilteredTotal ft(dc, dir);
    LdtSequence seq;
    seq.direction = dir;
    auto e10 = ft.space(1, 1, 2);
    auto e01 = ft.space(0, 1, 2);
    Cohomology1 h = ft.degrees() > 1 ? first_cohomology(ft) : Cohomology1{};
    seq.dim_e10 = static_cast<int>(e10.reps.cols());
    seq.dim_e01 = static_cast<int>(e01.reps.cols());
    seq.dim_h1 = static_cast<int>(h.reps.cols());
    seq.alpha = seq.dim_e10 && seq.dim_h1 ? classes_of(e10.reps, h.boundaries, h.reps)
                                          : Matrix(idx(seq.dim_h1), idx(seq.dim_e10));
    seq.beta = seq.dim_h1 && seq.dim_e01 ? classes_of(h.reps, e01.den, e01.reps)
                                         : Matrix(idx(seq.dim_e01), idx(seq.dim_h1));
    const auto ra = rank(seq.alpha);
    const auto rb = rank(seq.beta);
    seq.composite_zero = (seq.beta * seq.alpha).is_zero();
    seq.injective = ra == idx(seq.dim_e10);
    seq.exact_at_h1 = seq.composite_zero && ra == idx(seq.dim_h1) - rb;
    return seq;
}

ValidationReport validate_morphism(const DoubleComplex& x, const DoubleComplex& y, const DoubleComplexMorphism& f) {
    auto fail = [](std::string kind, int p, int q, std::string msg) {
        return ValidationReport{false, std::move(kind), p, q, std::move(msg)};
    };
    if (x.width() != y.width() || x.height() != y.height()) return fail("shape", -1, -1, "grid extents differ");
    if (f.maps.size() != idx(x.width())) return fail("shape", -1, -1, "morphism has the wrong number of columns");
    for (int p = 0; p < x.width(); ++p) {
        if (f.maps[idx(p)].size() != idx(x.height())) return fail("shape", p, -1, "morphism column has the wrong height");
        for (int q = 0; q < x.height(); ++q) {
            const Matrix& m = f.maps[idx(p)][idx(q)];
            if (m.rows() != idx(y.dim(p, q)) || m.cols() != idx(x.dim(p, q)))
                return fail("shape", p, q, "f" + at(p, q) + " has the wrong shape");
        }
    }
    for (int p = 0; p < x.width(); ++p)
        for (int q = 0; q < x.height(); ++q) {
            const Matrix& m = f.maps[idx(p)][idx(q)];
            if (p + 1 < x.width() && !(f.maps[idx(p + 1)][idx(q)] * x.d_h(p, q) == y.d_h(p, q) * m))
                return fail("commute", p, q, "f does not commute with d_h at " + at(p, q));
            if (q + 1 < x.height() && !(f.maps[idx(p)][idx(q + 1)] * x.d_v(p, q) == y.d_v(p, q) * m))
                return fail("commute", p, q, "f does not commute with d_v at " + at(p, q));
        }
    return {};
}

namespace {

Matrix total_map(const DoubleComplex& x, const DoubleComplex& y, const DoubleComplexMorphism& f, int n) {
    auto bx = blocks(x, n);
    auto by = blocks(y, n);
    Matrix m(block_total(by), block_total(bx));
    for (std::size_t k = 0; k < bx.size(); ++k) m.set_block(by[k].offset, bx[k].offset, f.maps[idx(bx[k].p)][idx(bx[k].q)]);
    return m;
}

}  // namespace

LdtMorphism ldt_morphism(const DoubleComplex& x, const DoubleComplex& y, const DoubleComplexMorphism& f, Direction dir) {
    require_valid(x);
    require_valid(y);
    auto rep = validate_morphism(x, y, f);
    if (!rep.ok) throw ValidationError("invalid morphism: " + rep.message);
    LdtMorphism out;
    auto lx = ldt(x, dir);
    auto ly = ldt(y, dir);
    if (total_degree_count(x) < 2) {
        out.commutes = true;
        return out;
    }
    FilteredTotal fx(x, dir), fy(y, dir);
    Matrix f1 = total_map(x, y, f, 1);
    auto induced = [&](const Matrix& src_reps, const Matrix& den, const Matrix& reps) {
        if (src_reps.cols() == 0 || reps.cols() == 0) return Matrix(reps.cols(), src_reps.cols());
        return classes_of(f1 * src_reps, den, reps);
    };
    auto hx = first_cohomology(fx);
    auto hy = first_cohomology(fy);
    out.on_e10 = induced(fx.space(1, 1, 2).reps, fy.space(1, 1, 2).den, fy.space(1, 1, 2).reps);
    out.on_h1 = induced(hx.reps, hy.boundaries, hy.reps);
    out.on_e01 = induced(fx.space(0, 1, 2).reps, fy.space(0, 1, 2).den, fy.space(0, 1, 2).reps);
    out.commutes = ly.alpha * out.on_e10 == out.on_h1 * lx.alpha && ly.beta * out.on_h1 == out.on_e01 * lx.beta;
    return out;
}

DoubleComplex direct_sum(const DoubleComplex& x, const DoubleComplex& y) {
    if (x.width() != y.width() || x.height() != y.height()) throw ValidationError("direct sum needs equal grid extents");
    std::vector<std::vector<int>> d = x.dims();
    for (int p = 0; p < x.width(); ++p)
        for (int q = 0; q < x.height(); ++q) d[idx(p)][idx(q)] += y.dim(p, q);
    DoubleComplex s(x.width(), x.height(), std::move(d));
    auto diag = [](const Matrix& a, const Matrix& b) {
        Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
        m.set_block(0, 0, a);
        m.set_block(a.rows(), a.cols(), b);
        return m;
    };
    for (int p = 0; p < x.width(); ++p)
        for (int q = 0; q < x.height(); ++q) {
            if (p + 1 < x.width()) s.set_d_h(p, q, diag(x.d_h(p, q), y.d_h(p, q)));
            if (q + 1 < x.height()) s.set_d_v(p, q, diag(x.d_v(p, q), y.d_v(p, q)));
        }
    return s;
}

std::pair<DoubleComplex, DoubleComplexMorphism> random_isomorph(const DoubleComplex& x, std::mt19937_64& rng,
                                                                int coefficient_bound) {
    const int w = x.width(), h = x.height();
    std::vector<std::vector<std::pair<Matrix, Matrix>>> g(idx(w), std::vector<std::pair<Matrix, Matrix>>(idx(h)));
    for (int p = 0; p < w; ++p)
        for (int q = 0; q < h; ++q) g[idx(p)][idx(q)] = random_invertible(rng, idx(x.dim(p, q)), coefficient_bound);
    DoubleComplex y(w, h, x.dims());
    DoubleComplexMorphism f;
    f.maps.assign(idx(w), std::vector<Matrix>(idx(h)));
    for (int p = 0; p < w; ++p)
        for (int q = 0; q < h; ++q) {
            const auto& [gp, gi] = g[idx(p)][idx(q)];
            f.maps[idx(p)][idx(q)] = gp;
            if (p + 1 < w) y.set_d_h(p, q, g[idx(p + 1)][idx(q)].first * x.d_h(p, q) * gi);
            if (q + 1 < h) y.set_d_v(p, q, g[idx(p)][idx(q + 1)].first * x.d_v(p, q) * gi);
        }
    return {std::move(y), std::move(f)};
}

namespace {

// Random cochain complex of the given length: intervals k -> k+1 with
// isomorphisms and isolated points, mixed by basis changes.
struct Cochain {
    std::vector<int> dims;
    std::vector<Matrix> d;  // d[i]: dims[i] -> dims[i+1]
};

Cochain random_cochain(std::mt19937_64& rng, int length, int coefficient_bound) {
    Cochain c;
    c.dims.assign(idx(length), 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> links(idx(std::max(length - 1, 0)));
    std::uniform_int_distribution<int> pos(0, length - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> val(1, 3);
    const int pieces = 1 + std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < pieces; ++k) {
        int i = pos(rng);
        if (kind(rng) != 0 && i + 1 < length) {
            links[idx(i)].emplace_back(idx(c.dims[idx(i)]), idx(c.dims[idx(i + 1)]));
            ++c.dims[idx(i)];
            ++c.dims[idx(i + 1)];
        } else {
            ++c.dims[idx(i)];
        }
    }
    for (int i = 0; i + 1 < length; ++i) {
        Matrix m(idx(c.dims[idx(i + 1)]), idx(c.dims[idx(i)]));
        for (auto [s, t] : links[idx(i)]) m(t, s) = val(rng);
        c.d.push_back(std::move(m));
    }
    std::vector<std::pair<Matrix, Matrix>> g;
    for (int i = 0; i < length; ++i) g.push_back(random_invertible(rng, idx(c.dims[idx(i)]), coefficient_bound));
    for (int i = 0; i + 1 < length; ++i) c.d[idx(i)] = g[idx(i + 1)].first * c.d[idx(i)] * g[idx(i)].second;
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)))
                for (std::size_t k = 0; k < b.rows(); ++k)
                    for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
}

// Builds a complex on the full grid from 1-dim nodes and scalar arrows.
struct Sparse {
    std::vector<std::pair<int, int>> nodes;
    std::vector<std::tuple<std::size_t, std::size_t, int>> arrows;  // source node, target node, coefficient
};

DoubleComplex from_sparse(int w, int h, const Sparse& s) {
    std::vector<std::vector<int>> dims(idx(w), std::vector<int>(idx(h), 0));
    std::vector<std::size_t> local(s.nodes.size());
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
        auto [p, q] = s.nodes[k];
        local[k] = idx(dims[idx(p)][idx(q)]++);
    }
    DoubleComplex dc(w, h, dims);
    std::map<std::pair<int, int>, Matrix> dh, dv;
    for (auto [a, b, c] : s.arrows) {
        auto [p, q] = s.nodes[a];
        auto [tp, tq] = s.nodes[b];
        auto& store = tp == p + 1 ? dh : dv;
        auto it = store.find({p, q});
        if (it == store.end()) it = store.emplace(std::pair{p, q}, Matrix(idx(dims[idx(tp)][idx(tq)]), idx(dims[idx(p)][idx(q)]))).first;
        it->second(local[b], local[a]) = c;
    }
    for (auto& [k, m] : dh) dc.set_d_h(k.first, k.second, std::move(m));
    for (auto& [k, m] : dv) dc.set_d_v(k.first, k.second, std::move(m));
    return dc;
}

DoubleComplex random_piece(std::mt19937_64& rng, int w, int h, int coefficient_bound) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coef = [&] {
        int c = uni(1, 3);
        return uni(0, 1) ? c : -c;
    };
    Sparse s;
    switch (uni(0, 4)) {
        case 0: {  // point
            s.nodes.push_back({uni(0, w - 1), uni(0, h - 1)});
            break;
        }
        case 1: {  // arrow, horizontal or vertical
            bool horiz = w > 1 && (h == 1 || uni(0, 1));
            if (!horiz && h == 1) {
                s.nodes.push_back({uni(0, w - 1), 0});
                break;
            }
            int p = uni(0, w - 1 - (horiz ? 1 : 0)), q = uni(0, h - 1 - (horiz ? 0 : 1));
            s.nodes = {{p, q}, {horiz ? p + 1 : p, horiz ? q : q + 1}};
            s.arrows.emplace_back(0, 1, coef());
            break;
        }
        case 2: {  // unit square
            if (w < 2 || h < 2) return random_piece(rng, w, h, coefficient_bound);
            int p = uni(0, w - 2), q = uni(0, h - 2);
            int a = coef(), b = coef(), c = uni(0, 1) ? 1 : -1;
            s.nodes = {{p, q}, {p + 1, q}, {p, q + 1}, {p + 1, q + 1}};
            s.arrows = {{0, 1, a}, {0, 2, c}, {1, 3, b}, {2, 3, a * b * c}};
            break;
        }
        case 3: {  // zigzag between antidiagonals n and n+1
            int n = uni(0, w + h - 3 > 0 ? w + h - 3 : 0);
            std::vector<int> sources;
            for (int a = std::max(0, n - h + 1); a <= std::min(n, w - 1); ++a) sources.push_back(a);
            if (sources.empty()) return random_piece(rng, w, h, coefficient_bound);
            int lo = uni(0, static_cast<int>(sources.size()) - 1);
            int hi = uni(lo, static_cast<int>(sources.size()) - 1);
            std::map<std::pair<int, int>, std::size_t> sink_id;
            std::vector<std::pair<int, int>> sinks;
            for (int k = lo; k <= hi; ++k) {
                int a = sources[idx(k)];
                for (auto t : {std::pair{a, n - a + 1}, std::pair{a + 1, n - a}})
                    if (t.first < w && t.second < h && !sink_id.count(t)) sink_id[t] = 0, sinks.push_back(t);
            }
            std::sort(sinks.begin(), sinks.end());
            if (sinks.size() > 1 && uni(0, 1)) sinks.erase(sinks.begin());
            if (sinks.size() > 1 && uni(0, 1)) sinks.pop_back();
            sink_id.clear();
            for (int k = lo; k <= hi; ++k) s.nodes.push_back({sources[idx(k)], n - sources[idx(k)]});
            for (auto t : sinks) sink_id[t] = s.nodes.size(), s.nodes.push_back(t);
            for (std::size_t k = 0; k < idx(hi - lo + 1); ++k) {
                auto [a, b] = s.nodes[k];
                for (auto t : {std::pair{a, b + 1}, std::pair{a + 1, b}})
                    if (auto it = sink_id.find(t); it != sink_id.end()) s.arrows.emplace_back(k, it->second, coef());
            }
            break;
        }
        default: {  // tensor product of two cochain complexes
            int la = uni(1, std::min(w, 3)), lb = uni(1, std::min(h, 3));
            int p0 = uni(0, w - la), q0 = uni(0, h - lb);
            Cochain a = random_cochain(rng, la, coefficient_bound);
            Cochain b = random_cochain(rng, lb, coefficient_bound);
            std::vector<std::vector<int>> dims(idx(w), std::vector<int>(idx(h), 0));
            for (int i = 0; i < la; ++i)
                for (int j = 0; j < lb; ++j) dims[idx(p0 + i)][idx(q0 + j)] = a.dims[idx(i)] * b.dims[idx(j)];
            DoubleComplex dc(w, h, dims);
            for (int i = 0; i < la; ++i)
                for (int j = 0; j < lb; ++j) {
                    if (i + 1 < la) dc.set_d_h(p0 + i, q0 + j, kron(a.d[idx(i)], Matrix::identity(idx(b.dims[idx(j)]))));
                    if (j + 1 < lb) dc.set_d_v(p0 + i, q0 + j, kron(Matrix::identity(idx(a.dims[idx(i)])), b.d[idx(j)]));
                }
            return dc;
        }
    }
    return from_sparse(w, h, s);
}

}  // namespace

DoubleComplex random_double_complex(std::mt19937_64& rng, const RandomComplexOptions& opts) {
    if (opts.max_width < 1 || opts.max_height < 1) throw ValidationError("random complex needs a nonempty grid");
    const int w = std::uniform_int_distribution<int>(1, opts.max_width)(rng);
    const int h = std::uniform_int_distribution<int>(1, opts.max_height)(rng);
    DoubleComplex acc(w, h, std::vector<std::vector<int>>(idx(w), std::vector<int>(idx(h), 0)));
    for (int k = 0; k < opts.pieces; ++k) {
        DoubleComplex piece = random_piece(rng, w, h, opts.coefficient_bound);
        bool fits = true;
        for (int p = 0; p < w; ++p)
            for (int q = 0; q < h; ++q)
                if (acc.dim(p, q) + piece.dim(p, q) > opts.max_dim) fits = false;
        if (fits) acc = direct_sum(acc, piece);
    }
    return random_isomorph(acc, rng, opts.coefficient_bound).first;
}

}  // namespace anosovkit
