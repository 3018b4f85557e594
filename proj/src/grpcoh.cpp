#include "anosovkit/grpcoh.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "anosovkit/errors.hpp"

namespace anosovkit {

Word free_reduce(const Word& w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

GroupPresentation make_presentation(int generators, const std::vector<Word>& relators) {
    if (generators < 0) throw ValidationError("generator count must be nonnegative");
    GroupPresentation p;
    p.generators = generators;
    for (std::size_t j = 0; j < relators.size(); ++j) {
        for (int x : relators[j])
            if (x == 0 || std::abs(x) > generators)
                throw ValidationError("relator " + std::to_string(j + 1) + " uses generator " + std::to_string(x) +
                                      " outside 1.." + std::to_string(generators));
        Word r = free_reduce(relators[j]);
        if (!r.empty()) p.relators.push_back(std::move(r));
    }
    return p;
}

GroupPresentation parse_presentation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<int> count;
    std::vector<Word> relators;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<int> nums;
        std::string tok;
        while (ls >> tok) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw ParseError("presentation line " + std::to_string(lineno) + ": bad token '" + tok + "'");
            nums.push_back(v);
        }
        if (nums.empty()) continue;
        if (!count) {
            if (nums.size() != 1) throw ParseError("presentation: first line must hold only the generator count");
            count = nums[0];
            continue;
        }
        relators.push_back(std::move(nums));
    }
    if (!count) throw ParseError("presentation: missing generator count");
    return make_presentation(*count, relators);
}

std::string format_presentation(const GroupPresentation& p) {
    std::string s = std::to_string(p.generators) + "\n";
    for (const auto& r : p.relators) {
        for (std::size_t k = 0; k < r.size(); ++k) s += (k ? " " : "") + std::to_string(r[k]);
        s += "\n";
    }
    return s;
}

GroupPresentation surface_group_presentation(int genus) {
    if (genus < 1) throw ValidationError("surface genus must be at least 1");
    Word r;
    for (int h = 0; h < genus; ++h) {
        int a = 2 * h + 1, b = 2 * h + 2;
        r.insert(r.end(), {a, b, -a, -b});
    }
    return make_presentation(2 * genus, {r});
}

GroupPresentation free_group_presentation(int rank) { return make_presentation(rank, {}); }

namespace {

void check_shapes(const MatrixRep& rep, int generators) {
    if (rep.dimension < 0) throw ValidationError("module dimension must be nonnegative");
    if (static_cast<int>(rep.matrices.size()) != generators)
        throw ValidationError("representation has " + std::to_string(rep.matrices.size()) + " matrices for " +
                              std::to_string(generators) + " generators");
    for (std::size_t i = 0; i < rep.matrices.size(); ++i) {
        const auto& m = rep.matrices[i];
        if (m.rows() != static_cast<std::size_t>(rep.dimension) || m.cols() != static_cast<std::size_t>(rep.dimension))
            throw ValidationError("matrix for generator " + std::to_string(i + 1) + " is not " +
                                  std::to_string(rep.dimension) + "x" + std::to_string(rep.dimension));
    }
}

struct Inverses {
    std::vector<Matrix> inv;
};

Inverses invert_all(const MatrixRep& rep) {
    Inverses out;
    for (std::size_t i = 0; i < rep.matrices.size(); ++i) {
        auto m = inverse(rep.matrices[i]);
        if (!m) throw ValidationError("matrix for generator " + std::to_string(i + 1) + " is singular");
        out.inv.push_back(std::move(*m));
    }
    return out;
}

Matrix evaluate(const MatrixRep& rep, const Inverses& inv, const Word& w) {
    Matrix m = Matrix::identity(static_cast<std::size_t>(rep.dimension));
    for (int x : w) m = m * (x > 0 ? rep.matrices[static_cast<std::size_t>(x - 1)] : inv.inv[static_cast<std::size_t>(-x - 1)]);
    return m;
}

}  // namespace

Matrix evaluate_word(const MatrixRep& rep, const Word& w) {
    for (int x : w)
        if (x == 0 || std::abs(x) > static_cast<int>(rep.matrices.size()))
            throw ValidationError("word uses generator " + std::to_string(x) + " outside the representation");
    return evaluate(rep, invert_all(rep), w);
}

void check_representation(const GroupPresentation& pres, const MatrixRep& rep) {
    check_shapes(rep, pres.generators);
    auto inv = invert_all(rep);
    const Matrix id = Matrix::identity(static_cast<std::size_t>(rep.dimension));
    for (std::size_t j = 0; j < pres.relators.size(); ++j)
        if (!(evaluate(rep, inv, pres.relators[j]) == id))
            throw ValidationError("relator " + std::to_string(j + 1) + " does not evaluate to the identity");
}

Matrix fox_system(const GroupPresentation& pres, const MatrixRep& rep) {
    check_representation(pres, rep);
    const auto d = static_cast<std::size_t>(rep.dimension);
    const auto k = static_cast<std::size_t>(pres.generators);
    auto inv = invert_all(rep);
    Matrix fox(pres.relators.size() * d, k * d);
    for (std::size_t j = 0; j < pres.relators.size(); ++j) {
        Matrix prefix = Matrix::identity(d);
        for (int x : pres.relators[j]) {
            const std::size_t i = static_cast<std::size_t>(std::abs(x) - 1);
            if (x > 0) {
                fox.set_block(j * d, i * d, fox.block(j * d, i * d, d, d) + prefix);
                prefix = prefix * rep.matrices[i];
            } else {
                prefix = prefix * inv.inv[i];
                fox.set_block(j * d, i * d, fox.block(j * d, i * d, d, d) - prefix);
            }
        }
    }
    return fox;
}

CohomologyDims cohomology_dims(const GroupPresentation& pres, const MatrixRep& rep) {
    Matrix fox = fox_system(pres, rep);
    const int d = rep.dimension;
    CohomologyDims c;
    c.z1 = pres.generators * d - static_cast<int>(rank(fox));
    Matrix stacked(rep.matrices.size() * static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    const Matrix id = Matrix::identity(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < rep.matrices.size(); ++i) stacked.set_block(i * static_cast<std::size_t>(d), 0, rep.matrices[i] - id);
    c.h0 = d - static_cast<int>(rank(stacked));
    c.b1 = d - c.h0;
    c.h1 = c.z1 - c.b1;
    return c;
}

int coinvariant_dimension(const MatrixRep& rep) {
    const auto d = static_cast<std::size_t>(rep.dimension);
    Matrix side(d, rep.matrices.size() * d);
    const Matrix id = Matrix::identity(d);
    for (std::size_t i = 0; i < rep.matrices.size(); ++i) side.set_block(0, i * d, rep.matrices[i] - id);
    return rep.dimension - static_cast<int>(rank(side));
}

MatrixRep trivial_representation(int generators, int dimension) {
    MatrixRep r;
    r.dimension = dimension;
    r.matrices.assign(static_cast<std::size_t>(generators), Matrix::identity(static_cast<std::size_t>(dimension)));
    return r;
}

MatrixRep conjugate(const MatrixRep& rep, const Matrix& g, const Matrix& g_inverse) {
    MatrixRep r = rep;
    for (auto& m : r.matrices) m = g * m * g_inverse;
    return r;
}

namespace {

// Invertible matrix with no forced eigenvalue 1: a random diagonal of
// nonzero integers in a random basis.
Matrix random_generic(std::mt19937_64& rng, std::size_t d) {
    std::uniform_int_distribution<int> val(-3, 3);
    Matrix diag(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        int v = 0;
        while (v == 0) v = val(rng);
        diag(i, i) = v;
    }
    auto [g, gi] = random_invertible(rng, d, 1);
    Matrix upper = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) upper(i, j) = val(rng);
    return g * upper * diag * gi;
}

}  // namespace

MatrixRep random_surface_representation(std::mt19937_64& rng, int genus, int dimension) {
    if (genus < 2) throw ValidationError("random surface representations need genus >= 2");
    const auto d = static_cast<std::size_t>(dimension);
    Matrix a = random_generic(rng, d);
    Matrix b = random_generic(rng, d);
    MatrixRep rep;
    rep.dimension = dimension;
    rep.matrices = {a, b, b, a};
    for (int h = 2; h < genus; ++h) {
        Matrix c = random_generic(rng, d);
        rep.matrices.push_back(c);
        rep.matrices.push_back(c);
    }
    auto [g, gi] = random_invertible(rng, d, 2);
    return conjugate(rep, g, gi);
}

MatrixRep random_free_representation(std::mt19937_64& rng, int rank, int dimension) {
    MatrixRep rep;
    rep.dimension = dimension;
    for (int i = 0; i < rank; ++i) rep.matrices.push_back(random_generic(rng, static_cast<std::size_t>(dimension)));
    return rep;
}

}  // namespace anosovkit
