#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "anosovkit/linalg.hpp"

namespace anosovkit {

/// Letters are signed 1-based generator indices: 2 is g2, -2 is g2^-1.
using Word = std::vector<int>;

struct GroupPresentation {
    int generators = 0;
    std::vector<Word> relators;

    friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

Word free_reduce(const Word& w);
/// Validates indices, freely reduces every relator and drops empty ones.
GroupPresentation make_presentation(int generators, const std::vector<Word>& relators);
/// Text format: the first non-comment line holds the generator count, each
/// further line one relator such as "1 2 -1 -2 3 4 -3 -4". '#' starts a comment.
GroupPresentation parse_presentation(std::string_view text);
std::string format_presentation(const GroupPresentation& p);

/// <a1, b1, ..., ag, bg | [a1,b1] ... [ag,bg]>
GroupPresentation surface_group_presentation(int genus);
GroupPresentation free_group_presentation(int rank);

/// Right-to-left module action: generator i acts by matrices[i-1].
struct MatrixRep {
    int dimension = 0;
    std::vector<Matrix> matrices;
};

Matrix evaluate_word(const MatrixRep& rep, const Word& w);
/// Checks dimensions, invertibility of every matrix and that every relator
/// evaluates to the identity; throws ValidationError otherwise.
void check_representation(const GroupPresentation& pres, const MatrixRep& rep);

/// Block (j, i) is the Fox derivative of relator j in generator i evaluated
/// through the representation; its kernel is Z^1.
Matrix fox_system(const GroupPresentation& pres, const MatrixRep& rep);

struct CohomologyDims {
    int z1 = 0;
    int b1 = 0;
    int h1 = 0;
    int h0 = 0;

    friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

CohomologyDims cohomology_dims(const GroupPresentation& pres, const MatrixRep& rep);
/// dim of the coinvariants V / span{g v - v}.
int coinvariant_dimension(const MatrixRep& rep);

/// Trivial action on Q^d.
MatrixRep trivial_representation(int generators, int dimension);
/// Conjugates every matrix by the same invertible g.
MatrixRep conjugate(const MatrixRep& rep, const Matrix& g, const Matrix& g_inverse);

/// A genuine representation of the genus-g surface group on Q^d: random A, B
/// with a1 = A, b1 = B, a2 = B, b2 = A, the remaining handles given by
/// commuting pairs, then a random change of basis.
MatrixRep random_surface_representation(std::mt19937_64& rng, int genus, int dimension);
/// Random invertible matrices for a free group.
MatrixRep random_free_representation(std::mt19937_64& rng, int rank, int dimension);

}  // namespace anosovkit
