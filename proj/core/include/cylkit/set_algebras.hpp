#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/morphisms.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cylkit {

/// The tuples ^n U for U = {0, ..., u-1}, numbered lexicographically with
/// coordinate 0 most significant.
struct TupleSpace {
    int n = 0;
    int u = 0;

    std::size_t size() const;
    std::vector<int> decode(std::size_t index) const;
    std::size_t encode(const std::vector<int>& tuple) const;
    std::string label(std::size_t index) const; // "(0,1,0)"
    /// The tuple with coordinate i replaced by v.
    std::size_t with(std::size_t index, int i, int v) const;
};

struct FullSetOptions {
    std::vector<Transformation> substitutions; // s_tau X = {s : s o tau in X}
    bool transpositions = false; // add p_ij = s_[i,j] for i < j < n
    std::size_t max_tuples = 100000;
};

/// Full cylindric set algebra on ^n U, |U| = u: c_i is coordinate
/// cylindrification, d_ij = {s : s_i = s_j}. CapExceeded above max_tuples.
FiniteBAO full_set_algebra(int n, int u, const FullSetOptions& options = {});

/// The transposition [i, j] as a transformation of n.
Transformation transposition(int n, int i, int j);

/// A base structure <U; R> with U = {0, ..., u-1}; pair (x, y) means R(x, y).
struct DirectedBase {
    int u = 0;
    std::vector<AtomPair> r;

    bool related(int x, int y) const;
};

struct BaseClass {
    bool weak_p = false;
    bool p_structure = false;
    bool extensional = false;
};

/// Weak P: every two points have a common R-successor. P: every two points
/// x, y have some z whose R-predecessors are exactly x and y. Extensional:
/// points with the same R-predecessors coincide.
BaseClass classify_base(const DirectedBase& base);

/// Full directed set algebra of dimension alpha: c_i is C_i^up,
/// q_i is C_i^down, d_ij as usual. ValidationError unless the base is weak P.
///   C_i^up X   = {s : exists z in X, R(z_i, s_i) and s, z agree off i}
///   C_i^down X = {s : exists z in X, R(s_i, z_i) and s, z agree off i}
FiniteBAO directed_set_algebra(int alpha, const DirectedBase& base, std::size_t max_tuples = 100000);

/// The c/d part of a signature: every other operator is dropped.
FiniteBAO cylindric_reduct(const FiniteBAO& algebra);

struct RepresentationOptions {
    int max_base = 4;
    std::size_t max_atoms = 10;
    unsigned jobs = 1;
};

struct RepresentationResult {
    bool found = false;
    int base = 0; // |U| of the witness, or the largest base searched
    std::optional<FiniteBAO> target; // the full set algebra the witness maps into
    MorphismWitness witness;
    std::size_t nodes = 0; // search nodes visited
};

/// Bounded search for an embedding of A (CA_n signature, n <= 3) into a full
/// set algebra ^n U with |U| <= max_base. Each tuple is assigned an atom of
/// A, subject to the diagonals and to the requirement that every c_i-line
/// carries exactly the T_i-class of its atoms. Owners of the constant
/// tuples are kept nondecreasing, which breaks the symmetry of permuting U.
/// found = false means no representation up to max_base.
RepresentationResult representation_search(const FiniteBAO& algebra, const RepresentationOptions& options = {});

} // namespace cylkit
