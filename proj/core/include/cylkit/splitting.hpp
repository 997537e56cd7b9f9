#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/set_algebras.hpp"
#include "cylkit/term.hpp"

#include <optional>
#include <vector>

namespace cylkit {

/// Parameters of a finite splitting experiment. The base is U = U_0 + ... +
/// U_{alpha-1} with |U_i| = sizes[i]; R = {s : s_i in U_i for all i}.
struct SplitSpec {
    int alpha = 3;
    std::vector<int> sizes;
    int p = 1; // number of pieces R is split into
    std::vector<Transformation> generators; // of the substitution group G
    std::size_t max_tuples = 100000;

    void validate() const;
};

/// Closure of the generators (plus the identity) under composition.
std::vector<Transformation> generate_group(const std::vector<Transformation>& generators, int alpha);

/// (sigma o tau)(k) = sigma(tau(k)); s_sigma s_tau = s_(sigma o tau).
Transformation compose_transformations(const Transformation& sigma, const Transformation& tau);

struct SplitBase {
    SplitSpec spec;
    int base_size = 0;
    std::vector<Transformation> group; // sorted, identity first
    FiniteBAO full; // c_i, d_ij, s_tau (tau in G) on ^alpha U
    Element r; // R in the full algebra
    Subalgebra sub; // A' inside the full algebra
    FiniteBAO algebra; // A'
    std::vector<int> r_atoms; // per group element: the atom s_tau R of A'

    /// An element of A' as a set of tuples.
    Element lift(const Element& x) const;
    /// A set of tuples as an element of A'; ValidationError if it cuts an atom.
    Element lower(const Element& tuples) const;
};

/// A' = the subalgebra of the full set algebra generated by R. Verifies that
/// the s_tau R (tau in G) are pairwise distinct atoms of A'.
SplitBase build_base(const SplitSpec& spec);

struct SplitAlgebra {
    FiniteBAO algebra;
    std::vector<Transformation> group; // the split substitutions
    int p = 1;
    std::vector<std::vector<int>> split_atoms; // [tau][j]: atom s_tau R_j
    std::vector<int> base_atoms; // [tau]: the atom s_tau R of A'
    std::vector<int> from_base; // A' atom -> atom here, -1 for split atoms

    /// R = sum of the R_j.
    Element r() const;
    /// The image of an element of A' (split atoms replaced by all their pieces).
    Element lift(const Element& x) const;
};

/// Replaces each atom s_tau R (tau in `group`, default all of G) by p atoms
/// s_tau R_j. c_i s_tau R_j = c_i s_tau R, diagonals are inherited, and
/// s_sigma s_tau R_j = s_(sigma o tau) R_j. Substitutions outside `group` are
/// dropped from the signature. ValidationError if `group` is not a subgroup of G.
SplitAlgebra split(const SplitBase& base, int p, std::optional<std::vector<Transformation>> group = std::nullopt);

/// tau(x) = prod_{i <= m} s^0_i c_1 ... c_m x . prod_{i < j <= m} -d_ij,
/// nonzero exactly when the 0-projection of x has m + 1 distinct points.
/// ValidationError when m + 1 > dimension or m < 1.
TermPtr witness_term(int m, int dimension);

/// R_i == R_j iff for every g and tau in G, s_tau R_i <= g <=> s_tau R_j <= g.
std::vector<std::vector<int>> blur(const SplitAlgebra& a, const std::vector<Element>& generators);

struct SmallSubalgebra {
    std::vector<std::vector<int>> blocks; // the classes of the blur
    Subalgebra sub;
    FiniteBAO algebra;
};

/// B: elements that never separate s_tau R_i from s_tau R_j for blurred
/// i, j. Throws ValidationError if B is not closed under the operations.
SmallSubalgebra small_subalgebra(const SplitAlgebra& a, const std::vector<Element>& generators);

/// R split into q cells of the full set algebra: with f_i : U_i -> Z_q onto
/// (f_i(u) = position of u in U_i mod q), R_j = {z in R : sum_i f_i(z_i) = j mod q}.
/// Each cell satisfies c_i R_j = c_i R. ValidationError if q > min |U_i|.
std::vector<Element> real_partition(const SplitBase& base, int q);

struct RepEmbedding {
    std::vector<Element> cells; // the real partition, one cell per block
    FiniteBAO target; // A'': the set algebra generated by the cells
    MorphismWitness witness;
};

/// h(b) = (b - sum s_tau R) + union of s_tau R'_k over blocks k with s_tau y_k <= b,
/// verified as an injective homomorphism of the full signature into A''.
/// ValidationError when there are more blocks than min |U_i|.
RepEmbedding rep_embedding(const SplitBase& base, const SplitAlgebra& a, const SmallSubalgebra& b);

/// h(x) = (x - sum s_tau R) + sum {s_tau R_i : tau in G1, i in chi(j), s_tau R_j <= x},
/// checked against the reduct of A2 to A1's substitutions. chi maps each
/// piece of A1 to a nonempty set of pieces of A2; the sets partition A2's pieces.
MorphismWitness split_embedding(const SplitAlgebra& a1, const SplitAlgebra& a2, const std::vector<std::vector<int>>& chi);

} // namespace cylkit
