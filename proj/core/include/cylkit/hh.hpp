#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/morphisms.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace cylkit {

/// An atom of A(n, r): either Id, or a^k(i, j) with i < n - 1, j < r, k < psi.
struct HHAtom {
    bool identity = true;
    int i = 0;
    int j = 0;
    int k = 0;

    friend auto operator<=>(const HHAtom&, const HHAtom&) = default;
};

std::string to_string(const HHAtom& a); // "id" or "a<k>(<i>,<j>)"

/// Atoms in order: id, then a^k(i, j) by (i, j, k).
std::vector<HHAtom> hh_atoms(int n, int r, int psi);

/// Forbidden triples: every permutation of (Id, s, t) with s != t, and every
/// permutation of (a^k(i,j), a^k'(i,j), a^k''(i,j')) with j <= j'.
bool hh_forbidden(const HHAtom& a, const HHAtom& b, const HHAtom& c);

/// The RA atom structure of A(n, r) with psi copies per (i, j); all atoms are
/// self-converse. ValidationError when psi < max(n, r) or n < 2, r < 1.
AtomStructure hh_structure(int n, int r, int psi);
FiniteBAO hh_algebra(int n, int r, int psi);

/// A map from tuples of length <= wide over `nodes` nodes to atoms (length 2)
/// and hyperlabels (other lengths). With a single hyperlabel `hyper` is empty.
struct Hypernetwork {
    int nodes = 0;
    int wide = 0;
    std::vector<int> label; // label[x * nodes + y]
    std::vector<int> hyper; // indexed by tuple_index; -1 at length-2 slots

    int at(int x, int y) const { return label[static_cast<std::size_t>(x * nodes + y)]; }
    /// Hyperlabel of a tuple of length != 2 (0 when |Lambda| = 1).
    int hyperlabel(const std::vector<int>& tuple) const;

    friend auto operator<=>(const Hypernetwork&, const Hypernetwork&) = default;
    friend bool operator==(const Hypernetwork&, const Hypernetwork&) = default;
};

/// Position of a tuple among all tuples of length <= wide, by length and then lexicographically.
std::size_t tuple_index(const std::vector<int>& tuple, int nodes);
std::size_t tuple_count(int nodes, int wide);

/// N o sigma for any map sigma: nodes -> nodes.
Hypernetwork compose(const Hypernetwork& n, const std::vector<int>& sigma);

/// M ==_X N: agreement on every tuple avoiding the nodes in X.
bool equivalent_off(const Hypernetwork& m, const Hypernetwork& n, const std::vector<int>& excluded);

/// Printable form: pair labels above the diagonal, then hyperlabels if any.
std::string to_string(const Hypernetwork& n, const FiniteBAO& algebra);

struct HypernetworkSet {
    FiniteBAO algebra;
    int nodes = 0;
    int wide = 0;
    int lambda = 1; // |Lambda|
    std::vector<Hypernetwork> networks; // sorted, distinct
    bool converse_law_assumed = false; // set when some atom is not self-converse

    bool contains(const Hypernetwork& n) const;
};

struct HypernetworkCaps {
    int max_nodes = 4;
    std::size_t max_atoms = 16;
    std::size_t max_networks = std::size_t{1} << 20;
    unsigned jobs = 1;
};

/// Which network law a labelling violates, if any: diagonal, converse,
/// triangle, or tuple equality.
std::optional<std::string> network_violation(const FiniteBAO& algebra, const Hypernetwork& n);

/// H_m^n(A, Lambda): complete enumeration by backtracking over node pairs,
/// then hyperlabels per class of Id-linked tuples. The converse law
/// N(y, x) = N(x, y)^ is imposed explicitly.
HypernetworkSet enumerate_hypernetworks(const FiniteBAO& algebra, int nodes, int wide, int lambda = 1,
                                        const HypernetworkCaps& caps = {});

struct HyperbasisReport {
    bool networks = true; // every member satisfies the network laws
    bool witness = true; // each atom is some N(0, 1)
    bool amalgamation = true;
    bool patching = true;
    bool symmetric = true;
    std::string first_violation; // clause name
    std::string detail;

    bool is_hyperbasis() const { return networks && witness && amalgamation && patching; }
};

HyperbasisReport check_hyperbasis(const HypernetworkSet& h);
/// Checked on generators of the monoid of all maps m -> m.
bool is_symmetric(const HypernetworkSet& h);
/// Same, over every map m -> m.
bool is_symmetric_exhaustive(const HypernetworkSet& h);

/// Ca(H) in the PEA signature of dimension `nodes`: c_i is ==_i,
/// d_ij = {N : N(i, j) <= Id}, p_ij relates N to M when N = M o [i, j].
FiniteBAO ca_of_hyperbasis(const HypernetworkSet& h);

/// H|_m: restriction to the first m nodes and tuples of length <= wide, de-duplicated.
HypernetworkSet restrict_hyperbasis(const HypernetworkSet& h, int nodes, std::optional<int> wide = std::nullopt);

struct HyperNeatReduct {
    std::optional<FiniteBAO> algebra;
    std::vector<int> atom_map; // network -> class
    std::vector<int> representatives; // per class, its smallest network
};

/// Nr_m Ca(H) computed on the classes of the equivalence generated by ==_j
/// (m <= j < nodes), without materializing Ca(H). Operators are induced on
/// classes; ValidationError when a diagonal cuts a class.
HyperNeatReduct neat_reduct_of_hyperbasis(const HypernetworkSet& h, int m);

/// The map a -> {N : N(0, 1) <= a} from A into Ra(Ca H) (identity d_01,
/// spare coordinate 2), verified as a homomorphism and checked for injectivity.
MorphismWitness embedding_check(const HypernetworkSet& h, const FiniteBAO& ca);

} // namespace cylkit
