#pragma once

#include "cylkit/bao.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cylkit {

/// A complete map between finite atomic BAOs, given by the image of every
/// source atom. The flags record what check_homomorphism verified.
struct MorphismWitness {
    std::vector<Element> images; // per source atom, an element of the target
    bool hom = false;
    bool injective = false;
    bool surjective = false;
    bool complete = false; // finite algebras: equal to hom
    std::string failure; // empty when every requested property holds

    bool ok() const noexcept { return failure.empty(); }
    /// h(x) = union of the images of the atoms below x.
    Element apply(const Element& x) const;
    /// For a bijection onto atoms: the target atom of each source atom.
    std::vector<int> atom_map() const;
};

struct MorphismRequire {
    bool injective = false;
    bool surjective = false;
};

/// Verifies that the atom images extend to a homomorphism from A to B:
/// pairwise disjoint with union 1, and preserving every operator, constant
/// and (when present) composition of A's signature on atoms. B may carry
/// more operations than A. ValidationError if the map is not total.
MorphismWitness check_homomorphism(const FiniteBAO& a, const FiniteBAO& b, std::vector<Element> images,
                                   MorphismRequire require = {});

/// Atom bijection as a witness (image of atom i is atom perm[i]).
MorphismWitness from_atom_map(const FiniteBAO& a, const FiniteBAO& b, const std::vector<int>& perm,
                              MorphismRequire require = {true, true});

/// g after f.
MorphismWitness compose(const FiniteBAO& a, const FiniteBAO& c, const MorphismWitness& f, const MorphismWitness& g);

struct SearchOptions {
    std::size_t max_atoms = 64;
    unsigned jobs = 1; // >1 splits the top branching level over threads; verdicts are identical
};

/// Isomorphism search on atom structures: joint colour refinement over both
/// frames, then individualization and backtracking. Definitive; nullopt when
/// none exists. Signatures must agree. CapExceeded above max_atoms.
std::optional<MorphismWitness> find_isomorphism(const FiniteBAO& a, const FiniteBAO& b, const SearchOptions& options = {});

/// Plain backtracking over atom bijections, for cross-checking (at most 10 atoms).
std::optional<MorphismWitness> find_isomorphism_unpruned(const FiniteBAO& a, const FiniteBAO& b);

/// All injective homomorphisms A -> D, in lexicographic order of the map
/// from D's atoms to A's atoms, up to `limit` of them. D has at most 8 atoms.
std::vector<MorphismWitness> find_embeddings(const FiniteBAO& a, const FiniteBAO& d, std::size_t limit = 1u << 16);

struct AmalgamCheck {
    bool amalgam = false;
    bool super = false;
    std::string failure;
    // when super fails: x in A_j, y in A_k with m_j(x) <= m_k(y) and no interpolant
    int j = 0;
    std::optional<std::pair<Element, Element>> witness;
};

/// AP instance: m1 o i1 = m2 o i2 with m1, m2 injective. SUPAP instance:
/// for {j, k} = {1, 2} and all x in A_j, y in A_k with m_j(x) <= m_k(y)
/// some z in A_0 has x <= i_j(z) and i_k(z) <= y. The least z with
/// x <= i_j(z) is the only candidate, so each pair costs one check.
/// ValidationError unless i1, i2 are embeddings and m1, m2 homomorphisms;
/// CapExceeded when 2^(|At A1| + |At A2|) > pair_cap.
AmalgamCheck amalgam_check(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2, const MorphismWitness& i1,
                           const MorphismWitness& i2, const FiniteBAO& d, const MorphismWitness& m1,
                           const MorphismWitness& m2, std::size_t pair_cap = 1u << 12);

struct AmalgamSearchResult {
    bool found = false;
    bool exhausted = false; // no candidate up to the bound
    std::optional<FiniteBAO> d;
    std::size_t candidates_tried = 0;
    MorphismWitness m1;
    MorphismWitness m2;
    AmalgamCheck check;
};

/// Searches the pool for D with embeddings m1, m2 closing the span. Pool
/// members above `bound` atoms are skipped; bound must be at most 6.
AmalgamSearchResult amalgam_search(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2,
                                   const MorphismWitness& i1, const MorphismWitness& i2,
                                   const std::vector<FiniteBAO>& pool, std::size_t bound = 6);

/// Same, with candidates drawn from every CA_n frame (n <= 2) of at most
/// `bound` atoms satisfying the CA_n correspondents.
AmalgamSearchResult amalgam_search(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2,
                                   const MorphismWitness& i1, const MorphismWitness& i2, std::size_t bound);

/// All CA_n frames (n <= 2) on exactly `atoms` atoms that satisfy the frame
/// correspondents, not reduced up to isomorphism.
std::vector<AtomStructure> ca_frames(int n, int atoms);

} // namespace cylkit
