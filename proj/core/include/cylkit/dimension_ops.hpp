#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cylkit {

/// Delta x = {i : c_i x != x}, over the declared cylindrifiers.
std::vector<int> dimension_set(const FiniteBAO& algebra, const Element& x);

/// True when the relation of `op` is reflexive, symmetric and transitive.
bool is_equivalence(const FiniteBAO& algebra, const std::string& op);

struct NeatReductResult {
    FiniteBAO algebra;
    std::vector<int> atom_map; // original atom -> class
    std::vector<Element> classes; // in the original algebra, ordered by smallest member
};

/// Nr_I A. Atoms are the joint classes of {T_i : i not in I}; the operators
/// with indices in I are renumbered along the order isomorphism I -> |I|.
/// Substitutions survive when they fix every index outside I. Throws
/// ValidationError when some T_i (i not in I) is not an equivalence, or when
/// a retained operator does not respect the classes.
NeatReductResult neat_reduct(const FiniteBAO& algebra, std::vector<int> indices);

/// All elements x with c_i x = x for i not in I, for frames where the T_i
/// are not equivalences. Enumerates 2^atoms; CapExceeded above max_atoms.
std::vector<Element> neat_reduct_elements(const FiniteBAO& algebra, const std::vector<int>& indices,
                                          std::size_t max_atoms = 20);

/// Rd^rho A for an injection rho: alpha -> dim A; the operator with index i is
/// the operator of A at rho(i). Atoms are unchanged.
FiniteBAO reduct_rho(const FiniteBAO& algebra, const std::vector<int>& rho);

/// Rl_x A: atoms below x, op'(y) = x . op(y), constants cut down by x. Throws
/// ValidationError for x = 0 or when x is not closed under a converse.
FiniteBAO relativize(const FiniteBAO& algebra, const Element& x);

/// Coordinates of the relation algebra reduct: identity d_ab, composition
/// c_k(s_k^b x . s_k^a y), converse s_k^b s_b^a s_a^k x (spare index k).
struct RaCoordinates {
    int a = 0;
    int b = 1;
    int spare = 2;
};

RaCoordinates default_ra_coordinates(int n); // (n-2, n-1) with spare 0
TermPtr ra_composition_term(const RaCoordinates& co, const std::string& x = "x", const std::string& y = "y");
TermPtr ra_converse_term(const RaCoordinates& co, const std::string& x = "x");

struct RaReductResult {
    FiniteBAO algebra;
    std::vector<Element> classes; // atoms of the reduct as elements of the source
    std::vector<int> atom_map;
    bool associative = false;
};

/// Ra A for A in a CA_n signature, n >= 3. The universe is Nr_{a,b} A; the
/// relation operations are computed by evaluating the terms above.
RaReductResult ra_reduct(const FiniteBAO& algebra, std::optional<RaCoordinates> coordinates = std::nullopt);

/// Atom-level associativity of composition: (x;y);z = x;(y;z) on all atom triples.
bool ra_associative(const FiniteBAO& algebra);

struct CorrespondentCheck {
    std::string check; // C2, C3, C4, C5, C6, C6', C7, or signature
    bool holds = true;
    std::string witness;
};

struct CorrespondentReport {
    std::vector<CorrespondentCheck> checks;
    bool holds() const;
    const CorrespondentCheck* first_violation() const;
};

/// First-order frame conditions equivalent to the CA_n axioms:
///   C2 T_i reflexive; C3 T_i symmetric and transitive; C4 T_i o T_j = T_j o T_i;
///   C5 E_ii = all atoms; C6 E_ij = T_k^*(E_ik . E_kj) for k not in {i, j};
///   C6' T_k^*(E_ik) = all atoms for i != k; C7 for i != j no atom has two
///   T_i-successors in E_ij.
/// C1 (normality) holds in every complex algebra and is not listed.
CorrespondentReport ca_frame_correspondents(const AtomStructure& frame, int n);

/// Relation algebra laws checked exhaustively on atoms of a complex algebra
/// with composition: associativity, identity laws, converse involution,
/// converse antidistribution over composition and the Peircean law
/// (a <= b;c iff b <= a;c^ iff c <= b^;a).
CorrespondentReport ra_atom_axioms(const FiniteBAO& algebra);

} // namespace cylkit
