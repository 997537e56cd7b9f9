#pragma once

#include "cylkit/atom_structure.hpp"
#include "cylkit/bao.hpp"

#include <string>
#include <vector>

namespace cylkit {

/// A pair (R, f): R an equivalence relation on m, f a colouring of the
/// unordered pairs of R-inequivalent indices with colours < n.
struct MonkAtom {
    int m = 0;
    std::vector<int> cls; // class number per index, numbered by first occurrence
    std::vector<int> colour; // per index pair (i < j) in pair_index order; -1 when i R j

    bool related(int i, int j) const { return cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(j)]; }
    int f(int i, int j) const;

    friend bool operator==(const MonkAtom&, const MonkAtom&) = default;
    friend auto operator<=>(const MonkAtom&, const MonkAtom&) = default;
};

/// Position of the unordered pair {i, j} (i != j) among the pairs of m indices.
int pair_index(int i, int j, int m);

/// Printable form, e.g. "01|2;02=1,12=0".
std::string to_string(const MonkAtom& a);

struct MonkCaps {
    int max_m = 5;
    int max_n = 6;
};

/// All atoms of G(m, n): R partitions in restricted-growth order, then colourings
/// lexicographically. Colourings are class-constant and symmetric by
/// construction; no three pairwise inequivalent indices carry a single colour.
std::vector<MonkAtom> monk_atoms(int m, int n, const MonkCaps& caps = {});

/// G(m, n) as a CA_m frame: T_k relates atoms that agree off k,
/// E_kl = {(R, f) : k R l}.
AtomStructure monk_structure(int m, int n, const MonkCaps& caps = {});

/// C(m, n) = Ca G(m, n).
FiniteBAO monk_algebra(int m, int n, const MonkCaps& caps = {});

/// The element x of C(n, n + k) whose atoms keep every index u in [m, n) as a
/// singleton class with f(u, v) = u + k for v < u. Rl_x Rd_m C(n, n + k)
/// is isomorphic to C(m, m + k). Atom order matches monk_structure(n, n + k).
Element monk_x_element(int m, int n, int k, const MonkCaps& caps = {});
bool monk_x_member(const MonkAtom& a, int m, int k);

/// G(m, n) extended by the transpositions p_ij (i < j < m):
/// (R, f) p_ij (S, g) iff R is the image of S under [i, j] and f = g o [i, j].
AtomStructure johnson_extension(int m, int n, const MonkCaps& caps = {});

} // namespace cylkit
