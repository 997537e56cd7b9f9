#pragma once

#include "cylkit/atom_structure.hpp"
#include "cylkit/bao.hpp"
#include "cylkit/element.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cylkit {

/// A concrete index or a named index variable (used by schema templates).
using Index = std::variant<int, std::string>;

std::string index_to_string(const Index& i);

enum class TermKind {
    Variable,
    Zero,
    One,
    Diagonal, // d_ij
    Identity, // 1'
    Constant, // named constant of the frame
    Cylindrify, // c_i
    Quasi, // q_i
    Substitute, // s: (s i j t) = c_i(d_ij . t), identity when i = j
    SubstituteTau, // s_tau, indices hold tau's image list
    Transpose, // p_ij
    Converse,
    Complement,
    CylindrifySet, // c_(Gamma), indices hold Gamma
    Join,
    Meet,
    Compose,
    Apply, // named unary operator of the frame
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    std::string name; // Variable, Constant, Apply
    std::vector<Index> indices;
    std::vector<TermPtr> args;
};

struct Equation {
    TermPtr lhs;
    TermPtr rhs;
};

namespace term {
TermPtr var(std::string name);
TermPtr zero();
TermPtr one();
TermPtr diag(Index i, Index j);
TermPtr identity();
TermPtr constant(std::string name);
TermPtr c(Index i, TermPtr t);
TermPtr q(Index i, TermPtr t);
TermPtr s(Index i, Index j, TermPtr t);
TermPtr sub(std::vector<Index> tau, TermPtr t);
TermPtr p(Index i, Index j, TermPtr t);
TermPtr conv(TermPtr t);
TermPtr neg(TermPtr t);
TermPtr cset(std::vector<Index> gamma, TermPtr t);
TermPtr join(std::vector<TermPtr> args);
TermPtr meet(std::vector<TermPtr> args);
TermPtr compose(std::vector<TermPtr> args);
TermPtr apply(std::string op, TermPtr t);
} // namespace term

std::string to_string(const TermPtr& t);
std::string to_string(const Equation& e);

/// Prefix syntax, e.g. `(= (c 0 (c 0 x)) (c 0 x))`.
TermPtr parse_term(std::string_view text);
Equation parse_equation(std::string_view text);

bool structurally_equal(const TermPtr& a, const TermPtr& b);
std::size_t depth(const TermPtr& t);
/// Free term variables, sorted.
std::set<std::string> variables(const TermPtr& t);
std::set<std::string> variables(const Equation& e);
/// Index variables and concrete indices occurring anywhere in the term.
std::set<Index> index_support(const TermPtr& t);
std::set<Index> index_support(const Equation& e);
/// Operator symbols with their count, keyed by kind and name (for renaming laws).
std::map<std::string, std::size_t> operation_multiset(const TermPtr& t);

/// Sorts arguments of joins and meets, flattens nested joins/meets,
/// orders symmetric index pairs of d and p, and orders equation sides.
TermPtr canonical(const TermPtr& t);
Equation canonical(const Equation& e);

/// Finite injection eta: beta -> target, stored as the image list.
class IndexInjection {
public:
    IndexInjection(std::vector<int> image, int target);
    static IndexInjection identity(int n);

    int domain() const noexcept { return static_cast<int>(image_.size()); }
    int target() const noexcept { return target_; }
    int operator()(int i) const;
    const std::vector<int>& image() const noexcept { return image_; }
    /// (this o other)(i) = this(other(i)).
    IndexInjection after(const IndexInjection& other) const;

private:
    std::vector<int> image_;
    int target_;
};

/// Homomorphic index renaming; variables are unchanged. s_tau is conjugated:
/// the result maps eta(k) to eta(tau(k)) and fixes every index outside the image.
TermPtr eta_plus(const IndexInjection& eta, const TermPtr& t);
Equation eta_plus(const IndexInjection& eta, const Equation& e);

/// Replaces index variables by concrete indices. Unbound variables stay.
TermPtr bind_indices(const TermPtr& t, const std::map<Index, int>& binding);
Equation bind_indices(const Equation& e, const std::map<Index, int>& binding);

using Assignment = std::map<std::string, Element, std::less<>>;

/// Inductive interpretation in a finite BAO. Throws EvaluationError on an
/// index variable, an operator missing from the algebra, or an unassigned
/// variable.
Element eval(const TermPtr& t, const FiniteBAO& algebra, const Assignment& assignment = {});

} // namespace cylkit
