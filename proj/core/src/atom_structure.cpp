#include "cylkit/atom_structure.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <set>

namespace cylkit {

namespace {

std::string index_pair(int i, int j)
{
    if (i < 10 && j < 10)
        return std::to_string(i) + std::to_string(j);
    return std::to_string(i) + "_" + std::to_string(j);
}

template <class T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::string cylindrifier_name(int i) { return "c" + std::to_string(i); }
std::string quasi_name(int i) { return "q" + std::to_string(i); }

std::string diagonal_name(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    return "d" + index_pair(i, j);
}

std::string transposition_name(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    return "p" + index_pair(i, j);
}

std::string substitution_name(const Transformation& tau)
{
    std::string s = "s[";
    for (std::size_t k = 0; k < tau.size(); ++k) {
        if (k)
            s += ',';
        s += std::to_string(tau[k]);
    }
    return s + "]";
}

std::vector<std::string> Signature::unary_names() const
{
    std::vector<std::string> names;
    for (int i : cylindrifiers)
        names.push_back(cylindrifier_name(i));
    for (int i : quasi)
        names.push_back(quasi_name(i));
    for (auto [i, j] : transpositions)
        names.push_back(transposition_name(i, j));
    for (const auto& tau : substitutions)
        names.push_back(substitution_name(tau));
    if (relation_algebra)
        names.emplace_back(kConverseName);
    for (const auto& n : extra_unary)
        names.push_back(n);
    return names;
}

std::vector<std::string> Signature::constant_names() const
{
    std::vector<std::string> names;
    for (auto [i, j] : diagonals)
        names.push_back(diagonal_name(i, j));
    if (relation_algebra)
        names.emplace_back(kIdentityName);
    for (const auto& n : extra_constants)
        names.push_back(n);
    return names;
}

void Signature::normalize()
{
    for (auto& [i, j] : diagonals)
        if (i > j)
            std::swap(i, j);
    for (auto& [i, j] : transpositions)
        if (i > j)
            std::swap(i, j);
    sort_unique(cylindrifiers);
    sort_unique(quasi);
    sort_unique(diagonals);
    sort_unique(transpositions);
    sort_unique(substitutions);
    sort_unique(extra_unary);
    sort_unique(extra_constants);
}

Signature cylindric_signature(int n)
{
    Signature sig;
    sig.dimension = n;
    for (int i = 0; i < n; ++i) {
        sig.cylindrifiers.push_back(i);
        for (int j = i; j < n; ++j)
            sig.diagonals.emplace_back(i, j);
    }
    return sig;
}

Consistency::Consistency(std::size_t atoms, bool initial) : n_(atoms), bits_(atoms * atoms * atoms, initial) {}

std::size_t Consistency::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

void AtomStructure::normalize()
{
    for (auto& [name, pairs] : unary)
        sort_unique(pairs);
    for (auto& [name, members] : constants)
        sort_unique(members);
    signature.normalize();
}

void AtomStructure::validate() const
{
    const int n = static_cast<int>(atoms.size());
    auto in_range = [n](int a) { return a >= 0 && a < n; };

    {
        std::set<std::string> seen;
        for (const auto& a : atoms)
            if (!seen.insert(a).second)
                throw ValidationError("atom identifiers must be distinct: '" + a + "' repeated");
    }

    for (const auto& [name, pairs] : unary)
        for (auto [a, b] : pairs)
            if (!in_range(a) || !in_range(b))
                throw ValidationError("relation '" + name + "' refers to an invalid atom index");
    for (const auto& [name, members] : constants)
        for (int a : members)
            if (!in_range(a))
                throw ValidationError("constant '" + name + "' refers to an invalid atom index");
    if (has_composition && composition.atoms() != atoms.size())
        throw ValidationError("consistency predicate is sized for " + std::to_string(composition.atoms()) +
                              " atoms, frame has " + std::to_string(atoms.size()));

    const int dim = signature.dimension;
    auto index_ok = [dim](int i) { return i >= 0 && i < dim; };
    for (int i : signature.cylindrifiers)
        if (!index_ok(i))
            throw ValidationError("cylindrifier index " + std::to_string(i) + " outside dimension");
    for (int i : signature.quasi)
        if (!index_ok(i))
            throw ValidationError("q index " + std::to_string(i) + " outside dimension");
    for (auto [i, j] : signature.diagonals)
        if (!index_ok(i) || !index_ok(j))
            throw ValidationError("diagonal index outside dimension");
    for (auto [i, j] : signature.transpositions)
        if (!index_ok(i) || !index_ok(j) || i == j)
            throw ValidationError("transposition indices must be distinct and inside the dimension");
    for (const auto& tau : signature.substitutions) {
        if (static_cast<int>(tau.size()) != dim)
            throw ValidationError("substitution " + substitution_name(tau) + " must list one image per coordinate");
        for (int k : tau)
            if (!index_ok(k))
                throw ValidationError("substitution " + substitution_name(tau) + " maps outside the dimension");
    }

    // Every declared slot has exactly one entry, and nothing undeclared is present.
    const auto unary_declared = signature.unary_names();
    const auto constants_declared = signature.constant_names();
    for (const auto& name : unary_declared)
        if (!unary.contains(name))
            throw ValidationError("declared unary operator '" + name + "' has no relation");
    for (const auto& name : constants_declared)
        if (!constants.contains(name))
            throw ValidationError("declared constant '" + name + "' has no atom set");
    for (const auto& [name, _] : unary)
        if (std::find(unary_declared.begin(), unary_declared.end(), name) == unary_declared.end())
            throw ValidationError("relation '" + name + "' is not declared in the signature");
    for (const auto& [name, _] : constants)
        if (std::find(constants_declared.begin(), constants_declared.end(), name) == constants_declared.end())
            throw ValidationError("constant '" + name + "' is not declared in the signature");
    if (signature.relation_algebra && !has_composition)
        throw ValidationError("relation algebra signature requires a consistency predicate");
    if (!signature.relation_algebra && has_composition)
        throw ValidationError("consistency predicate present but signature is not a relation algebra signature");

    if (signature.relation_algebra) {
        // The converse relation must be the graph of an involution.
        std::vector<int> image(atoms.size(), -1);
        for (auto [a, b] : unary.at(kConverseName)) {
            if (image[b] != -1)
                throw ValidationError("converse is not a function: atom " + atoms[b] + " has two converses");
            image[b] = a;
        }
        for (int b = 0; b < n; ++b) {
            if (image[b] == -1)
                throw ValidationError("converse is not total: atom " + atoms[b] + " has no converse");
            if (image[image[b]] != b)
                throw ValidationError("converse is not an involution at atom " + atoms[b]);
        }
    }
}

} // namespace cylkit
