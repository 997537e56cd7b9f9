#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cylkit {

/// A finite transformation of the dimension, stored as its image list:
/// tau[k] is the image of coordinate k.
using Transformation = std::vector<int>;

using AtomPair = std::pair<int, int>;

/// Operator and constant names used by frames. Terms resolve to these names,
/// so every module that builds a frame goes through the same helpers.
std::string cylindrifier_name(int i);
std::string quasi_name(int i);
std::string diagonal_name(int i, int j); // symmetric: d_ij and d_ji share a name
std::string transposition_name(int i, int j); // symmetric as well
std::string substitution_name(const Transformation& tau);
inline constexpr const char* kConverseName = "conv";
inline constexpr const char* kIdentityName = "id";

/// Dimension plus the declared operator slots of a frame.
struct Signature {
    int dimension = 0;
    std::vector<int> cylindrifiers;
    std::vector<int> quasi; // second cylindrifier family q_i (directed down-cylindrifiers)
    std::vector<AtomPair> diagonals; // stored with i <= j
    std::vector<AtomPair> transpositions; // stored with i < j
    std::vector<Transformation> substitutions;
    bool relation_algebra = false; // composition, converse and identity
    std::vector<std::string> extra_unary;
    std::vector<std::string> extra_constants;

    /// Names of all unary operators the signature declares, in canonical order.
    std::vector<std::string> unary_names() const;
    /// Names of all constants the signature declares, in canonical order.
    std::vector<std::string> constant_names() const;

    /// Sorts and deduplicates every slot list.
    void normalize();

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// CA_n signature: c_i for i < n and d_ij for i <= j < n.
Signature cylindric_signature(int n);

/// The set of triples (a, b, c) for which a <= b ; c.
class Consistency {
public:
    Consistency() = default;
    Consistency(std::size_t atoms, bool initial);

    std::size_t atoms() const noexcept { return n_; }
    bool consistent(int a, int b, int c) const { return bits_[index(a, b, c)]; }
    void set(int a, int b, int c, bool value) { bits_[index(a, b, c)] = value; }
    std::size_t count() const;

    friend bool operator==(const Consistency&, const Consistency&) = default;

private:
    std::size_t index(int a, int b, int c) const
    {
        return (static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)) * n_ + static_cast<std::size_t>(c);
    }

    std::size_t n_ = 0;
    std::vector<bool> bits_;
};

/// Atoms plus, per unary operator, a binary relation on atoms and, per
/// constant, an atom subset.
///
/// Direction convention: a pair (a, b) in the relation of operator f means
/// that b witnesses a, i.e. f(X) = {a : exists b in X with (a, b) in T_f}.
struct AtomStructure {
    std::vector<std::string> atoms;
    std::map<std::string, std::vector<AtomPair>> unary;
    std::map<std::string, std::vector<int>> constants;
    bool has_composition = false;
    Consistency composition;
    Signature signature;

    std::size_t size() const noexcept { return atoms.size(); }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    /// Sorts relation pairs and constant lists; deduplicates.
    void normalize();

    friend bool operator==(const AtomStructure&, const AtomStructure&) = default;
};

} // namespace cylkit
