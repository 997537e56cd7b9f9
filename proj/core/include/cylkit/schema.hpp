#pragma once

#include "cylkit/bao.hpp"
#include "cylkit/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cylkit {

/// An operation symbol f of a type schema with index arity delta(f) and rank rho(f).
/// Symbol names map onto term kinds: c, q (1,1); d (2,0); s, p (2,1).
struct OperationSymbol {
    std::string name;
    int index_arity = 0;
    int rank = 0;
};

struct TypeSchema {
    std::vector<OperationSymbol> symbols;
    std::string cylindrifier = "c";

    const OperationSymbol* find(const std::string& name) const;
    /// Requires delta(c) = rho(c) = 1 and delta(f) <= m for every symbol.
    void validate(int m) const;
};

TypeSchema cylindric_type();
TypeSchema polyadic_equality_type();

struct NamedEquation {
    std::string name;
    Equation equation;
};

/// Equation templates over a finite type schema of width m. Templates use
/// index variables (or concrete indices below m); distinct index tokens are
/// always instantiated by distinct indices.
struct SchemaTemplate {
    std::string name;
    int m = 0;
    TypeSchema type;
    std::vector<NamedEquation> templates;

    /// ValidationError if a template uses a symbol outside the type, with the
    /// wrong arity, or has more index tokens than m.
    void validate() const;
};

/// CA axioms as templates of width 3.
SchemaTemplate ca_schema();
/// CA templates plus the transposition axioms of polyadic equality algebras.
SchemaTemplate pea_schema();

/// Sigma_n: every rho+ e for injections rho from the index support of e into
/// n, canonicalized and deduplicated, in template order then lexicographic.
std::vector<NamedEquation> instantiate_schema(const SchemaTemplate& schema, int n);

struct CheckMode {
    enum class Kind { Exhaustive, Sampled, Atoms };
    Kind kind = Kind::Exhaustive;
    std::uint64_t cap = std::uint64_t{1} << 20; // exhaustive: max assignments
    std::uint64_t seed = 0;
    std::size_t trials = 1000;

    static CheckMode exhaustive(std::uint64_t cap = std::uint64_t{1} << 20) { return {Kind::Exhaustive, cap, 0, 0}; }
    static CheckMode sampled(std::uint64_t seed, std::size_t trials) { return {Kind::Sampled, 0, seed, trials}; }
    static CheckMode atoms() { return {Kind::Atoms, 0, 0, 0}; }
};

std::string to_string(CheckMode::Kind k);

struct Verdict {
    bool holds = true;
    /// False only for a sampled "holds"; counterexamples are always definitive.
    bool definitive = true;
    CheckMode mode;
    std::uint64_t assignments = 0;
    std::optional<Assignment> counterexample;
};

/// True when both sides preserve binary joins in every variable separately,
/// so the equation holds iff it holds with each variable ranging over atoms and 0.
bool join_preserving(const Equation& e);

/// Exhaustive mode refuses (CapExceeded) when (2^atoms)^vars exceeds the cap.
/// Atoms mode throws ValidationError for equations that are not join preserving.
/// Counterexamples are shrunk greedily by dropping atoms while the equation still fails.
Verdict check_equation(const FiniteBAO& algebra, const Equation& e, const CheckMode& mode);

struct VarietyReport {
    struct Entry {
        NamedEquation equation;
        Verdict verdict;
    };
    std::vector<Entry> entries;

    bool all_hold() const;
    bool definitive() const;
    const Entry* first_failure() const;
};

VarietyReport check_variety(const FiniteBAO& algebra, const std::vector<NamedEquation>& sigma, const CheckMode& mode);

} // namespace cylkit
