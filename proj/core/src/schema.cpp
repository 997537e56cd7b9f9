#include "cylkit/schema.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cylkit {

const OperationSymbol* TypeSchema::find(const std::string& name) const
{
    for (const auto& s : symbols)
        if (s.name == name)
            return &s;
    return nullptr;
}

void TypeSchema::validate(int m) const
{
    const OperationSymbol* c = find(cylindrifier);
    if (!c)
        throw ValidationError("type schema has no cylindrifier symbol '" + cylindrifier + "'");
    if (c->index_arity != 1 || c->rank != 1)
        throw ValidationError("cylindrifier symbol must have index arity 1 and rank 1");
    for (const auto& s : symbols)
        if (s.index_arity > m)
            throw ValidationError("symbol '" + s.name + "' has index arity " + std::to_string(s.index_arity) +
                                  " above the schema width " + std::to_string(m));
}

TypeSchema cylindric_type() { return TypeSchema{{{"c", 1, 1}, {"d", 2, 0}}, "c"}; }

TypeSchema polyadic_equality_type() { return TypeSchema{{{"c", 1, 1}, {"d", 2, 0}, {"p", 2, 1}}, "c"}; }

namespace {

// Symbol name and (index arity, rank) a term node uses, or nullopt for Boolean structure.
std::optional<OperationSymbol> symbol_of(const Term& t)
{
    switch (t.kind) {
    case TermKind::Cylindrify: return OperationSymbol{"c", 1, 1};
    case TermKind::Quasi: return OperationSymbol{"q", 1, 1};
    case TermKind::Diagonal: return OperationSymbol{"d", 2, 0};
    case TermKind::Substitute: return OperationSymbol{"s", 2, 1};
    case TermKind::Transpose: return OperationSymbol{"p", 2, 1};
    default: return std::nullopt;
    }
}

void check_symbols(const TermPtr& t, const TypeSchema& type, const std::string& where)
{
    switch (t->kind) {
    case TermKind::Variable:
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Complement:
    case TermKind::Join:
    case TermKind::Meet:
        break;
    default: {
        auto sym = symbol_of(*t);
        if (!sym)
            throw ValidationError(where + ": operation '" + to_string(t) + "' is outside the finite schema language");
        const OperationSymbol* decl = type.find(sym->name);
        if (!decl)
            throw ValidationError(where + ": symbol '" + sym->name + "' is not in the type schema");
        if (decl->index_arity != sym->index_arity || decl->rank != sym->rank)
            throw ValidationError(where + ": symbol '" + sym->name + "' used with a different arity than declared");
    }
    }
    for (const auto& a : t->args)
        check_symbols(a, type, where);
}

} // namespace

void SchemaTemplate::validate() const
{
    type.validate(m);
    for (const auto& [name, e] : templates) {
        check_symbols(e.lhs, type, name);
        check_symbols(e.rhs, type, name);
        const auto support = index_support(e);
        if (static_cast<int>(support.size()) > m)
            throw ValidationError(name + ": uses " + std::to_string(support.size()) + " indices, schema width is " +
                                  std::to_string(m));
        for (const auto& i : support)
            if (const int* v = std::get_if<int>(&i); v && *v >= m)
                throw ValidationError(name + ": concrete index " + std::to_string(*v) + " not below " + std::to_string(m));
    }
}

SchemaTemplate ca_schema()
{
    SchemaTemplate s;
    s.name = "ca";
    s.m = 3;
    s.type = cylindric_type();
    auto add = [&](const char* name, const char* text) { s.templates.push_back({name, parse_equation(text)}); };
    add("C1", "(= (c i 0) 0)");
    add("C2", "(= (+ x (c i x)) (c i x))");
    add("C3", "(= (c i (* x (c i y))) (* (c i x) (c i y)))");
    add("C4", "(= (c i (c j x)) (c j (c i x)))");
    add("C5", "(= (d i i) 1)");
    add("C6", "(= (d i j) (c k (* (d i k) (d k j))))");
    add("C6'", "(= (c k (d i k)) 1)");
    add("C7", "(= (* (c i (* (d i j) x)) (c i (* (d i j) (- x)))) 0)");
    return s;
}

SchemaTemplate pea_schema()
{
    SchemaTemplate s = ca_schema();
    s.name = "pea";
    s.type = polyadic_equality_type();
    auto add = [&](const char* name, const char* text) { s.templates.push_back({name, parse_equation(text)}); };
    add("P1", "(= (p i j (p i j x)) x)");
    add("P2", "(= (p i j (+ x y)) (+ (p i j x) (p i j y)))");
    add("P3", "(= (p i j (- x)) (- (p i j x)))");
    add("P4", "(= (p i j (c i x)) (c j (p i j x)))");
    add("P5", "(= (p i j (c k x)) (c k (p i j x)))");
    add("P6", "(= (p i j (d i j)) (d i j))");
    add("P7", "(= (p i j (d i k)) (d j k))");
    return s;
}

std::vector<NamedEquation> instantiate_schema(const SchemaTemplate& schema, int n)
{
    schema.validate();
    if (n < schema.m)
        throw ValidationError("cannot instantiate a width-" + std::to_string(schema.m) + " schema at dimension " +
                              std::to_string(n));
    std::vector<NamedEquation> out;
    std::set<std::string> seen;
    for (const auto& [name, e] : schema.templates) {
        const auto support_set = index_support(e);
        const std::vector<Index> support(support_set.begin(), support_set.end());
        const std::size_t k = support.size();
        std::vector<std::pair<std::string, Equation>> batch;
        // every injection support -> n, enumerated in lexicographic order of images
        std::vector<int> image(k, 0);
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == k) {
                std::map<Index, int> binding;
                for (std::size_t t = 0; t < k; ++t)
                    binding[support[t]] = image[t];
                Equation inst = canonical(bind_indices(e, binding));
                std::string key = to_string(inst);
                if (seen.insert(key).second)
                    batch.emplace_back(std::move(key), std::move(inst));
                return;
            }
            for (int v = 0; v < n; ++v) {
                if (used[static_cast<std::size_t>(v)])
                    continue;
                used[static_cast<std::size_t>(v)] = true;
                image[pos] = v;
                self(self, pos + 1);
                used[static_cast<std::size_t>(v)] = false;
            }
        };
        rec(rec, 0);
        std::sort(batch.begin(), batch.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [_, inst] : batch)
            out.push_back({name, std::move(inst)});
    }
    return out;
}

std::string to_string(CheckMode::Kind k)
{
    switch (k) {
    case CheckMode::Kind::Exhaustive: return "exhaustive";
    case CheckMode::Kind::Sampled: return "sampled";
    case CheckMode::Kind::Atoms: return "atoms";
    }
    return "?";
}

namespace {

bool mentions(const TermPtr& t, const std::string& v)
{
    if (t->kind == TermKind::Variable)
        return t->name == v;
    return std::any_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return mentions(a, v); });
}

bool additive_in(const TermPtr& t, const std::string& v)
{
    if (!mentions(t, v))
        return true;
    switch (t->kind) {
    case TermKind::Variable: return true;
    case TermKind::Complement: return false;
    case TermKind::Join:
        return std::all_of(t->args.begin(), t->args.end(), [&](const TermPtr& a) { return additive_in(a, v); });
    case TermKind::Meet:
    case TermKind::Compose: {
        int count = 0;
        for (const auto& a : t->args)
            if (mentions(a, v)) {
                ++count;
                if (!additive_in(a, v))
                    return false;
            }
        return count <= 1;
    }
    default:
        // every remaining kind with an argument is a completely additive unary operator
        return additive_in(t->args.at(0), v);
    }
}

bool holds_at(const FiniteBAO& a, const Equation& e, const Assignment& env)
{
    return eval(e.lhs, a, env) == eval(e.rhs, a, env);
}

Assignment shrink(const FiniteBAO& a, const Equation& e, Assignment env)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [name, value] : env) {
            for (int atom : value.atoms()) {
                Element saved = value;
                value.reset(static_cast<std::size_t>(atom));
                if (holds_at(a, e, env))
                    value = std::move(saved);
                else
                    changed = true;
            }
        }
    }
    return env;
}

Element random_element(std::mt19937_64& rng, std::size_t n)
{
    Element e(n);
    if (n == 0)
        return e;
    switch (rng() % 7) {
    case 0: return e;
    case 1: return Element::full(n);
    case 2: e.set(rng() % n); return e;
    case 3: e = Element::full(n); e.reset(rng() % n); return e;
    default: break;
    }
    const auto density = rng() % 3; // 1/4, 1/2, 3/4
    for (std::size_t base = 0; base < n; base += 64) {
        std::uint64_t w = rng();
        if (density == 0)
            w &= rng();
        else if (density == 2)
            w |= rng();
        for (std::size_t b = 0; b < 64 && base + b < n; ++b)
            if ((w >> b) & 1U)
                e.set(base + b);
    }
    return e;
}

} // namespace

bool join_preserving(const Equation& e)
{
    for (const auto& v : variables(e))
        if (!additive_in(e.lhs, v) || !additive_in(e.rhs, v))
            return false;
    return true;
}

Verdict check_equation(const FiniteBAO& a, const Equation& e, const CheckMode& mode)
{
    const auto var_set = variables(e);
    const std::vector<std::string> vars(var_set.begin(), var_set.end());
    const std::size_t n = a.atom_count();
    Verdict verdict;
    verdict.mode = mode;

    auto fail = [&](const Assignment& env) {
        verdict.holds = false;
        verdict.definitive = true;
        verdict.counterexample = shrink(a, e, env);
        return verdict;
    };

    switch (mode.kind) {
    case CheckMode::Kind::Exhaustive: {
        const std::size_t bits = n * vars.size();
        if (bits >= 63 || (std::uint64_t{1} << bits) > mode.cap)
            throw CapExceeded("exhaustive check needs 2^" + std::to_string(bits) + " assignments, cap is " +
                              std::to_string(mode.cap));
        const std::uint64_t total = std::uint64_t{1} << bits;
        const std::uint64_t mask = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
        Assignment env;
        for (std::uint64_t k = 0; k < total; ++k) {
            for (std::size_t v = 0; v < vars.size(); ++v) {
                const std::uint64_t m = (k >> (n * v)) & mask;
                Element x(n);
                for (std::size_t b = 0; b < n; ++b)
                    if ((m >> b) & 1U)
                        x.set(b);
                env.insert_or_assign(vars[v], std::move(x));
            }
            ++verdict.assignments;
            if (!holds_at(a, e, env))
                return fail(env);
        }
        return verdict;
    }
    case CheckMode::Kind::Atoms: {
        if (!join_preserving(e))
            throw ValidationError("atoms mode needs a join-preserving equation: " + to_string(e));
        std::vector<std::size_t> choice(vars.size(), 0); // 0 means the zero element, k means atom k-1
        Assignment env;
        while (true) {
            for (std::size_t v = 0; v < vars.size(); ++v)
                env.insert_or_assign(vars[v], choice[v] == 0 ? a.zero() : a.atom(static_cast<int>(choice[v] - 1)));
            ++verdict.assignments;
            if (!holds_at(a, e, env))
                return fail(env);
            std::size_t v = 0;
            while (v < vars.size() && ++choice[v] > n)
                choice[v++] = 0;
            if (v == vars.size())
                break;
        }
        return verdict;
    }
    case CheckMode::Kind::Sampled: {
        std::mt19937_64 rng(mode.seed);
        Assignment env;
        for (std::size_t t = 0; t < std::max<std::size_t>(mode.trials, 1); ++t) {
            for (const auto& v : vars)
                env.insert_or_assign(v, random_element(rng, n));
            ++verdict.assignments;
            if (!holds_at(a, e, env))
                return fail(env);
            if (vars.empty())
                break;
        }
        verdict.definitive = vars.empty();
        return verdict;
    }
    }
    return verdict;
}

bool VarietyReport::all_hold() const
{
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.verdict.holds; });
}

bool VarietyReport::definitive() const
{
    if (!all_hold())
        return true;
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.verdict.definitive; });
}

const VarietyReport::Entry* VarietyReport::first_failure() const
{
    for (const auto& e : entries)
        if (!e.verdict.holds)
            return &e;
    return nullptr;
}

VarietyReport check_variety(const FiniteBAO& algebra, const std::vector<NamedEquation>& sigma, const CheckMode& mode)
{
    VarietyReport r;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        CheckMode m = mode;
        // distinct but reproducible streams per equation
        if (m.kind == CheckMode::Kind::Sampled)
            m.seed = mode.seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        Verdict v = check_equation(algebra, sigma[k].equation, m);
        v.mode.seed = mode.seed;
        r.entries.push_back({sigma[k], std::move(v)});
    }
    return r;
}

} // namespace cylkit
