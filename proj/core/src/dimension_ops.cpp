#include "cylkit/dimension_ops.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cylkit {

std::vector<int> dimension_set(const FiniteBAO& algebra, const Element& x)
{
    std::vector<int> out;
    for (int i : algebra.signature().cylindrifiers)
        if (algebra.apply(cylindrifier_name(i), x) != x)
            out.push_back(i);
    return out;
}

bool is_equivalence(const FiniteBAO& algebra, const std::string& op)
{
    const int n = static_cast<int>(algebra.atom_count());
    for (int a = 0; a < n; ++a) {
        auto img = algebra.image(op, a);
        if (!std::binary_search(img.begin(), img.end(), a))
            return false;
        // symmetric and transitive: every related atom has the same image
        for (int b : img) {
            auto other = algebra.image(op, b);
            if (!std::equal(img.begin(), img.end(), other.begin(), other.end()))
                return false;
        }
    }
    return true;
}

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<int> parent;
};

// Joint classes of the given equivalence operators, ordered by smallest member.
std::vector<Element> joint_classes(const FiniteBAO& algebra, const std::vector<std::string>& ops, std::vector<int>& atom_map)
{
    const std::size_t n = algebra.atom_count();
    UnionFind uf(n);
    for (const auto& op : ops)
        for (auto [a, b] : algebra.frame().unary.at(op))
            uf.unite(a, b);
    std::vector<int> class_of_root(n, -1);
    std::vector<Element> classes;
    atom_map.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        const int r = uf.find(static_cast<int>(a));
        if (class_of_root[static_cast<std::size_t>(r)] == -1) {
            class_of_root[static_cast<std::size_t>(r)] = static_cast<int>(classes.size());
            classes.emplace_back(n);
        }
        const int c = class_of_root[static_cast<std::size_t>(r)];
        classes[static_cast<std::size_t>(c)].set(a);
        atom_map[a] = c;
    }
    return classes;
}

std::vector<int> complement_indices(const Signature& sig, const std::vector<int>& indices)
{
    std::vector<int> out;
    for (int i = 0; i < sig.dimension; ++i)
        if (!std::binary_search(indices.begin(), indices.end(), i))
            out.push_back(i);
    return out;
}

} // namespace

NeatReductResult neat_reduct(const FiniteBAO& algebra, std::vector<int> indices)
{
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    const Signature& sig = algebra.signature();
    for (int i : indices)
        if (i < 0 || i >= sig.dimension)
            throw ValidationError("neat reduct index " + std::to_string(i) + " outside dimension " + std::to_string(sig.dimension));

    std::vector<std::string> dropped_ops;
    for (int i : complement_indices(sig, indices)) {
        if (!std::binary_search(sig.cylindrifiers.begin(), sig.cylindrifiers.end(), i))
            throw ValidationError("neat reduct needs c" + std::to_string(i) + " but the signature has none");
        const std::string name = cylindrifier_name(i);
        if (!is_equivalence(algebra, name))
            throw ValidationError("T_" + std::to_string(i) + " is not an equivalence relation; use the raw element mode");
        dropped_ops.push_back(name);
    }

    NeatReductResult result{algebra, {}, {}};
    result.classes = joint_classes(algebra, dropped_ops, result.atom_map);

    std::vector<int> beta(static_cast<std::size_t>(sig.dimension), -1);
    for (std::size_t k = 0; k < indices.size(); ++k)
        beta[static_cast<std::size_t>(indices[k])] = static_cast<int>(k);
    auto kept = [&](int i) { return beta[static_cast<std::size_t>(i)] >= 0; };

    Signature out;
    out.dimension = static_cast<int>(indices.size());
    std::vector<std::pair<std::string, std::string>> unary_map;
    std::vector<std::pair<std::string, std::string>> constant_map;
    for (int i : sig.cylindrifiers)
        if (kept(i)) {
            out.cylindrifiers.push_back(beta[static_cast<std::size_t>(i)]);
            unary_map.emplace_back(cylindrifier_name(beta[static_cast<std::size_t>(i)]), cylindrifier_name(i));
        }
    for (int i : sig.quasi)
        if (kept(i)) {
            out.quasi.push_back(beta[static_cast<std::size_t>(i)]);
            unary_map.emplace_back(quasi_name(beta[static_cast<std::size_t>(i)]), quasi_name(i));
        }
    for (auto [i, j] : sig.diagonals)
        if (kept(i) && kept(j)) {
            const int bi = beta[static_cast<std::size_t>(i)];
            const int bj = beta[static_cast<std::size_t>(j)];
            out.diagonals.emplace_back(bi, bj);
            constant_map.emplace_back(diagonal_name(bi, bj), diagonal_name(i, j));
        }
    for (auto [i, j] : sig.transpositions)
        if (kept(i) && kept(j)) {
            const int bi = beta[static_cast<std::size_t>(i)];
            const int bj = beta[static_cast<std::size_t>(j)];
            out.transpositions.emplace_back(bi, bj);
            unary_map.emplace_back(transposition_name(bi, bj), transposition_name(i, j));
        }
    for (const auto& tau : sig.substitutions) {
        bool ok = true;
        Transformation reduced(indices.size());
        for (int k = 0; k < sig.dimension && ok; ++k) {
            const int img = tau[static_cast<std::size_t>(k)];
            if (!kept(k))
                ok = img == k;
            else if (!kept(img))
                ok = false;
            else
                reduced[static_cast<std::size_t>(beta[static_cast<std::size_t>(k)])] = beta[static_cast<std::size_t>(img)];
        }
        if (ok) {
            out.substitutions.push_back(reduced);
            unary_map.emplace_back(substitution_name(reduced), substitution_name(tau));
        }
    }
    out.normalize();
    result.algebra = FiniteBAO(block_frame(algebra, result.classes, out, unary_map, constant_map));
    return result;
}

std::vector<Element> neat_reduct_elements(const FiniteBAO& algebra, const std::vector<int>& indices, std::size_t max_atoms)
{
    const std::size_t n = algebra.atom_count();
    if (n > max_atoms)
        throw CapExceeded("raw neat reduct enumerates 2^" + std::to_string(n) + " elements; cap is 2^" + std::to_string(max_atoms));
    std::vector<int> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> ops;
    for (int i : complement_indices(algebra.signature(), sorted))
        ops.push_back(cylindrifier_name(i));
    std::vector<Element> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Element x(n);
        for (std::size_t b = 0; b < n; ++b)
            if ((mask >> b) & 1U)
                x.set(b);
        if (std::all_of(ops.begin(), ops.end(), [&](const std::string& op) { return algebra.apply(op, x) == x; }))
            out.push_back(std::move(x));
    }
    return out;
}

FiniteBAO reduct_rho(const FiniteBAO& algebra, const std::vector<int>& rho)
{
    const Signature& sig = algebra.signature();
    std::vector<int> inverse(static_cast<std::size_t>(sig.dimension), -1);
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const int v = rho[k];
        if (v < 0 || v >= sig.dimension)
            throw ValidationError("reduct map sends " + std::to_string(k) + " outside dimension " + std::to_string(sig.dimension));
        if (inverse[static_cast<std::size_t>(v)] != -1)
            throw ValidationError("reduct map is not injective at " + std::to_string(v));
        inverse[static_cast<std::size_t>(v)] = static_cast<int>(k);
    }
    auto has = [](const auto& v, const auto& x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    const auto& src = algebra.frame();
    const int alpha = static_cast<int>(rho.size());

    AtomStructure out;
    out.atoms = src.atoms;
    out.signature.dimension = alpha;
    out.signature.relation_algebra = sig.relation_algebra;
    out.signature.extra_unary = sig.extra_unary;
    out.signature.extra_constants = sig.extra_constants;
    for (int i = 0; i < alpha; ++i) {
        const int ri = rho[static_cast<std::size_t>(i)];
        if (has(sig.cylindrifiers, ri)) {
            out.signature.cylindrifiers.push_back(i);
            out.unary[cylindrifier_name(i)] = src.unary.at(cylindrifier_name(ri));
        }
        if (has(sig.quasi, ri)) {
            out.signature.quasi.push_back(i);
            out.unary[quasi_name(i)] = src.unary.at(quasi_name(ri));
        }
        for (int j = i; j < alpha; ++j) {
            const int rj = rho[static_cast<std::size_t>(j)];
            if (has(sig.diagonals, AtomPair{std::min(ri, rj), std::max(ri, rj)})) {
                out.signature.diagonals.emplace_back(i, j);
                out.constants[diagonal_name(i, j)] = src.constants.at(diagonal_name(ri, rj));
            }
            if (i != j && has(sig.transpositions, AtomPair{std::min(ri, rj), std::max(ri, rj)})) {
                out.signature.transpositions.emplace_back(i, j);
                out.unary[transposition_name(i, j)] = src.unary.at(transposition_name(ri, rj));
            }
        }
    }
    for (const auto& tau : sig.substitutions) {
        Transformation reduced(rho.size());
        bool ok = true;
        for (int k = 0; k < sig.dimension && ok; ++k) {
            const int img = tau[static_cast<std::size_t>(k)];
            const int pre = inverse[static_cast<std::size_t>(k)];
            if (pre < 0)
                ok = img == k;
            else if (inverse[static_cast<std::size_t>(img)] < 0)
                ok = false;
            else
                reduced[static_cast<std::size_t>(pre)] = inverse[static_cast<std::size_t>(img)];
        }
        if (ok) {
            out.signature.substitutions.push_back(reduced);
            out.unary[substitution_name(reduced)] = src.unary.at(substitution_name(tau));
        }
    }
    if (sig.relation_algebra) {
        out.unary[kConverseName] = src.unary.at(kConverseName);
        out.constants[kIdentityName] = src.constants.at(kIdentityName);
        out.has_composition = true;
        out.composition = src.composition;
    }
    for (const auto& name : sig.extra_unary)
        out.unary[name] = src.unary.at(name);
    for (const auto& name : sig.extra_constants)
        out.constants[name] = src.constants.at(name);
    return FiniteBAO(std::move(out));
}

FiniteBAO relativize(const FiniteBAO& algebra, const Element& x)
{
    algebra.require_member(x);
    if (x.none())
        throw ValidationError("cannot relativize to 0");
    const auto& src = algebra.frame();
    const auto kept = x.atoms();
    std::vector<int> index(algebra.atom_count(), -1);
    for (std::size_t k = 0; k < kept.size(); ++k)
        index[static_cast<std::size_t>(kept[k])] = static_cast<int>(k);

    AtomStructure out;
    out.signature = src.signature;
    for (int a : kept)
        out.atoms.push_back(src.atoms[static_cast<std::size_t>(a)]);
    for (const auto& [name, pairs] : src.unary) {
        auto& dst = out.unary[name];
        for (auto [a, b] : pairs)
            if (index[static_cast<std::size_t>(a)] >= 0 && index[static_cast<std::size_t>(b)] >= 0)
                dst.emplace_back(index[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(b)]);
    }
    for (const auto& [name, members] : src.constants) {
        auto& dst = out.constants[name];
        for (int a : members)
            if (index[static_cast<std::size_t>(a)] >= 0)
                dst.push_back(index[static_cast<std::size_t>(a)]);
    }
    if (src.has_composition) {
        out.has_composition = true;
        const int k = static_cast<int>(kept.size());
        out.composition = Consistency(static_cast<std::size_t>(k), false);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c)
                    out.composition.set(a, b, c, src.composition.consistent(kept[static_cast<std::size_t>(a)],
                                                                            kept[static_cast<std::size_t>(b)],
                                                                            kept[static_cast<std::size_t>(c)]));
        if (algebra.apply(kConverseName, x) != x)
            throw ValidationError("relativizing element is not closed under converse");
    }
    return FiniteBAO(std::move(out));
}

RaCoordinates default_ra_coordinates(int n)
{
    if (n < 3)
        throw ValidationError("relation algebra reduct needs dimension at least 3");
    return {n - 2, n - 1, 0};
}

TermPtr ra_composition_term(const RaCoordinates& co, const std::string& x, const std::string& y)
{
    using namespace term;
    return c(co.spare, meet({s(co.b, co.spare, var(x)), s(co.a, co.spare, var(y))}));
}

TermPtr ra_converse_term(const RaCoordinates& co, const std::string& x)
{
    using namespace term;
    return s(co.spare, co.b, s(co.b, co.a, s(co.a, co.spare, var(x))));
}

bool ra_associative(const FiniteBAO& algebra)
{
    const int n = static_cast<int>(algebra.atom_count());
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Element xy = algebra.compose_atoms(x, y);
            for (int z = 0; z < n; ++z) {
                if (algebra.compose(xy, algebra.atom(z)) != algebra.compose(algebra.atom(x), algebra.compose_atoms(y, z)))
                    return false;
            }
        }
    return true;
}

RaReductResult ra_reduct(const FiniteBAO& algebra, std::optional<RaCoordinates> coordinates)
{
    const Signature& sig = algebra.signature();
    const int n = sig.dimension;
    const RaCoordinates co = coordinates ? *coordinates : default_ra_coordinates(n);
    if (n < 3)
        throw ValidationError("relation algebra reduct needs dimension at least 3");
    for (int i : {co.a, co.b, co.spare})
        if (i < 0 || i >= n)
            throw ValidationError("relation algebra coordinate outside dimension");
    if (co.a == co.b || co.spare == co.a || co.spare == co.b)
        throw ValidationError("relation algebra coordinates must be distinct");

    NeatReductResult nr = neat_reduct(algebra, {co.a, co.b});
    RaReductResult result{algebra, nr.classes, nr.atom_map, false};
    const auto& classes = nr.classes;
    const int k = static_cast<int>(classes.size());
    const TermPtr comp = ra_composition_term(co);
    const TermPtr conv = ra_converse_term(co);

    AtomStructure out;
    out.signature.relation_algebra = true;
    for (const auto& cl : classes)
        out.atoms.push_back(block_label(algebra, cl));
    out.constants[kIdentityName] = decompose(classes, algebra.constant(diagonal_name(co.a, co.b)), "the identity");
    auto& conv_pairs = out.unary[kConverseName];
    for (int y = 0; y < k; ++y) {
        const Element img = eval(conv, algebra, {{"x", classes[static_cast<std::size_t>(y)]}});
        for (int x : decompose(classes, img, "converse"))
            conv_pairs.emplace_back(x, y);
    }
    out.has_composition = true;
    out.composition = Consistency(static_cast<std::size_t>(k), false);
    for (int y = 0; y < k; ++y)
        for (int z = 0; z < k; ++z) {
            const Element img =
                eval(comp, algebra, {{"x", classes[static_cast<std::size_t>(y)]}, {"y", classes[static_cast<std::size_t>(z)]}});
            for (int x : decompose(classes, img, "composition"))
                out.composition.set(x, y, z, true);
        }
    result.algebra = FiniteBAO(std::move(out));
    result.associative = ra_associative(result.algebra);
    return result;
}

bool CorrespondentReport::holds() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CorrespondentCheck& c) { return c.holds; });
}

const CorrespondentCheck* CorrespondentReport::first_violation() const
{
    for (const auto& c : checks)
        if (!c.holds)
            return &c;
    return nullptr;
}

namespace {

using Relation = std::vector<std::vector<bool>>; // rel[a][b]: (a, b) in T

Relation to_matrix(const std::vector<AtomPair>& pairs, std::size_t n)
{
    Relation r(n, std::vector<bool>(n, false));
    for (auto [a, b] : pairs)
        r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    return r;
}

std::vector<bool> to_set(const std::vector<int>& members, std::size_t n)
{
    std::vector<bool> s(n, false);
    for (int a : members)
        s[static_cast<std::size_t>(a)] = true;
    return s;
}

} // namespace

CorrespondentReport ca_frame_correspondents(const AtomStructure& frame, int n)
{
    CorrespondentReport report;
    const std::size_t size = frame.atoms.size();
    const auto& atoms = frame.atoms;
    auto add = [&](std::string check, bool holds, std::string witness) {
        report.checks.push_back({std::move(check), holds, std::move(witness)});
    };

    std::vector<Relation> T(static_cast<std::size_t>(n));
    std::vector<std::vector<std::vector<bool>>> E(static_cast<std::size_t>(n), std::vector<std::vector<bool>>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        auto it = frame.unary.find(cylindrifier_name(i));
        if (it == frame.unary.end()) {
            add("signature", false, "missing " + cylindrifier_name(i));
            return report;
        }
        T[static_cast<std::size_t>(i)] = to_matrix(it->second, size);
        for (int j = 0; j < n; ++j) {
            auto jt = frame.constants.find(diagonal_name(i, j));
            if (jt == frame.constants.end()) {
                add("signature", false, "missing " + diagonal_name(i, j));
                return report;
            }
            E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_set(jt->second, size);
        }
    }
    auto label = [&](std::size_t a) { return atoms[a]; };

    for (int i = 0; i < n; ++i) {
        const auto& t = T[static_cast<std::size_t>(i)];
        std::string w;
        for (std::size_t a = 0; a < size && w.empty(); ++a)
            if (!t[a][a])
                w = "T" + std::to_string(i) + " misses (" + label(a) + ", " + label(a) + ")";
        add("C2", w.empty(), w);

        w.clear();
        for (std::size_t a = 0; a < size && w.empty(); ++a)
            for (std::size_t b = 0; b < size && w.empty(); ++b) {
                if (!t[a][b])
                    continue;
                if (!t[b][a])
                    w = "T" + std::to_string(i) + " not symmetric at (" + label(a) + ", " + label(b) + ")";
                for (std::size_t c = 0; c < size && w.empty(); ++c)
                    if (t[b][c] && !t[a][c])
                        w = "T" + std::to_string(i) + " not transitive at " + label(a) + ", " + label(b) + ", " + label(c);
            }
        add("C3", w.empty(), w);
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& ti = T[static_cast<std::size_t>(i)];
            const auto& tj = T[static_cast<std::size_t>(j)];
            std::string w;
            for (std::size_t a = 0; a < size && w.empty(); ++a)
                for (std::size_t c = 0; c < size && w.empty(); ++c) {
                    bool ij = false;
                    bool ji = false;
                    for (std::size_t b = 0; b < size; ++b) {
                        ij = ij || (ti[a][b] && tj[b][c]);
                        ji = ji || (tj[a][b] && ti[b][c]);
                    }
                    if (ij != ji)
                        w = "T" + std::to_string(i) + "oT" + std::to_string(j) + " and T" + std::to_string(j) + "oT" +
                            std::to_string(i) + " differ at (" + label(a) + ", " + label(c) + ")";
                }
            add("C4", w.empty(), w);
        }

    for (int i = 0; i < n; ++i) {
        const auto& e = E[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        std::string w;
        for (std::size_t a = 0; a < size && w.empty(); ++a)
            if (!e[a])
                w = label(a) + " not in E" + std::to_string(i) + std::to_string(i);
        add("C5", w.empty(), w);
    }

    // T_k^*(S) at atom a
    auto reaches = [&](int k, std::size_t a, const std::vector<bool>& s) {
        for (std::size_t b = 0; b < size; ++b)
            if (T[static_cast<std::size_t>(k)][a][b] && s[b])
                return true;
        return false;
    };

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j)
                    continue;
                std::vector<bool> meet(size);
                for (std::size_t b = 0; b < size; ++b)
                    meet[b] = E[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)][b] &&
                              E[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][b];
                std::string w;
                for (std::size_t a = 0; a < size && w.empty(); ++a)
                    if (E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a] != reaches(k, a, meet))
                        w = "E" + std::to_string(i) + std::to_string(j) + " disagrees with T" + std::to_string(k) +
                            "*(E" + std::to_string(i) + std::to_string(k) + ".E" + std::to_string(k) + std::to_string(j) +
                            ") at " + label(a);
                add("C6", w.empty(), w);
            }

    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k)
                continue;
            std::string w;
            for (std::size_t a = 0; a < size && w.empty(); ++a)
                if (!reaches(k, a, E[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]))
                    w = label(a) + " not in T" + std::to_string(k) + "*(E" + std::to_string(i) + std::to_string(k) + ")";
            add("C6'", w.empty(), w);
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const auto& e = E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            std::string w;
            for (std::size_t a = 0; a < size && w.empty(); ++a) {
                int seen = -1;
                for (std::size_t b = 0; b < size && w.empty(); ++b) {
                    if (!T[static_cast<std::size_t>(i)][a][b] || !e[b])
                        continue;
                    if (seen >= 0)
                        w = label(a) + " has T" + std::to_string(i) + "-successors " + label(static_cast<std::size_t>(seen)) +
                            " and " + label(b) + " in E" + std::to_string(i) + std::to_string(j);
                    seen = static_cast<int>(b);
                }
            }
            add("C7", w.empty(), w);
        }
    return report;
}

CorrespondentReport ra_atom_axioms(const FiniteBAO& algebra)
{
    CorrespondentReport report;
    auto add = [&](std::string check, std::string witness) {
        const bool holds = witness.empty();
        report.checks.push_back({std::move(check), holds, std::move(witness)});
    };
    if (!algebra.signature().relation_algebra) {
        add("signature", "not a relation algebra signature");
        return report;
    }
    const int n = static_cast<int>(algebra.atom_count());
    auto lbl = [&](int a) { return algebra.atom_label(a); };
    std::vector<int> conv(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        const auto img = algebra.image(kConverseName, a);
        conv[static_cast<std::size_t>(a)] = img.size() == 1 ? img[0] : -1;
    }

    std::string w;
    for (int x = 0; x < n && w.empty(); ++x)
        for (int y = 0; y < n && w.empty(); ++y) {
            const Element xy = algebra.compose_atoms(x, y);
            for (int z = 0; z < n && w.empty(); ++z)
                if (algebra.compose(xy, algebra.atom(z)) != algebra.compose(algebra.atom(x), algebra.compose_atoms(y, z)))
                    w = "(" + lbl(x) + ";" + lbl(y) + ");" + lbl(z);
        }
    add("associativity", w);

    w.clear();
    const Element& id = algebra.constant(kIdentityName);
    for (int x = 0; x < n && w.empty(); ++x) {
        const Element a = algebra.atom(x);
        if (algebra.compose(a, id) != a || algebra.compose(id, a) != a)
            w = lbl(x);
    }
    add("identity", w);

    w.clear();
    for (int x = 0; x < n && w.empty(); ++x) {
        const int c = conv[static_cast<std::size_t>(x)];
        if (c < 0 || conv[static_cast<std::size_t>(c)] != x)
            w = lbl(x);
    }
    add("converse involution", w);
    if (!w.empty())
        return report;

    auto conv_el = [&](const Element& e) { return algebra.apply(kConverseName, e); };
    for (int x = 0; x < n && w.empty(); ++x)
        for (int y = 0; y < n && w.empty(); ++y)
            if (conv_el(algebra.compose_atoms(x, y)) !=
                algebra.compose_atoms(conv[static_cast<std::size_t>(y)], conv[static_cast<std::size_t>(x)]))
                w = lbl(x) + ", " + lbl(y);
    add("converse antidistribution", w);

    w.clear();
    for (int a = 0; a < n && w.empty(); ++a)
        for (int b = 0; b < n && w.empty(); ++b)
            for (int c = 0; c < n && w.empty(); ++c) {
                const bool t = algebra.consistent(a, b, c);
                if (t != algebra.consistent(b, a, conv[static_cast<std::size_t>(c)]) ||
                    t != algebra.consistent(c, conv[static_cast<std::size_t>(b)], a))
                    w = "(" + lbl(a) + ", " + lbl(b) + ", " + lbl(c) + ")";
            }
    add("Peircean law", w);
    return report;
}

} // namespace cylkit
