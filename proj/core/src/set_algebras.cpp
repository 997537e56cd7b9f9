#include "cylkit/set_algebras.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>

namespace cylkit {

std::size_t TupleSpace::size() const
{
    std::size_t s = 1;
    for (int k = 0; k < n; ++k)
        s *= static_cast<std::size_t>(u);
    return s;
}

std::vector<int> TupleSpace::decode(std::size_t index) const
{
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        t[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(u));
        index /= static_cast<std::size_t>(u);
    }
    return t;
}

std::size_t TupleSpace::encode(const std::vector<int>& tuple) const
{
    std::size_t v = 0;
    for (int x : tuple)
        v = v * static_cast<std::size_t>(u) + static_cast<std::size_t>(x);
    return v;
}

std::string TupleSpace::label(std::size_t index) const
{
    std::string s = "(";
    const auto t = decode(index);
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k)
            s += ',';
        s += std::to_string(t[k]);
    }
    return s + ")";
}

std::size_t TupleSpace::with(std::size_t index, int i, int v) const
{
    auto t = decode(index);
    t[static_cast<std::size_t>(i)] = v;
    return encode(t);
}

Transformation transposition(int n, int i, int j)
{
    Transformation t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        t[static_cast<std::size_t>(k)] = k == i ? j : k == j ? i : k;
    return t;
}

namespace {

TupleSpace checked_space(int n, int u, std::size_t max_tuples)
{
    if (n < 1 || u < 1)
        throw ValidationError("a set algebra needs dimension >= 1 and a nonempty base");
    double count = 1;
    for (int k = 0; k < n; ++k)
        count *= u;
    if (count > static_cast<double>(max_tuples))
        throw CapExceeded(std::to_string(u) + "^" + std::to_string(n) + " tuples exceed the cap of " +
                          std::to_string(max_tuples));
    return TupleSpace{n, u};
}

void add_diagonals(AtomStructure& s, const TupleSpace& ts)
{
    for (int i = 0; i < ts.n; ++i)
        for (int j = i; j < ts.n; ++j) {
            s.signature.diagonals.emplace_back(i, j);
            auto& members = s.constants[diagonal_name(i, j)];
            for (std::size_t t = 0; t < ts.size(); ++t) {
                const auto v = ts.decode(t);
                if (v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(j)])
                    members.push_back(static_cast<int>(t));
            }
        }
}

void add_substitution(AtomStructure& s, const TupleSpace& ts, const std::string& name, const Transformation& tau)
{
    auto& pairs = s.unary[name];
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const auto v = ts.decode(t);
        std::vector<int> w(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            w[k] = v[static_cast<std::size_t>(tau[k])];
        pairs.emplace_back(static_cast<int>(t), static_cast<int>(ts.encode(w)));
    }
}

} // namespace

FiniteBAO full_set_algebra(int n, int u, const FullSetOptions& options)
{
    const TupleSpace ts = checked_space(n, u, options.max_tuples);
    AtomStructure s;
    s.signature.dimension = n;
    for (std::size_t t = 0; t < ts.size(); ++t)
        s.atoms.push_back(ts.label(t));
    for (int i = 0; i < n; ++i) {
        s.signature.cylindrifiers.push_back(i);
        auto& pairs = s.unary[cylindrifier_name(i)];
        for (std::size_t t = 0; t < ts.size(); ++t)
            for (int v = 0; v < u; ++v)
                pairs.emplace_back(static_cast<int>(t), static_cast<int>(ts.with(t, i, v)));
    }
    add_diagonals(s, ts);
    for (const auto& tau : options.substitutions) {
        if (static_cast<int>(tau.size()) != n)
            throw ValidationError("substitution " + substitution_name(tau) + " must have one image per coordinate");
        for (int k : tau)
            if (k < 0 || k >= n)
                throw ValidationError("substitution " + substitution_name(tau) + " maps outside the dimension");
        s.signature.substitutions.push_back(tau);
        add_substitution(s, ts, substitution_name(tau), tau);
    }
    if (options.transpositions)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                s.signature.transpositions.emplace_back(i, j);
                add_substitution(s, ts, transposition_name(i, j), transposition(n, i, j));
            }
    return FiniteBAO(std::move(s));
}

bool DirectedBase::related(int x, int y) const { return std::find(r.begin(), r.end(), AtomPair{x, y}) != r.end(); }

BaseClass classify_base(const DirectedBase& base)
{
    const int u = base.u;
    if (u < 1)
        throw ValidationError("a base structure needs a nonempty universe");
    for (auto [x, y] : base.r)
        if (x < 0 || y < 0 || x >= u || y >= u)
            throw ValidationError("base relation refers to a point outside U");
    std::vector<std::vector<bool>> rel(static_cast<std::size_t>(u), std::vector<bool>(static_cast<std::size_t>(u), false));
    for (auto [x, y] : base.r)
        rel[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
    auto R = [&](int x, int y) { return static_cast<bool>(rel[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]); };

    BaseClass c{true, true, true};
    for (int x = 0; x < u; ++x)
        for (int y = 0; y < u; ++y) {
            bool weak = false;
            bool pair = false;
            for (int z = 0; z < u; ++z) {
                weak = weak || (R(x, z) && R(y, z));
                bool exact = true;
                for (int w = 0; w < u; ++w)
                    exact = exact && (R(w, z) == (w == x || w == y));
                pair = pair || exact;
            }
            c.weak_p = c.weak_p && weak;
            c.p_structure = c.p_structure && pair;
        }
    for (int x = 0; x < u; ++x)
        for (int y = x + 1; y < u; ++y) {
            bool same = true;
            for (int z = 0; z < u; ++z)
                same = same && (R(z, x) == R(z, y));
            if (same)
                c.extensional = false;
        }
    return c;
}

FiniteBAO directed_set_algebra(int alpha, const DirectedBase& base, std::size_t max_tuples)
{
    if (!classify_base(base).weak_p)
        throw ValidationError("directed set algebras need a weak P-structure as base");
    const TupleSpace ts = checked_space(alpha, base.u, max_tuples);
    AtomStructure s;
    s.signature.dimension = alpha;
    for (std::size_t t = 0; t < ts.size(); ++t)
        s.atoms.push_back(ts.label(t));
    for (int i = 0; i < alpha; ++i) {
        s.signature.cylindrifiers.push_back(i);
        s.signature.quasi.push_back(i);
        auto& up = s.unary[cylindrifier_name(i)];
        auto& down = s.unary[quasi_name(i)];
        for (std::size_t t = 0; t < ts.size(); ++t) {
            const int si = ts.decode(t)[static_cast<std::size_t>(i)];
            for (int v = 0; v < base.u; ++v) {
                const auto z = static_cast<int>(ts.with(t, i, v));
                if (base.related(v, si))
                    up.emplace_back(static_cast<int>(t), z);
                if (base.related(si, v))
                    down.emplace_back(static_cast<int>(t), z);
            }
        }
    }
    add_diagonals(s, ts);
    return FiniteBAO(std::move(s));
}

FiniteBAO cylindric_reduct(const FiniteBAO& algebra)
{
    const Signature& src = algebra.signature();
    Signature sig;
    sig.dimension = src.dimension;
    sig.cylindrifiers = src.cylindrifiers;
    sig.diagonals = src.diagonals;
    std::vector<std::pair<std::string, std::string>> unary_map;
    std::vector<std::pair<std::string, std::string>> constant_map;
    for (int i : sig.cylindrifiers)
        unary_map.emplace_back(cylindrifier_name(i), cylindrifier_name(i));
    for (auto [i, j] : sig.diagonals)
        constant_map.emplace_back(diagonal_name(i, j), diagonal_name(i, j));
    std::vector<Element> blocks;
    for (int a = 0; a < static_cast<int>(algebra.atom_count()); ++a)
        blocks.push_back(algebra.atom(a));
    return FiniteBAO(block_frame(algebra, blocks, sig, unary_map, constant_map));
}

namespace {

using Mask = std::uint64_t;

struct RepSearch {
    const FiniteBAO& a;
    TupleSpace ts;
    int atoms = 0;
    std::vector<std::vector<Mask>> cls; // [i][atom]: T_i-witnesses
    std::vector<Mask> allowed; // per tuple, from the diagonals
    std::vector<std::vector<std::size_t>> line_of; // [i][tuple] -> line id
    std::vector<std::vector<std::vector<std::size_t>>> lines; // [i][line] -> tuples
    std::vector<bool> constant_tuple;

    struct State {
        std::vector<int> owner;
        std::vector<std::vector<int>> line_assigned; // [i][line]
        std::vector<int> used; // per atom, number of tuples
        int used_atoms = 0;
        std::size_t nodes = 0;
    };

    RepSearch(const FiniteBAO& alg, int n, int u) : a(alg), ts{n, u}, atoms(static_cast<int>(alg.atom_count()))
    {
        const std::size_t size = ts.size();
        cls.assign(static_cast<std::size_t>(n), std::vector<Mask>(static_cast<std::size_t>(atoms), 0));
        for (int i = 0; i < n; ++i)
            for (int x = 0; x < atoms; ++x)
                for (int y : a.witnesses(cylindrifier_name(i), x))
                    cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] |= Mask{1} << y;
        allowed.assign(size, (Mask{1} << atoms) - 1);
        constant_tuple.assign(size, false);
        for (std::size_t t = 0; t < size; ++t) {
            const auto v = ts.decode(t);
            constant_tuple[t] = std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; });
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const Element& d = a.constant(diagonal_name(i, j));
                    const bool on = v[static_cast<std::size_t>(i)] == v[static_cast<std::size_t>(j)];
                    for (int x = 0; x < atoms; ++x)
                        if (d.test(static_cast<std::size_t>(x)) != on)
                            allowed[t] &= ~(Mask{1} << x);
                }
        }
        line_of.assign(static_cast<std::size_t>(n), std::vector<std::size_t>(size, 0));
        lines.assign(static_cast<std::size_t>(n), {});
        for (int i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < size; ++t)
                if (ts.decode(t)[static_cast<std::size_t>(i)] == 0) {
                    const std::size_t id = lines[static_cast<std::size_t>(i)].size();
                    lines[static_cast<std::size_t>(i)].emplace_back();
                    for (int v = 0; v < u; ++v) {
                        const std::size_t s = ts.with(t, i, v);
                        line_of[static_cast<std::size_t>(i)][s] = id;
                        lines[static_cast<std::size_t>(i)][id].push_back(s);
                    }
                }
        }
    }

    State fresh() const
    {
        State s;
        s.owner.assign(ts.size(), -1);
        for (const auto& l : lines)
            s.line_assigned.emplace_back(l.size(), 0);
        s.used.assign(static_cast<std::size_t>(atoms), 0);
        return s;
    }

    bool fits(const State& s, std::size_t t, int x) const
    {
        if (!(allowed[t] >> x & 1u))
            return false;
        if (constant_tuple[t] && t != 0) {
            // previous constant tuple is (v-1, ..., v-1)
            std::size_t prev = 0;
            for (std::size_t q = t; q-- > 0;)
                if (constant_tuple[q]) {
                    prev = q;
                    break;
                }
            if (x < s.owner[prev])
                return false;
        }
        for (int i = 0; i < ts.n; ++i) {
            const Mask want = cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
            const auto& line = lines[static_cast<std::size_t>(i)][line_of[static_cast<std::size_t>(i)][t]];
            Mask have = Mask{1} << x;
            for (std::size_t w : line) {
                const int o = s.owner[w];
                if (o < 0)
                    continue;
                if (!(want >> o & 1u) || !(cls[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)] >> x & 1u))
                    return false;
                have |= Mask{1} << o;
            }
            const int open = static_cast<int>(line.size()) - 1 -
                             s.line_assigned[static_cast<std::size_t>(i)][line_of[static_cast<std::size_t>(i)][t]];
            if (std::popcount(want & ~have) > open)
                return false;
        }
        return true;
    }

    void place(State& s, std::size_t t, int x) const
    {
        s.owner[t] = x;
        for (int i = 0; i < ts.n; ++i)
            ++s.line_assigned[static_cast<std::size_t>(i)][line_of[static_cast<std::size_t>(i)][t]];
        if (s.used[static_cast<std::size_t>(x)]++ == 0)
            ++s.used_atoms;
    }

    void unplace(State& s, std::size_t t) const
    {
        const int x = s.owner[t];
        s.owner[t] = -1;
        for (int i = 0; i < ts.n; ++i)
            --s.line_assigned[static_cast<std::size_t>(i)][line_of[static_cast<std::size_t>(i)][t]];
        if (--s.used[static_cast<std::size_t>(x)] == 0)
            --s.used_atoms;
    }

    bool rec(State& s, std::size_t t) const
    {
        ++s.nodes;
        if (t == ts.size())
            return s.used_atoms == atoms;
        if (static_cast<int>(ts.size() - t) < atoms - s.used_atoms)
            return false;
        for (int x = 0; x < atoms; ++x) {
            if (!fits(s, t, x))
                continue;
            place(s, t, x);
            if (rec(s, t + 1))
                return true;
            unplace(s, t);
        }
        return false;
    }

    MorphismWitness witness(const State& s, const FiniteBAO& target) const
    {
        std::vector<Element> images(static_cast<std::size_t>(atoms), target.zero());
        for (std::size_t t = 0; t < ts.size(); ++t)
            images[static_cast<std::size_t>(s.owner[t])].set(t);
        return check_homomorphism(a, target, std::move(images), {true, false});
    }
};

} // namespace

RepresentationResult representation_search(const FiniteBAO& algebra, const RepresentationOptions& options)
{
    const Signature& sig = algebra.signature();
    const int n = sig.dimension;
    if (!(sig == cylindric_signature(n)))
        throw ValidationError("representation search needs a CA_n signature; take the cylindric reduct first");
    if (n < 1 || n > 3)
        throw CapExceeded("representation search supports dimensions 1 to 3");
    if (options.max_base < 1 || options.max_base > 5)
        throw CapExceeded("representation search supports bases of size 1 to 5");
    if (algebra.atom_count() > options.max_atoms || algebra.atom_count() > 63)
        throw CapExceeded("representation search is capped at " + std::to_string(options.max_atoms) + " atoms");

    RepresentationResult result;
    for (int i = 0; i < n; ++i)
        if (!is_equivalence(algebra, cylindrifier_name(i)))
            return result; // every representation makes T_i an equivalence

    for (int u = 1; u <= options.max_base; ++u) {
        result.base = u;
        const RepSearch search(algebra, n, u);
        std::optional<RepSearch::State> solved;
        if (options.jobs <= 1) {
            auto s = search.fresh();
            const bool ok = search.rec(s, 0);
            result.nodes += s.nodes;
            if (ok)
                solved = std::move(s);
        } else {
            // branch on the owner of tuple 0; the first success in atom order wins
            std::vector<int> firsts;
            {
                auto s = search.fresh();
                for (int x = 0; x < search.atoms; ++x)
                    if (search.fits(s, 0, x))
                        firsts.push_back(x);
            }
            for (std::size_t start = 0; start < firsts.size() && !solved; start += options.jobs) {
                std::vector<std::future<std::pair<bool, RepSearch::State>>> batch;
                for (std::size_t k = start; k < std::min(firsts.size(), start + options.jobs); ++k)
                    batch.push_back(std::async(std::launch::async, [&search, x = firsts[k]] {
                        auto s = search.fresh();
                        search.place(s, 0, x);
                        const bool ok = search.rec(s, 1);
                        return std::make_pair(ok, std::move(s));
                    }));
                for (auto& f : batch) {
                    auto [ok, s] = f.get();
                    result.nodes += s.nodes;
                    if (ok && !solved)
                        solved = std::move(s);
                }
            }
        }
        if (solved) {
            FiniteBAO target = full_set_algebra(n, u);
            result.witness = search.witness(*solved, target);
            if (!result.witness.ok())
                throw Error("representation search produced an unverified map: " + result.witness.failure);
            result.found = true;
            result.target = std::move(target);
            return result;
        }
    }
    return result;
}

} // namespace cylkit
