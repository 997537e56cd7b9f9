#include "cylkit/morphisms.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <map>

namespace cylkit {

Element MorphismWitness::apply(const Element& x) const
{
    if (images.empty())
        throw ValidationError("empty morphism");
    if (x.universe() != images.size())
        throw FrameMismatch("element has " + std::to_string(x.universe()) + " atoms, map is defined on " +
                            std::to_string(images.size()));
    Element out(images.front().universe());
    x.for_each([&](int a) { out |= images[static_cast<std::size_t>(a)]; });
    return out;
}

std::vector<int> MorphismWitness::atom_map() const
{
    std::vector<int> out;
    for (const auto& img : images) {
        if (img.count() != 1)
            throw ValidationError("map does not send atoms to atoms");
        out.push_back(static_cast<int>(*img.next()));
    }
    return out;
}

MorphismWitness check_homomorphism(const FiniteBAO& a, const FiniteBAO& b, std::vector<Element> images,
                                   MorphismRequire require)
{
    if (images.size() != a.atom_count())
        throw ValidationError("map gives " + std::to_string(images.size()) + " images for " +
                              std::to_string(a.atom_count()) + " atoms");
    for (const auto& img : images)
        b.require_member(img);

    MorphismWitness w;
    w.images = std::move(images);
    w.injective = std::all_of(w.images.begin(), w.images.end(), [](const Element& e) { return e.any(); });
    w.surjective = std::all_of(w.images.begin(), w.images.end(), [](const Element& e) { return e.count() <= 1; });

    auto fail = [&](std::string msg) {
        w.hom = w.complete = false;
        w.failure = std::move(msg);
        return w;
    };

    Element cover = b.zero();
    for (std::size_t x = 0; x < w.images.size(); ++x) {
        if (cover.intersects(w.images[x]))
            return fail("images of distinct atoms overlap at atom " + a.atom_label(static_cast<int>(x)));
        cover |= w.images[x];
    }
    if (!cover.is_full())
        return fail("images do not cover the unit of the target");

    for (const auto& op : a.signature().unary_names()) {
        if (!b.has_unary(op))
            return fail("target lacks operator " + op);
        for (std::size_t x = 0; x < w.images.size(); ++x) {
            const Element lhs = w.apply(a.apply(op, a.atom(static_cast<int>(x))));
            if (lhs != b.apply(op, w.images[x]))
                return fail(op + " is not preserved at atom " + a.atom_label(static_cast<int>(x)));
        }
    }
    for (const auto& name : a.signature().constant_names()) {
        if (!b.has_constant(name))
            return fail("target lacks constant " + name);
        if (w.apply(a.constant(name)) != b.constant(name))
            return fail(name + " is not preserved");
    }
    if (a.has_composition()) {
        if (!b.has_composition())
            return fail("target lacks composition");
        for (std::size_t x = 0; x < w.images.size(); ++x)
            for (std::size_t y = 0; y < w.images.size(); ++y) {
                const Element lhs = w.apply(a.compose_atoms(static_cast<int>(x), static_cast<int>(y)));
                if (lhs != b.compose(w.images[x], w.images[y]))
                    return fail("composition is not preserved at " + a.atom_label(static_cast<int>(x)) + " ; " +
                                a.atom_label(static_cast<int>(y)));
            }
    }
    w.hom = w.complete = true;
    if (require.injective && !w.injective)
        w.failure = "not injective";
    else if (require.surjective && !w.surjective)
        w.failure = "not surjective";
    return w;
}

MorphismWitness from_atom_map(const FiniteBAO& a, const FiniteBAO& b, const std::vector<int>& perm,
                              MorphismRequire require)
{
    std::vector<Element> images;
    for (int t : perm)
        images.push_back(b.atom(t));
    return check_homomorphism(a, b, std::move(images), require);
}

MorphismWitness compose(const FiniteBAO& a, const FiniteBAO& c, const MorphismWitness& f, const MorphismWitness& g)
{
    std::vector<Element> images;
    for (const auto& img : f.images)
        images.push_back(g.apply(img));
    return check_homomorphism(a, c, std::move(images));
}

namespace {

// Both frames on one vertex set: A's atoms first, then B's.
struct JointGraph {
    int na = 0;
    int n = 0;
    std::vector<std::vector<std::vector<int>>> out; // per op, per vertex
    std::vector<std::vector<std::vector<int>>> in;
    std::vector<std::vector<std::array<int, 3>>> comp; // per vertex: (position, other, other)
    std::vector<int> initial;
};

JointGraph build_joint(const FiniteBAO& a, const FiniteBAO& b)
{
    JointGraph g;
    g.na = static_cast<int>(a.atom_count());
    g.n = g.na + static_cast<int>(b.atom_count());
    const auto ops = a.signature().unary_names();
    const auto consts = a.signature().constant_names();
    g.out.assign(ops.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(g.n)));
    g.in = g.out;
    g.comp.assign(static_cast<std::size_t>(g.n), {});
    std::map<std::vector<int>, int> initial_ids;
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(g.n));

    auto load = [&](const FiniteBAO& alg, int offset) {
        const int size = static_cast<int>(alg.atom_count());
        for (std::size_t k = 0; k < ops.size(); ++k)
            for (int x = 0; x < size; ++x)
                for (int y : alg.witnesses(ops[k], x)) {
                    g.out[k][static_cast<std::size_t>(x + offset)].push_back(y + offset);
                    g.in[k][static_cast<std::size_t>(y + offset)].push_back(x + offset);
                }
        for (int x = 0; x < size; ++x)
            for (const auto& c : consts)
                keys[static_cast<std::size_t>(x + offset)].push_back(alg.constant(c).test(static_cast<std::size_t>(x)));
        if (alg.has_composition())
            for (int x = 0; x < size; ++x)
                for (int y = 0; y < size; ++y)
                    for (int z = 0; z < size; ++z)
                        if (alg.consistent(x, y, z)) {
                            g.comp[static_cast<std::size_t>(x + offset)].push_back({0, y + offset, z + offset});
                            g.comp[static_cast<std::size_t>(y + offset)].push_back({1, x + offset, z + offset});
                            g.comp[static_cast<std::size_t>(z + offset)].push_back({2, x + offset, y + offset});
                        }
    };
    load(a, 0);
    load(b, g.na);
    for (const auto& k : keys)
        initial_ids.emplace(k, 0);
    int id = 0;
    for (auto& [_, v] : initial_ids)
        v = id++;
    for (int v = 0; v < g.n; ++v)
        g.initial.push_back(initial_ids.at(keys[static_cast<std::size_t>(v)]));
    return g;
}

int colour_count(const std::vector<int>& colours) { return *std::max_element(colours.begin(), colours.end()) + 1; }

// Stable colouring; ids are assigned by sorted key, so equal structure gets equal ids on both sides.
void refine(const JointGraph& g, std::vector<int>& colours)
{
    int count = colour_count(colours);
    for (;;) {
        std::vector<std::vector<long>> keys(static_cast<std::size_t>(g.n));
        const long c = count;
        for (int v = 0; v < g.n; ++v) {
            auto& key = keys[static_cast<std::size_t>(v)];
            key.push_back(colours[static_cast<std::size_t>(v)]);
            std::vector<long> buf;
            for (std::size_t k = 0; k < g.out.size(); ++k) {
                for (const auto* adj : {&g.out[k][static_cast<std::size_t>(v)], &g.in[k][static_cast<std::size_t>(v)]}) {
                    buf.clear();
                    for (int u : *adj)
                        buf.push_back(colours[static_cast<std::size_t>(u)]);
                    std::sort(buf.begin(), buf.end());
                    key.push_back(-1);
                    key.insert(key.end(), buf.begin(), buf.end());
                }
            }
            if (!g.comp[static_cast<std::size_t>(v)].empty()) {
                buf.clear();
                for (const auto& [pos, u, w] : g.comp[static_cast<std::size_t>(v)])
                    buf.push_back((pos * c + colours[static_cast<std::size_t>(u)]) * c + colours[static_cast<std::size_t>(w)]);
                std::sort(buf.begin(), buf.end());
                key.push_back(-2);
                key.insert(key.end(), buf.begin(), buf.end());
            }
        }
        std::map<std::vector<long>, int> ids;
        for (const auto& k : keys)
            ids.emplace(k, 0);
        int id = 0;
        for (auto& [_, v] : ids)
            v = id++;
        for (int v = 0; v < g.n; ++v)
            colours[static_cast<std::size_t>(v)] = ids.at(keys[static_cast<std::size_t>(v)]);
        if (id == count)
            return;
        count = id;
    }
}

bool balanced(const JointGraph& g, const std::vector<int>& colours)
{
    std::vector<int> diff(static_cast<std::size_t>(colour_count(colours)), 0);
    for (int v = 0; v < g.n; ++v)
        diff[static_cast<std::size_t>(colours[static_cast<std::size_t>(v)])] += v < g.na ? 1 : -1;
    return std::all_of(diff.begin(), diff.end(), [](int d) { return d == 0; });
}

struct IsoSearch {
    const FiniteBAO& a;
    const FiniteBAO& b;
    const JointGraph& g;

    // Colour class to split next: smallest non-singleton, A vertex first; -1 when discrete.
    std::pair<int, std::vector<int>> branch(const std::vector<int>& colours) const
    {
        std::vector<int> size(static_cast<std::size_t>(colour_count(colours)), 0);
        for (int v = 0; v < g.na; ++v)
            ++size[static_cast<std::size_t>(colours[static_cast<std::size_t>(v)])];
        int best = -1;
        for (int c = 0; c < static_cast<int>(size.size()); ++c)
            if (size[static_cast<std::size_t>(c)] > 1 && (best < 0 || size[static_cast<std::size_t>(c)] < size[static_cast<std::size_t>(best)]))
                best = c;
        if (best < 0)
            return {-1, {}};
        int va = -1;
        std::vector<int> candidates;
        for (int v = 0; v < g.n; ++v)
            if (colours[static_cast<std::size_t>(v)] == best) {
                if (v < g.na && va < 0)
                    va = v;
                else if (v >= g.na)
                    candidates.push_back(v);
            }
        return {va, candidates};
    }

    std::vector<int> individualize(std::vector<int> colours, int va, int vb) const
    {
        const int fresh = colour_count(colours);
        colours[static_cast<std::size_t>(va)] = fresh;
        colours[static_cast<std::size_t>(vb)] = fresh;
        refine(g, colours);
        return colours;
    }

    std::optional<MorphismWitness> run(std::vector<int> colours) const
    {
        if (!balanced(g, colours))
            return std::nullopt;
        auto [va, candidates] = branch(colours);
        if (va < 0)
            return finish(colours);
        for (int vb : candidates)
            if (auto w = run(individualize(colours, va, vb)))
                return w;
        return std::nullopt;
    }

    std::optional<MorphismWitness> finish(const std::vector<int>& colours) const
    {
        std::vector<int> by_colour(static_cast<std::size_t>(colour_count(colours)), -1);
        for (int v = g.na; v < g.n; ++v)
            by_colour[static_cast<std::size_t>(colours[static_cast<std::size_t>(v)])] = v - g.na;
        std::vector<int> perm;
        for (int v = 0; v < g.na; ++v)
            perm.push_back(by_colour[static_cast<std::size_t>(colours[static_cast<std::size_t>(v)])]);
        auto w = from_atom_map(a, b, perm);
        if (!w.ok())
            return std::nullopt;
        return w;
    }
};

bool same_shape(const FiniteBAO& a, const FiniteBAO& b)
{
    return a.signature() == b.signature() && a.has_composition() == b.has_composition() &&
           a.atom_count() == b.atom_count();
}

} // namespace

std::optional<MorphismWitness> find_isomorphism(const FiniteBAO& a, const FiniteBAO& b, const SearchOptions& options)
{
    if (a.atom_count() > options.max_atoms || b.atom_count() > options.max_atoms)
        throw CapExceeded("isomorphism search is capped at " + std::to_string(options.max_atoms) + " atoms (got " +
                          std::to_string(a.atom_count()) + " and " + std::to_string(b.atom_count()) + ")");
    if (!same_shape(a, b))
        return std::nullopt;
    if (a.atom_count() == 0)
        return check_homomorphism(a, b, {}, {true, true});

    const JointGraph g = build_joint(a, b);
    IsoSearch search{a, b, g};
    std::vector<int> colours = g.initial;
    refine(g, colours);
    if (options.jobs <= 1 || !balanced(g, colours))
        return search.run(std::move(colours));

    auto [va, candidates] = search.branch(colours);
    if (va < 0)
        return search.finish(colours);
    // first successful branch in candidate order, as in the sequential search
    for (std::size_t start = 0; start < candidates.size(); start += options.jobs) {
        std::vector<std::future<std::optional<MorphismWitness>>> batch;
        for (std::size_t k = start; k < std::min(candidates.size(), start + options.jobs); ++k)
            batch.push_back(std::async(std::launch::async, [&, vb = candidates[k]] {
                return search.run(search.individualize(colours, va, vb));
            }));
        for (auto& f : batch)
            if (auto w = f.get())
                return w;
    }
    return std::nullopt;
}

std::optional<MorphismWitness> find_isomorphism_unpruned(const FiniteBAO& a, const FiniteBAO& b)
{
    if (a.atom_count() > 10 || b.atom_count() > 10)
        throw CapExceeded("unpruned isomorphism search is capped at 10 atoms");
    if (!same_shape(a, b))
        return std::nullopt;
    const int n = static_cast<int>(a.atom_count());
    const auto ops = a.signature().unary_names();
    const auto consts = a.signature().constant_names();
    auto rel = [](const FiniteBAO& alg, const std::string& op, int x, int y) {
        auto w = alg.witnesses(op, x);
        return std::find(w.begin(), w.end(), y) != w.end();
    };
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    auto fits = [&](int x) {
        const int px = perm[static_cast<std::size_t>(x)];
        for (const auto& c : consts)
            if (a.constant(c).test(static_cast<std::size_t>(x)) != b.constant(c).test(static_cast<std::size_t>(px)))
                return false;
        for (int y = 0; y <= x; ++y) {
            const int py = perm[static_cast<std::size_t>(y)];
            for (const auto& op : ops)
                if (rel(a, op, x, y) != rel(b, op, px, py) || rel(a, op, y, x) != rel(b, op, py, px))
                    return false;
            if (a.has_composition())
                for (int z = 0; z <= x; ++z) {
                    const int pz = perm[static_cast<std::size_t>(z)];
                    const int t[3] = {x, y, z};
                    const int pt[3] = {px, py, pz};
                    // every arrangement of the three atoms
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            for (int k = 0; k < 3; ++k)
                                if (a.consistent(t[i], t[j], t[k]) != b.consistent(pt[i], pt[j], pt[k]))
                                    return false;
                }
        }
        return true;
    };
    auto rec = [&](auto&& self, int x) -> bool {
        if (x == n)
            return true;
        for (int t = 0; t < n; ++t) {
            if (used[static_cast<std::size_t>(t)])
                continue;
            perm[static_cast<std::size_t>(x)] = t;
            used[static_cast<std::size_t>(t)] = true;
            if (fits(x) && self(self, x + 1))
                return true;
            used[static_cast<std::size_t>(t)] = false;
        }
        perm[static_cast<std::size_t>(x)] = -1;
        return false;
    };
    if (!rec(rec, 0))
        return std::nullopt;
    auto w = from_atom_map(a, b, perm);
    if (!w.ok())
        throw Error("unpruned search produced an unverified bijection: " + w.failure);
    return w;
}

std::vector<MorphismWitness> find_embeddings(const FiniteBAO& a, const FiniteBAO& d, std::size_t limit)
{
    if (d.atom_count() > 8)
        throw CapExceeded("embedding search is capped at 8 target atoms");
    std::vector<MorphismWitness> out;
    const int na = static_cast<int>(a.atom_count());
    const int nd = static_cast<int>(d.atom_count());
    if (na == 0 || na > nd)
        return out;
    const auto consts = a.signature().constant_names();
    for (const auto& c : consts)
        if (!d.has_constant(c))
            return out;
    std::vector<int> owner(static_cast<std::size_t>(nd), -1);
    auto rec = [&](auto&& self, int t) -> void {
        if (out.size() >= limit)
            return;
        if (t == nd) {
            std::vector<Element> images(static_cast<std::size_t>(na), d.zero());
            for (int u = 0; u < nd; ++u)
                images[static_cast<std::size_t>(owner[static_cast<std::size_t>(u)])].set(static_cast<std::size_t>(u));
            auto w = check_homomorphism(a, d, std::move(images), {true, false});
            if (w.ok())
                out.push_back(std::move(w));
            return;
        }
        for (int x = 0; x < na; ++x) {
            bool ok = true;
            for (const auto& c : consts)
                if (a.constant(c).test(static_cast<std::size_t>(x)) != d.constant(c).test(static_cast<std::size_t>(t)))
                    ok = false;
            if (!ok)
                continue;
            owner[static_cast<std::size_t>(t)] = x;
            self(self, t + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

Element from_mask(std::size_t universe, std::uint64_t mask)
{
    Element e(universe);
    for (std::size_t k = 0; k < universe; ++k)
        if (mask >> k & 1u)
            e.set(k);
    return e;
}

void require_hom(const FiniteBAO& src, const FiniteBAO& dst, const MorphismWitness& w, bool injective,
                 const std::string& name)
{
    auto v = check_homomorphism(src, dst, w.images, {injective, false});
    if (!v.ok())
        throw ValidationError(name + " is not " + (injective ? "an embedding" : "a homomorphism") + ": " + v.failure);
}

} // namespace

AmalgamCheck amalgam_check(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2, const MorphismWitness& i1,
                           const MorphismWitness& i2, const FiniteBAO& d, const MorphismWitness& m1,
                           const MorphismWitness& m2, std::size_t pair_cap)
{
    require_hom(a0, a1, i1, true, "i1");
    require_hom(a0, a2, i2, true, "i2");
    require_hom(a1, d, m1, false, "m1");
    require_hom(a2, d, m2, false, "m2");
    const std::size_t n1 = a1.atom_count();
    const std::size_t n2 = a2.atom_count();
    if (n1 + n2 >= 63 || (std::uint64_t{1} << (n1 + n2)) > pair_cap)
        throw CapExceeded("superamalgamation check needs 2^" + std::to_string(n1 + n2) + " element pairs, cap is " +
                          std::to_string(pair_cap));

    AmalgamCheck r;
    auto injective = [](const MorphismWitness& w) {
        return std::all_of(w.images.begin(), w.images.end(), [](const Element& e) { return e.any(); });
    };
    if (!injective(m1) || !injective(m2)) {
        r.failure = injective(m1) ? "m2 is not injective" : "m1 is not injective";
        return r;
    }
    for (std::size_t c = 0; c < a0.atom_count(); ++c)
        if (m1.apply(i1.images[c]) != m2.apply(i2.images[c])) {
            r.failure = "m1 o i1 and m2 o i2 differ at atom " + a0.atom_label(static_cast<int>(c));
            return r;
        }
    r.amalgam = true;

    struct Side {
        const FiniteBAO* alg;
        const MorphismWitness* i;
        const MorphismWitness* m;
    };
    const Side sides[2] = {{&a1, &i1, &m1}, {&a2, &i2, &m2}};
    for (int j = 0; j < 2; ++j) {
        const Side& sj = sides[j];
        const Side& sk = sides[1 - j];
        const std::size_t nj = sj.alg->atom_count();
        const std::size_t nk = sk.alg->atom_count();
        for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << nj); ++xm) {
            const Element x = from_mask(nj, xm);
            const Element mx = sj.m->apply(x);
            // least z in A0 with x <= i_j(z)
            Element z = a0.zero();
            for (std::size_t c = 0; c < a0.atom_count(); ++c)
                if (sj.i->images[c].intersects(x))
                    z.set(c);
            const Element ikz = sk.i->apply(z);
            for (std::uint64_t ym = 0; ym < (std::uint64_t{1} << nk); ++ym) {
                const Element y = from_mask(nk, ym);
                if (mx.is_subset_of(sk.m->apply(y)) && !ikz.is_subset_of(y)) {
                    r.j = j + 1;
                    r.witness = std::make_pair(x, y);
                    r.failure = "no interpolant for x in A" + std::to_string(j + 1) + ", y in A" + std::to_string(2 - j);
                    return r;
                }
            }
        }
    }
    r.super = true;
    return r;
}

namespace {

bool try_candidate(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2, const MorphismWitness& i1,
                   const MorphismWitness& i2, const FiniteBAO& d, AmalgamSearchResult& r)
{
    if (!(d.signature() == a1.signature()) || d.atom_count() < std::max(a1.atom_count(), a2.atom_count()))
        return false;
    ++r.candidates_tried;
    const auto e1 = find_embeddings(a1, d);
    if (e1.empty())
        return false;
    const auto e2 = find_embeddings(a2, d);
    for (const auto& m1 : e1)
        for (const auto& m2 : e2) {
            bool commutes = true;
            for (std::size_t c = 0; c < a0.atom_count() && commutes; ++c)
                commutes = m1.apply(i1.images[c]) == m2.apply(i2.images[c]);
            if (!commutes)
                continue;
            r.found = true;
            r.d = d;
            r.m1 = m1;
            r.m2 = m2;
            r.check = amalgam_check(a0, a1, a2, i1, i2, d, m1, m2);
            return true;
        }
    return false;
}

void check_bound(std::size_t bound)
{
    if (bound > 6)
        throw CapExceeded("amalgam search bound is capped at 6 atoms (got " + std::to_string(bound) + ")");
}

// Restricted growth strings of length n.
std::vector<std::vector<int>> set_partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int max) -> void {
        if (pos == n) {
            out.push_back(rgs);
            return;
        }
        for (int c = 0; c <= max + 1; ++c) {
            rgs[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1, std::max(max, c));
        }
    };
    if (n > 0)
        rec(rec, 1, 0);
    else
        out.push_back({});
    return out;
}

std::vector<AtomPair> partition_relation(const std::vector<int>& rgs)
{
    std::vector<AtomPair> pairs;
    for (std::size_t x = 0; x < rgs.size(); ++x)
        for (std::size_t y = 0; y < rgs.size(); ++y)
            if (rgs[x] == rgs[y])
                pairs.emplace_back(static_cast<int>(x), static_cast<int>(y));
    return pairs;
}

bool commute(const std::vector<int>& p, const std::vector<int>& q)
{
    // T_p o T_q = T_q o T_p
    const std::size_t n = p.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            bool pq = false;
            bool qp = false;
            for (std::size_t z = 0; z < n; ++z) {
                pq = pq || (p[x] == p[z] && q[z] == q[y]);
                qp = qp || (q[x] == q[z] && p[z] == p[y]);
            }
            if (pq != qp)
                return false;
        }
    return true;
}

} // namespace

std::vector<AtomStructure> ca_frames(int n, int atoms)
{
    if (n < 0 || n > 2)
        throw ValidationError("frame enumeration supports CA_0, CA_1 and CA_2 only");
    if (atoms < 1 || atoms > 6)
        throw CapExceeded("frame enumeration is capped at 6 atoms");
    AtomStructure base;
    base.signature = cylindric_signature(n);
    for (int x = 0; x < atoms; ++x)
        base.atoms.push_back("a" + std::to_string(x));
    std::vector<int> all(static_cast<std::size_t>(atoms));
    for (int x = 0; x < atoms; ++x)
        all[static_cast<std::size_t>(x)] = x;
    for (int i = 0; i < n; ++i)
        base.constants[diagonal_name(i, i)] = all;

    std::vector<AtomStructure> out;
    const auto parts = set_partitions(atoms);
    if (n == 0) {
        out.push_back(base);
        return out;
    }
    if (n == 1) {
        for (const auto& p : parts) {
            AtomStructure f = base;
            f.unary[cylindrifier_name(0)] = partition_relation(p);
            out.push_back(std::move(f));
        }
        return out;
    }
    for (const auto& p : parts)
        for (const auto& q : parts) {
            if (!commute(p, q))
                continue;
            for (std::uint32_t mask = 1; mask < (1u << atoms); ++mask) {
                AtomStructure f = base;
                f.unary[cylindrifier_name(0)] = partition_relation(p);
                f.unary[cylindrifier_name(1)] = partition_relation(q);
                auto& d01 = f.constants[diagonal_name(0, 1)];
                for (int x = 0; x < atoms; ++x)
                    if (mask >> x & 1u)
                        d01.push_back(x);
                if (ca_frame_correspondents(f, 2).holds())
                    out.push_back(std::move(f));
            }
        }
    return out;
}

AmalgamSearchResult amalgam_search(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2,
                                   const MorphismWitness& i1, const MorphismWitness& i2,
                                   const std::vector<FiniteBAO>& pool, std::size_t bound)
{
    check_bound(bound);
    require_hom(a0, a1, i1, true, "i1");
    require_hom(a0, a2, i2, true, "i2");
    AmalgamSearchResult r;
    for (const auto& d : pool)
        if (d.atom_count() <= bound && try_candidate(a0, a1, a2, i1, i2, d, r))
            return r;
    r.exhausted = true;
    return r;
}

AmalgamSearchResult amalgam_search(const FiniteBAO& a0, const FiniteBAO& a1, const FiniteBAO& a2,
                                   const MorphismWitness& i1, const MorphismWitness& i2, std::size_t bound)
{
    check_bound(bound);
    const int n = a1.signature().dimension;
    if (!(a1.signature() == cylindric_signature(n)) || n > 2)
        throw ValidationError("frame enumeration needs a CA_n signature with n <= 2; pass a candidate pool instead");
    require_hom(a0, a1, i1, true, "i1");
    require_hom(a0, a2, i2, true, "i2");
    AmalgamSearchResult r;
    for (std::size_t size = 1; size <= bound; ++size)
        for (auto& f : ca_frames(n, static_cast<int>(size)))
            if (try_candidate(a0, a1, a2, i1, i2, FiniteBAO(std::move(f)), r))
                return r;
    r.exhausted = true;
    return r;
}

} // namespace cylkit
