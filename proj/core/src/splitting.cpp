#include "cylkit/splitting.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cylkit {

void SplitSpec::validate() const
{
    if (alpha < 3)
        throw ValidationError("splitting needs dimension at least 3");
    if (static_cast<int>(sizes.size()) != alpha)
        throw ValidationError("splitting needs one size per coordinate");
    for (int s : sizes)
        if (s < 1)
            throw ValidationError("every U_i must be nonempty");
    if (p < 1)
        throw ValidationError("R must be split into at least one piece");
    for (const auto& g : generators) {
        auto sorted = g;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> ids(static_cast<std::size_t>(alpha));
        std::iota(ids.begin(), ids.end(), 0);
        if (sorted != ids)
            throw ValidationError("generator " + substitution_name(g) + " is not a permutation of the dimension");
    }
}

Transformation compose_transformations(const Transformation& sigma, const Transformation& tau)
{
    Transformation out(tau.size());
    for (std::size_t k = 0; k < tau.size(); ++k)
        out[k] = sigma[static_cast<std::size_t>(tau[k])];
    return out;
}

std::vector<Transformation> generate_group(const std::vector<Transformation>& generators, int alpha)
{
    Transformation id(static_cast<std::size_t>(alpha));
    std::iota(id.begin(), id.end(), 0);
    std::set<Transformation> group{id};
    std::vector<Transformation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Transformation> next;
        for (const auto& t : frontier)
            for (const auto& g : generators) {
                auto c = compose_transformations(g, t);
                if (group.insert(c).second)
                    next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    return {group.begin(), group.end()};
}

namespace {

bool is_identity(const Transformation& t)
{
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] != static_cast<int>(k))
            return false;
    return true;
}

int index_in(const std::vector<Transformation>& group, const Transformation& t)
{
    auto it = std::find(group.begin(), group.end(), t);
    return it == group.end() ? -1 : static_cast<int>(it - group.begin());
}

Element substitute(const FiniteBAO& algebra, const Transformation& tau, const Element& x)
{
    return is_identity(tau) ? x : algebra.apply(substitution_name(tau), x);
}

Element element_of(std::size_t universe, const std::vector<int>& atoms)
{
    return Element::from_atoms(universe, atoms);
}

} // namespace

Element SplitBase::lift(const Element& x) const
{
    algebra.require_member(x);
    Element out = full.zero();
    x.for_each([&](int a) { out |= sub.blocks[static_cast<std::size_t>(a)]; });
    return out;
}

Element SplitBase::lower(const Element& tuples) const
{
    return element_of(algebra.atom_count(), decompose(sub.blocks, tuples, "the set of tuples"));
}

SplitBase build_base(const SplitSpec& spec)
{
    spec.validate();
    const int base_size = std::accumulate(spec.sizes.begin(), spec.sizes.end(), 0);
    const auto group = generate_group(spec.generators, spec.alpha);
    FullSetOptions options;
    options.max_tuples = spec.max_tuples;
    for (const auto& t : group)
        if (!is_identity(t))
            options.substitutions.push_back(t);
    FiniteBAO full = full_set_algebra(spec.alpha, base_size, options);

    const TupleSpace ts{spec.alpha, base_size};
    std::vector<int> offset(spec.sizes.size(), 0);
    for (std::size_t i = 1; i < spec.sizes.size(); ++i)
        offset[i] = offset[i - 1] + spec.sizes[i - 1];
    Element r = full.zero();
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const auto v = ts.decode(t);
        bool in = true;
        for (std::size_t i = 0; i < v.size(); ++i)
            in = in && v[i] >= offset[i] && v[i] < offset[i] + spec.sizes[i];
        if (in)
            r.set(t);
    }
    const std::vector<Element> gens{r};
    Subalgebra sub = generated_subalgebra(full, gens);
    FiniteBAO algebra = materialize(full, sub);

    std::vector<int> r_atoms;
    for (const auto& tau : group) {
        const auto parts = decompose(sub.blocks, substitute(full, tau, r), "s_tau R");
        if (parts.size() != 1)
            throw ValidationError(substitution_name(tau) + " R is not an atom of A'");
        if (std::find(r_atoms.begin(), r_atoms.end(), parts[0]) != r_atoms.end())
            throw ValidationError("the atoms s_tau R are not pairwise distinct");
        r_atoms.push_back(parts[0]);
    }
    return SplitBase{spec, base_size, group, std::move(full), std::move(r), std::move(sub), std::move(algebra), std::move(r_atoms)};
}

Element SplitAlgebra::r() const
{
    Element out = algebra.zero();
    for (int a : split_atoms.front())
        out.set(static_cast<std::size_t>(a));
    return out;
}

Element SplitAlgebra::lift(const Element& x) const
{
    if (x.universe() != from_base.size())
        throw FrameMismatch("element is not an element of the base algebra");
    Element out = algebra.zero();
    x.for_each([&](int a) {
        const int b = from_base[static_cast<std::size_t>(a)];
        if (b >= 0) {
            out.set(static_cast<std::size_t>(b));
            return;
        }
        const auto t = static_cast<std::size_t>(std::find(base_atoms.begin(), base_atoms.end(), a) - base_atoms.begin());
        for (int s : split_atoms[t])
            out.set(static_cast<std::size_t>(s));
    });
    return out;
}

SplitAlgebra split(const SplitBase& base, int p, std::optional<std::vector<Transformation>> group)
{
    if (p < 1)
        throw ValidationError("R must be split into at least one piece");
    std::vector<Transformation> g = group ? *group : base.group;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    for (const auto& t : g)
        if (index_in(base.group, t) < 0)
            throw ValidationError(substitution_name(t) + " is not in the substitution group of A'");
    if (g.empty() || !is_identity(g.front()))
        throw ValidationError("the split group must contain the identity");
    for (const auto& s : g)
        for (const auto& t : g)
            if (!std::binary_search(g.begin(), g.end(), compose_transformations(s, t)))
                throw ValidationError("the split group is not closed under composition");

    const FiniteBAO& src = base.algebra;
    const std::size_t n0 = src.atom_count();
    SplitAlgebra out{src, g, p, {}, {}, std::vector<int>(n0, -1)};
    for (const auto& t : g)
        out.base_atoms.push_back(base.r_atoms[static_cast<std::size_t>(index_in(base.group, t))]);

    AtomStructure f;
    for (std::size_t a = 0; a < n0; ++a)
        if (std::find(out.base_atoms.begin(), out.base_atoms.end(), static_cast<int>(a)) == out.base_atoms.end()) {
            out.from_base[a] = static_cast<int>(f.atoms.size());
            f.atoms.push_back(src.atom_label(static_cast<int>(a)));
        }
    for (const auto& t : g) {
        out.split_atoms.emplace_back();
        for (int j = 0; j < p; ++j) {
            out.split_atoms.back().push_back(static_cast<int>(f.atoms.size()));
            f.atoms.push_back(substitution_name(t) + "R" + std::to_string(j));
        }
    }
    const std::size_t n = f.atoms.size();
    auto expand = [&](const Element& x) {
        std::vector<int> atoms;
        x.for_each([&](int a) {
            const int b = out.from_base[static_cast<std::size_t>(a)];
            if (b >= 0) {
                atoms.push_back(b);
                return;
            }
            const auto t = static_cast<std::size_t>(std::find(out.base_atoms.begin(), out.base_atoms.end(), a) - out.base_atoms.begin());
            atoms.insert(atoms.end(), out.split_atoms[t].begin(), out.split_atoms[t].end());
        });
        return atoms;
    };
    // the A' atom each new atom stands for
    std::vector<int> origin(n, -1);
    for (std::size_t a = 0; a < n0; ++a)
        if (out.from_base[a] >= 0)
            origin[static_cast<std::size_t>(out.from_base[a])] = static_cast<int>(a);
    for (std::size_t t = 0; t < g.size(); ++t)
        for (int s : out.split_atoms[t])
            origin[static_cast<std::size_t>(s)] = out.base_atoms[t];

    f.signature = src.signature();
    f.signature.substitutions.clear();
    for (const auto& t : g)
        if (!is_identity(t))
            f.signature.substitutions.push_back(t);

    for (int i : f.signature.cylindrifiers) {
        auto& pairs = f.unary[cylindrifier_name(i)];
        for (std::size_t y = 0; y < n; ++y)
            for (int x : expand(src.apply(cylindrifier_name(i), src.atom(origin[y]))))
                pairs.emplace_back(x, static_cast<int>(y));
    }
    for (const auto& name : f.signature.constant_names())
        f.constants[name] = expand(src.constant(name));
    for (const auto& sigma : f.signature.substitutions) {
        const std::string name = substitution_name(sigma);
        auto& pairs = f.unary[name];
        for (std::size_t y = 0; y < n; ++y) {
            if (out.from_base[static_cast<std::size_t>(origin[y])] >= 0) {
                for (int x : expand(src.apply(name, src.atom(origin[y]))))
                    pairs.emplace_back(x, static_cast<int>(y));
                continue;
            }
            for (std::size_t t = 0; t < g.size(); ++t) {
                const auto& row = out.split_atoms[t];
                auto it = std::find(row.begin(), row.end(), static_cast<int>(y));
                if (it == row.end())
                    continue;
                const int target = index_in(g, compose_transformations(sigma, g[t]));
                pairs.emplace_back(out.split_atoms[static_cast<std::size_t>(target)][static_cast<std::size_t>(it - row.begin())],
                                   static_cast<int>(y));
            }
        }
    }
    out.algebra = FiniteBAO(std::move(f));
    return out;
}

TermPtr witness_term(int m, int dimension)
{
    if (m < 1)
        throw ValidationError("the witness term needs m >= 1");
    if (m + 1 > dimension)
        throw ValidationError("the witness term needs m + 1 <= dimension");
    std::vector<Index> gamma;
    for (int i = 1; i <= m; ++i)
        gamma.emplace_back(i);
    const TermPtr inner = term::cset(gamma, term::var("x"));
    std::vector<TermPtr> factors;
    for (int i = 0; i <= m; ++i)
        factors.push_back(term::s(0, i, inner));
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            factors.push_back(term::neg(term::diag(i, j)));
    return term::meet(factors);
}

std::vector<std::vector<int>> blur(const SplitAlgebra& a, const std::vector<Element>& generators)
{
    for (const auto& g : generators)
        a.algebra.require_member(g);
    std::map<std::vector<bool>, std::vector<int>> classes;
    for (int j = 0; j < a.p; ++j) {
        std::vector<bool> key;
        for (const auto& g : generators)
            for (const auto& row : a.split_atoms)
                key.push_back(g.test(static_cast<std::size_t>(row[static_cast<std::size_t>(j)])));
        classes[key].push_back(j);
    }
    std::vector<std::vector<int>> out;
    for (auto& [_, c] : classes)
        out.push_back(std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

SmallSubalgebra small_subalgebra(const SplitAlgebra& a, const std::vector<Element>& generators)
{
    auto classes = blur(a, generators);
    const std::size_t n = a.algebra.atom_count();
    std::vector<Element> blocks;
    for (int b : a.from_base)
        if (b >= 0)
            blocks.push_back(a.algebra.atom(b));
    for (const auto& row : a.split_atoms)
        for (const auto& c : classes) {
            Element e(n);
            for (int j : c)
                e.set(static_cast<std::size_t>(row[static_cast<std::size_t>(j)]));
            blocks.push_back(std::move(e));
        }
    std::sort(blocks.begin(), blocks.end(), [](const Element& x, const Element& y) { return *x.next() < *y.next(); });
    Subalgebra sub{std::move(blocks)};
    FiniteBAO algebra = materialize(a.algebra, sub);
    return SmallSubalgebra{std::move(classes), std::move(sub), std::move(algebra)};
}

std::vector<Element> real_partition(const SplitBase& base, int q)
{
    const auto& sizes = base.spec.sizes;
    if (q < 1 || q > *std::min_element(sizes.begin(), sizes.end()))
        throw ValidationError("the real partition needs 1 <= q <= min |U_i|");
    const TupleSpace ts{base.spec.alpha, base.base_size};
    std::vector<int> offset(sizes.size(), 0);
    for (std::size_t i = 1; i < sizes.size(); ++i)
        offset[i] = offset[i - 1] + sizes[i - 1];
    std::vector<Element> cells(static_cast<std::size_t>(q), base.full.zero());
    base.r.for_each([&](int t) {
        const auto v = ts.decode(static_cast<std::size_t>(t));
        int sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            sum += (v[i] - offset[i]) % q;
        cells[static_cast<std::size_t>(sum % q)].set(static_cast<std::size_t>(t));
    });
    return cells;
}

RepEmbedding rep_embedding(const SplitBase& base, const SplitAlgebra& a, const SmallSubalgebra& b)
{
    const int k = static_cast<int>(b.blocks.size());
    const auto& sizes = base.spec.sizes;
    if (k > *std::min_element(sizes.begin(), sizes.end()))
        throw ValidationError("rep_embedding needs at most min |U_i| blocks, got " + std::to_string(k));
    auto cells = real_partition(base, k);
    const Subalgebra target_sub = generated_subalgebra(base.full, cells);
    FiniteBAO target = materialize(base.full, target_sub);

    std::vector<int> origin(a.algebra.atom_count(), -1);
    for (std::size_t x = 0; x < a.from_base.size(); ++x)
        if (a.from_base[x] >= 0)
            origin[static_cast<std::size_t>(a.from_base[x])] = static_cast<int>(x);

    std::vector<Element> images;
    for (const auto& block : b.sub.blocks) {
        const int first = static_cast<int>(*block.next());
        Element tuples = base.full.zero();
        if (origin[static_cast<std::size_t>(first)] >= 0) {
            tuples = base.lift(base.algebra.atom(origin[static_cast<std::size_t>(first)]));
        } else {
            for (std::size_t t = 0; t < a.split_atoms.size(); ++t) {
                const auto& row = a.split_atoms[t];
                auto it = std::find(row.begin(), row.end(), first);
                if (it == row.end())
                    continue;
                const int j = static_cast<int>(it - row.begin());
                for (int c = 0; c < k; ++c)
                    if (std::find(b.blocks[static_cast<std::size_t>(c)].begin(), b.blocks[static_cast<std::size_t>(c)].end(), j) !=
                        b.blocks[static_cast<std::size_t>(c)].end())
                        tuples = substitute(base.full, a.group[t], cells[static_cast<std::size_t>(c)]);
            }
        }
        images.push_back(element_of(target.atom_count(), decompose(target_sub.blocks, tuples, "h(b)")));
    }
    MorphismWitness w = check_homomorphism(b.algebra, target, std::move(images), {true, false});
    return RepEmbedding{std::move(cells), std::move(target), std::move(w)};
}

MorphismWitness split_embedding(const SplitAlgebra& a1, const SplitAlgebra& a2, const std::vector<std::vector<int>>& chi)
{
    if (a1.from_base.size() != a2.from_base.size())
        throw FrameMismatch("split algebras over different base algebras");
    if (static_cast<int>(chi.size()) != a1.p)
        throw ValidationError("chi needs one set per piece of the source");
    std::vector<int> hit(static_cast<std::size_t>(a2.p), 0);
    for (const auto& c : chi) {
        if (c.empty())
            throw ValidationError("chi assigns an empty set");
        for (int i : c) {
            if (i < 0 || i >= a2.p)
                throw ValidationError("chi refers to a missing piece");
            ++hit[static_cast<std::size_t>(i)];
        }
    }
    if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; }))
        throw ValidationError("the sets of chi must partition the pieces of the target");
    for (const auto& t : a1.group)
        if (index_in(a2.group, t) < 0)
            throw ValidationError("the source group is not contained in the target group");

    // reduct of A2 to the signature of A1
    const Signature& sig = a1.algebra.signature();
    std::vector<std::pair<std::string, std::string>> unary_map;
    std::vector<std::pair<std::string, std::string>> constant_map;
    for (const auto& name : sig.unary_names())
        unary_map.emplace_back(name, name);
    for (const auto& name : sig.constant_names())
        constant_map.emplace_back(name, name);
    std::vector<Element> singletons;
    for (int x = 0; x < static_cast<int>(a2.algebra.atom_count()); ++x)
        singletons.push_back(a2.algebra.atom(x));
    FiniteBAO rd(block_frame(a2.algebra, singletons, sig, unary_map, constant_map));

    std::vector<Element> images(a1.algebra.atom_count(), rd.zero());
    for (std::size_t x = 0; x < a1.from_base.size(); ++x) {
        const int b1 = a1.from_base[x];
        if (b1 < 0)
            continue;
        Element base_atom(a1.from_base.size());
        base_atom.set(x);
        images[static_cast<std::size_t>(b1)] = a2.lift(base_atom);
    }
    for (std::size_t t = 0; t < a1.group.size(); ++t) {
        const auto t2 = static_cast<std::size_t>(index_in(a2.group, a1.group[t]));
        for (int j = 0; j < a1.p; ++j) {
            Element& img = images[static_cast<std::size_t>(a1.split_atoms[t][static_cast<std::size_t>(j)])];
            for (int i : chi[static_cast<std::size_t>(j)])
                img.set(static_cast<std::size_t>(a2.split_atoms[t2][static_cast<std::size_t>(i)]));
        }
    }
    return check_homomorphism(a1.algebra, rd, std::move(images), {true, false});
}

} // namespace cylkit
