#include "cylkit/bao.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>

namespace cylkit {

namespace {

template <class V>
auto find_named(const V& v, std::string_view name)
{
    auto it = std::lower_bound(v.begin(), v.end(), name, [](const auto& e, std::string_view n) { return e.first < n; });
    return (it != v.end() && it->first == name) ? it : v.end();
}

} // namespace

FiniteBAO::FiniteBAO(AtomStructure frame)
{
    frame.normalize();
    frame.validate();
    auto impl = std::make_shared<Impl>();
    impl->frame = std::move(frame);
    const auto& f = impl->frame;
    const std::size_t n = f.atoms.size();

    for (const auto& [name, pairs] : f.unary) {
        Table t;
        t.image_offsets.assign(n + 1, 0);
        t.witness_offsets.assign(n + 1, 0);
        for (auto [a, b] : pairs) {
            ++t.image_offsets[static_cast<std::size_t>(b) + 1];
            ++t.witness_offsets[static_cast<std::size_t>(a) + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            t.image_offsets[i + 1] += t.image_offsets[i];
            t.witness_offsets[i + 1] += t.witness_offsets[i];
        }
        t.image_data.resize(pairs.size());
        t.witness_data.resize(pairs.size());
        auto img_pos = t.image_offsets;
        auto wit_pos = t.witness_offsets;
        // pairs are sorted by (a, b), so both CSR rows come out sorted
        for (auto [a, b] : pairs) {
            t.image_data[img_pos[static_cast<std::size_t>(b)]++] = a;
            t.witness_data[wit_pos[static_cast<std::size_t>(a)]++] = b;
        }
        impl->ops.emplace_back(name, std::move(t));
    }
    for (const auto& [name, members] : f.constants)
        impl->constants.emplace_back(name, Element::from_atoms(n, members));

    if (f.has_composition) {
        impl->composition.assign(n * n, Element(n));
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                auto& cell = impl->composition[b * n + c];
                for (std::size_t a = 0; a < n; ++a)
                    if (f.composition.consistent(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)))
                        cell.set(a);
            }
    }
    impl_ = std::move(impl);
}

bool FiniteBAO::has_unary(std::string_view op) const { return find_named(impl_->ops, op) != impl_->ops.end(); }

const FiniteBAO::Table& FiniteBAO::table(std::string_view op) const
{
    auto it = find_named(impl_->ops, op);
    if (it == impl_->ops.end())
        throw EvaluationError("unknown operator '" + std::string(op) + "'");
    return it->second;
}

Element FiniteBAO::apply(std::string_view op, const Element& x) const
{
    require_member(x);
    const Table& t = table(op);
    Element out(atom_count());
    x.for_each([&](int b) {
        for (std::size_t k = t.image_offsets[static_cast<std::size_t>(b)]; k < t.image_offsets[static_cast<std::size_t>(b) + 1];
             ++k)
            out.set(static_cast<std::size_t>(t.image_data[k]));
    });
    return out;
}

std::span<const int> FiniteBAO::image(std::string_view op, int b) const
{
    const Table& t = table(op);
    const auto lo = t.image_offsets.at(static_cast<std::size_t>(b));
    const auto hi = t.image_offsets.at(static_cast<std::size_t>(b) + 1);
    return {t.image_data.data() + lo, hi - lo};
}

std::span<const int> FiniteBAO::witnesses(std::string_view op, int a) const
{
    const Table& t = table(op);
    const auto lo = t.witness_offsets.at(static_cast<std::size_t>(a));
    const auto hi = t.witness_offsets.at(static_cast<std::size_t>(a) + 1);
    return {t.witness_data.data() + lo, hi - lo};
}

bool FiniteBAO::has_constant(std::string_view name) const
{
    return find_named(impl_->constants, name) != impl_->constants.end();
}

const Element& FiniteBAO::constant(std::string_view name) const
{
    auto it = find_named(impl_->constants, name);
    if (it == impl_->constants.end())
        throw EvaluationError("unknown constant '" + std::string(name) + "'");
    return it->second;
}

Element FiniteBAO::compose(const Element& x, const Element& y) const
{
    if (!has_composition())
        throw EvaluationError("algebra has no composition");
    require_member(x);
    require_member(y);
    Element out(atom_count());
    const auto xs = x.atoms();
    const auto ys = y.atoms();
    for (int b : xs)
        for (int c : ys)
            out |= compose_atoms(b, c);
    return out;
}

const Element& FiniteBAO::compose_atoms(int b, int c) const
{
    if (!has_composition())
        throw EvaluationError("algebra has no composition");
    return impl_->composition.at(static_cast<std::size_t>(b) * atom_count() + static_cast<std::size_t>(c));
}

void FiniteBAO::require_member(const Element& x) const
{
    if (x.universe() != atom_count())
        throw FrameMismatch("element over " + std::to_string(x.universe()) + " atoms used in an algebra with " +
                            std::to_string(atom_count()) + " atoms");
}

FiniteBAO product(const FiniteBAO& a, const FiniteBAO& b)
{
    if (!(a.signature() == b.signature()))
        throw ValidationError("product requires identical signatures");
    const auto& fa = a.frame();
    const auto& fb = b.frame();
    const int na = static_cast<int>(fa.size());
    const int nb = static_cast<int>(fb.size());

    AtomStructure out;
    out.signature = fa.signature;
    for (const auto& l : fa.atoms)
        out.atoms.push_back("0:" + l);
    for (const auto& l : fb.atoms)
        out.atoms.push_back("1:" + l);
    for (const auto& [name, pairs] : fa.unary) {
        auto& dst = out.unary[name];
        dst = pairs;
        for (auto [x, y] : fb.unary.at(name))
            dst.emplace_back(x + na, y + na);
    }
    for (const auto& [name, members] : fa.constants) {
        auto& dst = out.constants[name];
        dst = members;
        for (int x : fb.constants.at(name))
            dst.push_back(x + na);
    }
    if (fa.has_composition) {
        out.has_composition = true;
        out.composition = Consistency(static_cast<std::size_t>(na + nb), false);
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < na; ++y)
                for (int z = 0; z < na; ++z)
                    out.composition.set(x, y, z, fa.composition.consistent(x, y, z));
        for (int x = 0; x < nb; ++x)
            for (int y = 0; y < nb; ++y)
                for (int z = 0; z < nb; ++z)
                    out.composition.set(x + na, y + na, z + na, fb.composition.consistent(x, y, z));
    }
    return FiniteBAO(std::move(out));
}

bool Subalgebra::contains(const Element& x) const
{
    for (const auto& b : blocks)
        if (b.intersects(x) && !b.is_subset_of(x))
            return false;
    return true;
}

int Subalgebra::block_of(int a) const
{
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].test(static_cast<std::size_t>(a)))
            return static_cast<int>(i);
    return -1;
}

std::vector<Element> Subalgebra::elements(std::size_t max_atoms) const
{
    if (blocks.size() > max_atoms)
        throw CapExceeded("subalgebra has " + std::to_string(blocks.size()) + " atoms; enumerating its elements is capped at " +
                          std::to_string(max_atoms));
    const std::size_t universe = blocks.empty() ? 0 : blocks.front().universe();
    std::vector<Element> out;
    const std::size_t total = std::size_t{1} << blocks.size();
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        Element e(universe);
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if ((mask >> i) & 1U)
                e |= blocks[i];
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

// Splits every block by s; returns true if anything changed.
bool refine(std::vector<Element>& blocks, const Element& s)
{
    bool changed = false;
    std::vector<Element> next;
    next.reserve(blocks.size() + 4);
    for (auto& b : blocks) {
        Element inside = b & s;
        if (inside.none() || inside == b) {
            next.push_back(std::move(b));
            continue;
        }
        next.push_back(b - s);
        next.push_back(std::move(inside));
        changed = true;
    }
    blocks = std::move(next);
    return changed;
}

} // namespace

Subalgebra generated_subalgebra(const FiniteBAO& algebra, std::span<const Element> generators)
{
    const std::size_t n = algebra.atom_count();
    std::vector<Element> blocks;
    if (n > 0)
        blocks.push_back(algebra.one());
    for (const auto& g : generators) {
        algebra.require_member(g);
        refine(blocks, g);
    }
    for (const auto& name : algebra.signature().constant_names())
        refine(blocks, algebra.constant(name));

    const auto ops = algebra.signature().unary_names();
    bool changed = true;
    while (changed) {
        changed = false;
        const auto snapshot = blocks;
        for (const auto& b : snapshot) {
            for (const auto& op : ops)
                changed |= refine(blocks, algebra.apply(op, b));
        }
        if (algebra.has_composition()) {
            for (const auto& x : snapshot)
                for (const auto& y : snapshot)
                    changed |= refine(blocks, algebra.compose(x, y));
        }
    }
    std::sort(blocks.begin(), blocks.end(), [](const Element& a, const Element& b) { return *a.next() < *b.next(); });
    return Subalgebra{std::move(blocks)};
}

std::string block_label(const FiniteBAO& algebra, const Element& block)
{
    const auto first = static_cast<int>(*block.next());
    if (block.count() == 1)
        return algebra.atom_label(first);
    return "[" + algebra.atom_label(first) + "+" + std::to_string(block.count() - 1) + "]";
}

std::vector<int> decompose(const std::vector<Element>& blocks, const Element& x, const std::string& what)
{
    std::vector<int> members;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].is_subset_of(x))
            members.push_back(static_cast<int>(i));
        else if (blocks[i].intersects(x))
            throw ValidationError("partition is not closed under " + what);
    }
    return members;
}

AtomStructure block_frame(const FiniteBAO& algebra, const std::vector<Element>& blocks, const Signature& signature,
                          const std::vector<std::pair<std::string, std::string>>& unary_map,
                          const std::vector<std::pair<std::string, std::string>>& constant_map)
{
    const int k = static_cast<int>(blocks.size());
    AtomStructure out;
    out.signature = signature;
    for (const auto& b : blocks)
        out.atoms.push_back(block_label(algebra, b));
    for (const auto& [dst, src] : unary_map) {
        auto& pairs = out.unary[dst];
        for (int y = 0; y < k; ++y)
            for (int x : decompose(blocks, algebra.apply(src, blocks[static_cast<std::size_t>(y)]), src))
                pairs.emplace_back(x, y);
    }
    for (const auto& [dst, src] : constant_map)
        out.constants[dst] = decompose(blocks, algebra.constant(src), src);
    return out;
}

FiniteBAO materialize(const FiniteBAO& algebra, const Subalgebra& sub)
{
    const auto& src = algebra.frame();
    std::vector<std::pair<std::string, std::string>> unary_map;
    std::vector<std::pair<std::string, std::string>> constant_map;
    for (const auto& [name, _] : src.unary)
        unary_map.emplace_back(name, name);
    for (const auto& [name, _] : src.constants)
        constant_map.emplace_back(name, name);
    AtomStructure out = block_frame(algebra, sub.blocks, src.signature, unary_map, constant_map);
    if (src.has_composition) {
        const int k = static_cast<int>(sub.blocks.size());
        out.has_composition = true;
        out.composition = Consistency(static_cast<std::size_t>(k), false);
        for (int y = 0; y < k; ++y)
            for (int z = 0; z < k; ++z)
                for (int x : decompose(sub.blocks,
                                       algebra.compose(sub.blocks[static_cast<std::size_t>(y)], sub.blocks[static_cast<std::size_t>(z)]),
                                       "composition"))
                    out.composition.set(x, y, z, true);
    }
    return FiniteBAO(std::move(out));
}

} // namespace cylkit
