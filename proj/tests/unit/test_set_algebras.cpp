#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/set_algebras.hpp"

#include <random>
#include <set>

using namespace cylkit;

namespace {

std::set<AtomPair> pairs_of(const AtomStructure& f, const std::string& op)
{
    const auto& v = f.unary.at(op);
    return {v.begin(), v.end()};
}

// C_i^up X from the definition, on tuples.
std::set<int> c_up(const TupleSpace& ts, const DirectedBase& base, int i, const std::set<int>& x, bool down)
{
    std::set<int> out;
    for (std::size_t s = 0; s < ts.size(); ++s)
        for (int z : x) {
            const auto sv = ts.decode(s);
            const auto zv = ts.decode(static_cast<std::size_t>(z));
            bool agree = true;
            for (int k = 0; k < ts.n; ++k)
                if (k != i && sv[static_cast<std::size_t>(k)] != zv[static_cast<std::size_t>(k)])
                    agree = false;
            const int zi = zv[static_cast<std::size_t>(i)];
            const int si = sv[static_cast<std::size_t>(i)];
            if (agree && (down ? base.related(si, zi) : base.related(zi, si)))
                out.insert(static_cast<int>(s));
        }
    return out;
}

BaseClass classify_oracle(const DirectedBase& b)
{
    BaseClass c;
    c.weak_p = true;
    c.p_structure = true;
    c.extensional = true;
    auto preds = [&](int z) {
        std::set<int> p;
        for (int x = 0; x < b.u; ++x)
            if (b.related(x, z))
                p.insert(x);
        return p;
    };
    for (int x = 0; x < b.u; ++x)
        for (int y = 0; y < b.u; ++y) {
            bool common = false;
            bool exact = false;
            for (int z = 0; z < b.u; ++z) {
                common |= b.related(x, z) && b.related(y, z);
                exact |= preds(z) == std::set<int>{x, y};
            }
            c.weak_p &= common;
            c.p_structure &= exact;
            if (x != y && preds(x) == preds(y))
                c.extensional = false;
        }
    return c;
}

} // namespace

TEST_CASE("tuple space numbering")
{
    const TupleSpace ts{3, 3};
    CHECK(ts.size() == 27);
    for (std::size_t k = 0; k < ts.size(); ++k)
        CHECK(ts.encode(ts.decode(k)) == k);
    CHECK(ts.decode(1) == std::vector<int>{0, 0, 1});
    CHECK(ts.label(5) == "(0,1,2)");
    CHECK(ts.decode(ts.with(5, 0, 2)) == std::vector<int>{2, 1, 2});
}

TEST_CASE("full set algebra matches the direct construction")
{
    for (auto [n, u] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
        const FiniteBAO a = full_set_algebra(n, u);
        const auto ref = oracle::set_frame(n, u);
        for (int i = 0; i < n; ++i)
            CHECK(pairs_of(a.frame(), cylindrifier_name(i)) == pairs_of(ref, cylindrifier_name(i)));
        for (const auto& [name, members] : ref.constants)
            CHECK(oracle::to_set(a.constant(name)) == std::set<int>(members.begin(), members.end()));
    }
    CHECK_THROWS_AS(full_set_algebra(3, 50, FullSetOptions{{}, false, 1000}), CapExceeded);
}

TEST_CASE("substitutions act by precomposition")
{
    FullSetOptions opt;
    const Transformation tau{1, 1, 0};
    opt.substitutions = {tau};
    opt.transpositions = true;
    const FiniteBAO a = full_set_algebra(3, 2, opt);
    const TupleSpace ts{3, 2};
    std::mt19937_64 rng(6);
    for (int k = 0; k < 30; ++k) {
        const Element x = oracle::random_element(rng, a.atom_count());
        std::set<int> expect;
        for (std::size_t s = 0; s < ts.size(); ++s) {
            const auto v = ts.decode(s);
            std::vector<int> w(3);
            for (int c = 0; c < 3; ++c)
                w[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(tau[static_cast<std::size_t>(c)])];
            if (x.test(ts.encode(w)))
                expect.insert(static_cast<int>(s));
        }
        CHECK(oracle::to_set(a.apply(substitution_name(tau), x)) == expect);
        std::set<int> swapped;
        for (std::size_t s = 0; s < ts.size(); ++s) {
            auto v = ts.decode(s);
            std::swap(v[0], v[2]);
            if (x.test(ts.encode(v)))
                swapped.insert(static_cast<int>(s));
        }
        CHECK(oracle::to_set(a.apply(transposition_name(0, 2), x)) == swapped);
    }
}

TEST_CASE("base classification agrees with the definitions")
{
    for (int u = 1; u <= 3; ++u)
        for (unsigned mask = 0; mask < (1U << (u * u)); ++mask) {
            DirectedBase b{u, {}};
            for (int x = 0; x < u; ++x)
                for (int y = 0; y < u; ++y)
                    if (mask >> (x * u + y) & 1U)
                        b.r.emplace_back(x, y);
            const auto got = classify_base(b);
            const auto want = classify_oracle(b);
            CHECK(got.weak_p == want.weak_p);
            CHECK(got.p_structure == want.p_structure);
            CHECK(got.extensional == want.extensional);
        }
    DirectedBase total{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    CHECK(classify_base(total).weak_p);
}

TEST_CASE("directed cylindrifiers")
{
    const DirectedBase total{2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    const FiniteBAO d = directed_set_algebra(3, total);
    const FiniteBAO full = full_set_algebra(3, 2);
    for (int i = 0; i < 3; ++i) {
        CHECK(pairs_of(d.frame(), cylindrifier_name(i)) == pairs_of(full.frame(), cylindrifier_name(i)));
        CHECK(pairs_of(d.frame(), quasi_name(i)) == pairs_of(full.frame(), cylindrifier_name(i)));
    }

    const DirectedBase sink{3, {{0, 0}, {1, 0}, {2, 0}, {0, 1}}};
    REQUIRE(classify_base(sink).weak_p);
    const FiniteBAO e = directed_set_algebra(2, sink);
    const TupleSpace ts{2, 3};
    const auto elems = oracle::all_elements(e.atom_count());
    std::mt19937_64 rng(12);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 40; ++k) {
            const Element x = elems[rng() % elems.size()];
            const Element y = elems[rng() % elems.size()];
            CHECK(oracle::to_set(e.apply(cylindrifier_name(i), x)) == c_up(ts, sink, i, oracle::to_set(x), false));
            CHECK(oracle::to_set(e.apply(quasi_name(i), x)) == c_up(ts, sink, i, oracle::to_set(x), true));
            // conjugate pair: x . C_up y != 0 iff y . C_down x != 0
            CHECK((x & e.apply(cylindrifier_name(i), y)).any() == (y & e.apply(quasi_name(i), x)).any());
        }
    CHECK_THROWS_AS(directed_set_algebra(2, DirectedBase{2, {}}), ValidationError);

    const FiniteBAO r = cylindric_reduct(d);
    CHECK(r.signature().quasi.empty());
    CHECK(r.has_unary("c0"));
}

TEST_CASE("representation search finds set algebras and respects its bound")
{
    const FiniteBAO a = full_set_algebra(2, 2);
    const auto r = representation_search(a, RepresentationOptions{3, 10, 1});
    REQUIRE(r.found);
    CHECK(r.base == 2);
    CHECK(r.witness.ok());
    CHECK(r.witness.injective);

    const auto one = representation_search(full_set_algebra(2, 1));
    CHECK(one.found);
    CHECK(one.base == 1);

    const auto none = representation_search(a, RepresentationOptions{1, 10, 1});
    CHECK_FALSE(none.found);
    CHECK(none.base == 1);
}
