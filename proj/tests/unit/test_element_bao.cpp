#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/bao.hpp"
#include "cylkit/errors.hpp"

#include <random>

using namespace cylkit;

TEST_CASE("element basics")
{
    Element x(70);
    CHECK(x.none());
    x.set(0);
    x.set(69);
    CHECK(x.count() == 2);
    CHECK(x.test(69));
    CHECK_FALSE(x.test(68));
    CHECK(x.atoms() == std::vector<int>{0, 69});
    CHECK((~x).count() == 68);
    CHECK(Element::full(70).is_full());
    CHECK(x.next(1) == 69);
    CHECK_FALSE(x.next(70).has_value());
    CHECK(x.to_string() == "{0,69}");
}

TEST_CASE("element operations mirror std::set")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + rng() % 130;
        const Element a = oracle::random_element(rng, n);
        const Element b = oracle::random_element(rng, n);
        const auto sa = oracle::to_set(a);
        const auto sb = oracle::to_set(b);
        std::set<int> u = sa, i, d;
        u.insert(sb.begin(), sb.end());
        for (int v : sa)
            (sb.count(v) ? i : d).insert(v);
        CHECK(oracle::to_set(a | b) == u);
        CHECK(oracle::to_set(a & b) == i);
        CHECK(oracle::to_set(a - b) == d);
        CHECK((a & b).is_subset_of(a));
        CHECK(a.intersects(b) == !i.empty());
        CHECK((~~a) == a);
        CHECK((~a).count() == n - a.count());
        std::vector<int> seen;
        a.for_each([&](int v) { seen.push_back(v); });
        CHECK(seen == a.atoms());
    }
}

TEST_CASE("combining elements of different universes is a frame mismatch")
{
    Element a(3);
    Element b(4);
    CHECK_THROWS_AS(a | b, FrameMismatch);
    CHECK_THROWS_AS(static_cast<void>(a.is_subset_of(b)), FrameMismatch);
    CHECK_THROWS_AS(Element::singleton(3, 3), FrameMismatch);
}

TEST_CASE("operators agree with the relational definition and are additive")
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 30; ++round) {
        const int n = 1 + static_cast<int>(rng() % 9);
        const auto frame = oracle::random_frame(rng, n);
        const FiniteBAO alg(frame);
        for (const auto& x : oracle::all_elements(static_cast<std::size_t>(n))) {
            for (const char* op : {"f", "g"}) {
                CHECK(oracle::to_set(alg.apply(op, x)) == oracle::apply(alg.frame(), op, oracle::to_set(x)));
                const Element y = oracle::random_element(rng, static_cast<std::size_t>(n));
                CHECK(alg.apply(op, x | y) == (alg.apply(op, x) | alg.apply(op, y)));
            }
            const Element y = oracle::random_element(rng, static_cast<std::size_t>(n));
            CHECK(oracle::to_set(alg.compose(x, y)) == oracle::compose(alg.frame(), oracle::to_set(x), oracle::to_set(y)));
        }
        CHECK(alg.apply("f", alg.zero()).none());
        CHECK(alg.compose(alg.zero(), alg.one()).none());
    }
}

TEST_CASE("image and witnesses are the two directions of the relation")
{
    std::mt19937_64 rng(3);
    const auto frame = oracle::random_frame(rng, 6);
    const FiniteBAO alg(frame);
    for (auto [a, b] : alg.frame().unary.at("f")) {
        const auto img = alg.image("f", b);
        const auto wit = alg.witnesses("f", a);
        CHECK(std::find(img.begin(), img.end(), a) != img.end());
        CHECK(std::find(wit.begin(), wit.end(), b) != wit.end());
    }
}

TEST_CASE("frame validation")
{
    AtomStructure s;
    s.atoms = {"a", "a"};
    CHECK_THROWS_AS(FiniteBAO{s}, ValidationError);
    s.atoms = {"a", "b"};
    s.unary["c0"] = {{0, 2}};
    s.signature = cylindric_signature(1);
    CHECK_THROWS_AS(FiniteBAO{s}, ValidationError);
    s.unary["c0"] = {{0, 0}, {1, 1}};
    s.constants["d00"] = {0, 1};
    CHECK_NOTHROW(FiniteBAO{s});
    s.signature.cylindrifiers = {1};
    CHECK_THROWS_AS(FiniteBAO{s}, ValidationError);
}

TEST_CASE("unknown operators and foreign elements")
{
    const FiniteBAO alg(oracle::set_frame(2, 2));
    CHECK_THROWS_AS(alg.apply("c7", alg.one()), EvaluationError);
    CHECK_THROWS_AS(alg.apply("c0", Element(3)), FrameMismatch);
}

TEST_CASE("product acts componentwise")
{
    const FiniteBAO a(oracle::set_frame(2, 2));
    const FiniteBAO b(oracle::set_frame(2, 3));
    const FiniteBAO p = product(a, b);
    CHECK(p.atom_count() == a.atom_count() + b.atom_count());
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const Element x = oracle::random_element(rng, a.atom_count());
        const Element y = oracle::random_element(rng, b.atom_count());
        Element xy(p.atom_count());
        x.for_each([&](int v) { xy.set(static_cast<std::size_t>(v)); });
        y.for_each([&](int v) { xy.set(a.atom_count() + static_cast<std::size_t>(v)); });
        const Element img = p.apply("c1", xy);
        Element expect(p.atom_count());
        a.apply("c1", x).for_each([&](int v) { expect.set(static_cast<std::size_t>(v)); });
        b.apply("c1", y).for_each([&](int v) { expect.set(a.atom_count() + static_cast<std::size_t>(v)); });
        CHECK(img == expect);
    }
    CHECK_THROWS_AS(product(a, FiniteBAO(oracle::set_frame(3, 2))), ValidationError);
}

TEST_CASE("generated subalgebra is the least closed partition")
{
    const FiniteBAO a(oracle::set_frame(2, 3));
    const Element g = a.atom(0);
    const auto sub = generated_subalgebra(a, std::span<const Element>(&g, 1));
    const auto elems = sub.elements();
    std::set<Element> closed(elems.begin(), elems.end());
    CHECK(closed.count(g));
    for (const auto& x : elems) {
        CHECK(closed.count(a.apply("c0", x)));
        CHECK(closed.count(a.apply("c1", x)));
        CHECK(closed.count(~x));
        for (const auto& y : elems)
            CHECK(closed.count(x | y));
    }
    // Oracle: close {g, d01} under the operations by brute force.
    std::set<Element> brute{a.zero(), a.one(), g, a.constant("d00"), a.constant("d01"), a.constant("d11")};
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<Element> cur(brute.begin(), brute.end());
        for (const auto& x : cur) {
            for (const Element& y : {Element(~x), a.apply("c0", x), a.apply("c1", x)})
                grew |= brute.insert(y).second;
            for (const auto& y : cur)
                grew |= brute.insert(x | y).second;
        }
    }
    CHECK(brute == closed);

    const FiniteBAO m = materialize(a, sub);
    CHECK(m.atom_count() == sub.atom_count());
    for (std::size_t k = 0; k < sub.blocks.size(); ++k) {
        const Element img = a.apply("c0", sub.blocks[k]);
        Element via(m.atom_count());
        for (int b : decompose(sub.blocks, img, "img"))
            via.set(static_cast<std::size_t>(b));
        CHECK(m.apply("c0", m.atom(static_cast<int>(k))) == via);
    }
}

TEST_CASE("materialize rejects a partition that is not closed")
{
    const FiniteBAO a(oracle::set_frame(2, 2));
    Subalgebra bad;
    bad.blocks = {a.atom(0), a.one() - a.atom(0)};
    CHECK_THROWS_AS(materialize(a, bad), ValidationError);
    CHECK_THROWS_AS(decompose(bad.blocks, a.atom(1), "x"), ValidationError);
}
