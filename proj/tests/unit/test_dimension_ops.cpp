#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/schema.hpp"

#include <map>
#include <random>

using namespace cylkit;

namespace {

// Tuple of each atom of oracle::set_frame, read back from its label.
std::vector<int> tuple_of(const FiniteBAO& alg, int atom)
{
    std::vector<int> t;
    for (char ch : alg.atom_label(atom))
        t.push_back(ch - '0');
    return t;
}

} // namespace

TEST_CASE("dimension sets in a set algebra")
{
    const FiniteBAO alg(oracle::set_frame(3, 2));
    CHECK(dimension_set(alg, alg.one()).empty());
    CHECK(dimension_set(alg, alg.zero()).empty());
    CHECK(dimension_set(alg, alg.constant("d01")) == std::vector<int>{0, 1});
    CHECK(dimension_set(alg, alg.atom(0)) == std::vector<int>{0, 1, 2});
    CHECK(is_equivalence(alg, "c1"));
}

TEST_CASE("neat reduct of a set algebra is the lower-dimensional set algebra")
{
    const FiniteBAO big(oracle::set_frame(3, 2));
    const auto nr = neat_reduct(big, {0, 1});
    CHECK(nr.algebra.atom_count() == 4);
    CHECK(find_isomorphism(nr.algebra, FiniteBAO(oracle::set_frame(2, 2))).has_value());

    // Oracle: the c_2-fixed elements, enumerated directly.
    std::size_t fixed = 0;
    for (const auto& x : oracle::all_elements(big.atom_count()))
        if (oracle::to_set(x) == oracle::apply(big.frame(), "c2", oracle::to_set(x)))
            ++fixed;
    CHECK(fixed == std::size_t{1} << nr.algebra.atom_count());
    CHECK(neat_reduct_elements(big, {0, 1}).size() == fixed);
    for (const auto& cls : nr.classes)
        CHECK(big.apply("c2", cls) == cls);

    // Renumbering: Nr_{1,2} also looks like ^2 U.
    CHECK(find_isomorphism(neat_reduct(big, {1, 2}).algebra, FiniteBAO(oracle::set_frame(2, 2))).has_value());
}

TEST_CASE("neat reduct refuses non-equivalence cylindrifiers")
{
    AtomStructure s = oracle::set_frame(2, 2);
    s.unary["c1"] = {{0, 1}, {1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(neat_reduct(FiniteBAO(s), {0}), ValidationError);
}

TEST_CASE("reduct along an index map")
{
    const FiniteBAO alg(oracle::set_frame(3, 2));
    const FiniteBAO r = reduct_rho(alg, {2, 0});
    CHECK(r.signature().dimension == 2);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const Element x = oracle::random_element(rng, alg.atom_count());
        CHECK(r.apply("c0", x) == alg.apply("c2", x));
        CHECK(r.apply("c1", x) == alg.apply("c0", x));
    }
    CHECK(r.constant("d01") == alg.constant("d02"));
    CHECK_THROWS_AS(reduct_rho(alg, {0, 0}), ValidationError);
}

TEST_CASE("relativization cuts every operation down")
{
    const FiniteBAO alg(oracle::set_frame(3, 2));
    const Element x = alg.constant("d01");
    const FiniteBAO rl = relativize(alg, x);
    const auto below = x.atoms();
    REQUIRE(rl.atom_count() == below.size());
    for (std::size_t a = 0; a < below.size(); ++a) {
        const std::set<int> y{below[a]};
        for (const char* op : {"c0", "c1", "c2"}) {
            std::set<int> expect;
            for (int v : oracle::apply(alg.frame(), op, y))
                if (x.test(static_cast<std::size_t>(v)))
                    expect.insert(static_cast<int>(std::find(below.begin(), below.end(), v) - below.begin()));
            CHECK(oracle::to_set(rl.apply(op, rl.atom(static_cast<int>(a)))) == expect);
        }
    }
    CHECK_THROWS_AS(relativize(alg, alg.zero()), ValidationError);
}

TEST_CASE("relation algebra reduct of a set algebra is the full relation algebra")
{
    const int u = 2;
    const FiniteBAO alg(oracle::set_frame(3, u));
    const auto ra = ra_reduct(alg, RaCoordinates{0, 1, 2});
    REQUIRE(ra.algebra.atom_count() == static_cast<std::size_t>(u * u));
    CHECK(ra.associative);
    CHECK(ra_associative(ra.algebra));
    CHECK(ra_atom_axioms(ra.algebra).holds());

    // Each reduct atom is a pair (s_0, s_1); compose them as binary relations.
    std::map<int, std::pair<int, int>> pair_of;
    for (int a = 0; a < static_cast<int>(alg.atom_count()); ++a) {
        const auto t = tuple_of(alg, a);
        const int cls = ra.atom_map[static_cast<std::size_t>(a)];
        const auto p = std::make_pair(t[0], t[1]);
        if (pair_of.count(cls))
            CHECK(pair_of[cls] == p);
        pair_of[cls] = p;
    }
    const int n = static_cast<int>(ra.algebra.atom_count());
    for (int a = 0; a < n; ++a) {
        const auto [x0, x1] = pair_of[a];
        const auto conv = ra.algebra.apply(kConverseName, ra.algebra.atom(a)).atoms();
        REQUIRE(conv.size() == 1);
        CHECK(pair_of[conv[0]] == std::make_pair(x1, x0));
        CHECK(ra.algebra.constant(kIdentityName).test(static_cast<std::size_t>(a)) == (x0 == x1));
        for (int b = 0; b < n; ++b) {
            std::set<int> expect;
            if (x1 == pair_of[b].first)
                for (int c = 0; c < n; ++c)
                    if (pair_of[c] == std::make_pair(x0, pair_of[b].second))
                        expect.insert(c);
            CHECK(oracle::to_set(ra.algebra.compose(ra.algebra.atom(a), ra.algebra.atom(b))) == expect);
        }
    }
    CHECK_THROWS_AS(ra_reduct(FiniteBAO(oracle::set_frame(2, 2))), ValidationError);
}

TEST_CASE("crafted correspondent violations")
{
    AtomStructure s = oracle::set_frame(3, 2);
    s.constants["d00"].pop_back();
    const auto r = ca_frame_correspondents(s, 3);
    REQUIRE_FALSE(r.holds());
    CHECK(r.first_violation()->check == "C5");

    // A non-transitive T_0 fails C3 and the equation c0 c0 x = c0 x.
    AtomStructure t = oracle::set_frame(3, 1);
    t.atoms = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        auto& pairs = t.unary[cylindrifier_name(i)];
        pairs.clear();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                pairs.emplace_back(a, b);
    }
    t.unary["c0"] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}, {1, 2}, {2, 1}};
    for (auto& [name, members] : t.constants)
        members = {0, 1, 2};
    const auto rt = ca_frame_correspondents(t, 3);
    REQUIRE_FALSE(rt.holds());
    CHECK(rt.first_violation()->check == "C3");
    const auto v = check_equation(FiniteBAO(t), parse_equation("(= (c 0 (c 0 x)) (c 0 x))"), CheckMode::exhaustive());
    CHECK_FALSE(v.holds);
    CHECK(v.counterexample.has_value());
}

TEST_CASE("correspondents agree with exhaustive equation checking")
{
    const auto sigma = instantiate_schema(ca_schema(), 3);
    std::mt19937_64 rng(31);
    int positive = 0;
    int negative = 0;
    std::vector<AtomStructure> corpus{oracle::set_frame(3, 1)};
    const FiniteBAO one(oracle::set_frame(3, 1));
    corpus.push_back(product(one, one).frame());
    corpus.push_back(product(product(one, one), one).frame());
    for (int k = 0; k < 150; ++k)
        corpus.push_back(oracle::random_partition_frame(rng, 3, 1 + static_cast<int>(rng() % 4)));
    for (const auto& f : corpus) {
        const bool frame = ca_frame_correspondents(f, 3).holds();
        const bool eq = check_variety(FiniteBAO(f), sigma, CheckMode::exhaustive()).all_hold();
        CHECK(frame == eq);
        (eq ? positive : negative)++;
    }
    CHECK(positive >= 3);
    CHECK(negative >= 3);
}
