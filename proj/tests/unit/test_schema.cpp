#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/schema.hpp"

#include <algorithm>
#include <set>

using namespace cylkit;

namespace {

std::set<std::string> canon_strings(const std::vector<NamedEquation>& eqs)
{
    std::set<std::string> out;
    for (const auto& e : eqs)
        out.insert(to_string(canonical(e.equation)));
    return out;
}

} // namespace

TEST_CASE("CA_3 instantiation equals the hand-written list")
{
    const auto sigma = instantiate_schema(ca_schema(), 3);
    std::set<std::string> hand;
    for (const auto& line : oracle::hand_ca3())
        hand.insert(to_string(canonical(parse_equation(line))));
    CHECK(canon_strings(sigma) == hand);
    CHECK(sigma.size() == hand.size());
    CHECK(hand.size() == 30);
}

TEST_CASE("instantiation is closed under index injections")
{
    const auto schema = ca_schema();
    for (int n : {3, 4}) {
        const auto small = instantiate_schema(schema, n);
        const auto big = canon_strings(instantiate_schema(schema, n + 1));
        for (const auto& img : oracle::injections(n, n + 1)) {
            const IndexInjection rho(img, n + 1);
            for (const auto& e : small)
                CHECK_MESSAGE(big.count(to_string(canonical(eta_plus(rho, e.equation)))), to_string(e.equation));
        }
    }
    const auto pea = pea_schema();
    const auto p3 = instantiate_schema(pea, 3);
    const auto p4 = canon_strings(instantiate_schema(pea, 4));
    for (const auto& img : oracle::injections(3, 4))
        for (const auto& e : p3)
            CHECK(p4.count(to_string(canonical(eta_plus(IndexInjection(img, 4), e.equation)))));
}

TEST_CASE("instantiation output is deduplicated and index-concrete")
{
    const auto sigma = instantiate_schema(pea_schema(), 4);
    CHECK(canon_strings(sigma).size() == sigma.size());
    for (const auto& e : sigma)
        for (const auto& i : index_support(e.equation)) {
            REQUIRE(std::holds_alternative<int>(i));
            CHECK(std::get<int>(i) < 4);
        }
    CHECK_THROWS_AS(instantiate_schema(ca_schema(), 2), ValidationError);
}

TEST_CASE("schema validation")
{
    auto s = ca_schema();
    s.templates.push_back({"bad", parse_equation("(= (q i x) x)")});
    CHECK_THROWS_AS(s.validate(), ValidationError);
    auto w = ca_schema();
    w.templates.push_back({"wide", parse_equation("(= (c i (c j (c k (c l x)))) x)")});
    CHECK_THROWS_AS(w.validate(), ValidationError);
    CHECK_NOTHROW(pea_schema().validate());
}

TEST_CASE("a full set algebra satisfies CA_3")
{
    for (int u : {1, 2}) {
        const FiniteBAO alg(oracle::set_frame(3, u));
        CHECK(check_variety(alg, instantiate_schema(ca_schema(), 3), CheckMode::exhaustive()).all_hold());
    }
    const FiniteBAO alg(oracle::set_frame(3, 2));
    for (const auto& e : instantiate_schema(ca_schema(), 3)) {
        const auto v = check_equation(alg, e.equation, CheckMode::sampled(1, 50));
        CHECK(v.holds);
        if (!variables(e.equation).empty())
            CHECK_FALSE(v.definitive);
    }
}

TEST_CASE("exhaustive counterexamples are genuine and minimal")
{
    // c0 that is not extensive: C2 fails.
    AtomStructure s;
    s.atoms = {"a", "b", "c"};
    s.signature = cylindric_signature(1);
    s.unary["c0"] = {{1, 0}, {1, 1}, {2, 2}};
    s.constants["d00"] = {0, 1, 2};
    const FiniteBAO alg(s);
    const auto v = check_equation(alg, parse_equation("(= (+ x (c 0 x)) (c 0 x))"), CheckMode::exhaustive());
    REQUIRE_FALSE(v.holds);
    CHECK(v.definitive);
    REQUIRE(v.counterexample.has_value());
    const auto& x = v.counterexample->at("x");
    CHECK(x == alg.atom(0));
    // Oracle: evaluate both sides independently.
    const auto lhs = oracle::to_set(x);
    auto rhs = oracle::apply(alg.frame(), "c0", lhs);
    std::set<int> join = lhs;
    join.insert(rhs.begin(), rhs.end());
    CHECK(join != rhs);
}

TEST_CASE("modes refuse what they cannot decide")
{
    const FiniteBAO alg(oracle::set_frame(3, 3));
    const auto c3 = parse_equation("(= (c 0 (* x (c 0 y))) (* (c 0 x) (c 0 y)))");
    CHECK_THROWS_AS(check_equation(alg, c3, CheckMode::exhaustive()), CapExceeded);
    CHECK(join_preserving(c3));
    const auto c7 = parse_equation("(= (* (c 0 (* (d 0 1) x)) (c 0 (* (d 0 1) (- x)))) 0)");
    CHECK_FALSE(join_preserving(c7));
    CHECK_THROWS_AS(check_equation(alg, c7, CheckMode::atoms()), ValidationError);
    CHECK(join_preserving(parse_equation("(= (c 0 (c 1 x)) (c 1 (c 0 x)))")));
}

TEST_CASE("atom mode agrees with exhaustive mode on join-preserving equations")
{
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        auto f = oracle::random_frame(rng, 4, false);
        f.signature.extra_unary.clear();
        f.signature.extra_constants.clear();
        f.signature.dimension = 2;
        f.signature.cylindrifiers = {0, 1};
        f.unary["c0"] = f.unary["f"];
        f.unary["c1"] = f.unary["g"];
        f.unary.erase("f");
        f.unary.erase("g");
        f.constants.clear();
        const FiniteBAO alg(f);
        for (const char* text : {"(= (c 0 (c 1 x)) (c 1 (c 0 x)))", "(= (+ x (c 0 x)) (c 0 x))", "(= (c 0 (c 0 x)) (c 0 x))"}) {
            const auto e = parse_equation(text);
            CHECK(check_equation(alg, e, CheckMode::atoms()).holds == check_equation(alg, e, CheckMode::exhaustive()).holds);
        }
    }
}
