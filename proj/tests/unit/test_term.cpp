#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/term.hpp"

#include <functional>
#include <random>

using namespace cylkit;

namespace {

// Random term over the cylindric/polyadic fragment with indices below n.
TermPtr random_term(std::mt19937_64& rng, int n, int depth)
{
    auto idx = [&] { return Index{static_cast<int>(rng() % static_cast<unsigned>(n))}; };
    const unsigned pick = depth <= 0 ? rng() % 4 : rng() % 11;
    switch (pick) {
    case 0: return term::var(rng() & 1U ? "x" : "y");
    case 1: return term::zero();
    case 2: return term::one();
    case 3: return term::diag(idx(), idx());
    case 4: return term::c(idx(), random_term(rng, n, depth - 1));
    case 5: return term::s(idx(), idx(), random_term(rng, n, depth - 1));
    case 6: return term::neg(random_term(rng, n, depth - 1));
    case 7: return term::join({random_term(rng, n, depth - 1), random_term(rng, n, depth - 1)});
    case 8: return term::meet({random_term(rng, n, depth - 1), random_term(rng, n, depth - 1)});
    case 9: {
        const Index i = idx();
        Index j = idx();
        while (j == i)
            j = idx();
        return term::p(i, j, random_term(rng, n, depth - 1));
    }
    default: {
        // cylindrification over a set: indices sorted and distinct
        const int a = std::get<int>(idx());
        const int b = std::get<int>(idx());
        if (a == b)
            return term::cset({Index{a}}, random_term(rng, n, depth - 1));
        return term::cset({Index{std::min(a, b)}, Index{std::max(a, b)}}, random_term(rng, n, depth - 1));
    }
    }
}

std::vector<std::vector<int>> tuples(int n, int u)
{
    std::vector<std::vector<int>> out;
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(t);
        int k = n - 1;
        while (k >= 0 && ++t[static_cast<std::size_t>(k)] == u)
            t[static_cast<std::size_t>(k--)] = 0;
        if (k < 0)
            return out;
    }
}

} // namespace

TEST_CASE("printing and parsing round trip")
{
    std::mt19937_64 rng(21);
    for (int k = 0; k < 300; ++k) {
        const auto t = random_term(rng, 4, 4);
        const auto text = to_string(t);
        const auto back = parse_term(text);
        CHECK(structurally_equal(t, back));
        CHECK(to_string(back) == text);
    }
    const auto e = parse_equation("(= (c 0 (* x (c 0 y))) (* (c 0 x) (c 0 y)))");
    CHECK(to_string(e) == "(= (c 0 (* x (c 0 y))) (* (c 0 x) (c 0 y)))");
    CHECK(variables(e) == std::set<std::string>{"x", "y"});
}

TEST_CASE("parse errors carry positions")
{
    try {
        parse_term("(c 0\n  (frob x))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 4);
    }
    CHECK_THROWS_AS(parse_term("(c 0 x"), ParseError);
    CHECK_THROWS_AS(parse_term("(; x)"), ParseError);
    CHECK_THROWS_AS(parse_equation("(c 0 x)"), ParseError);
    CHECK_THROWS_AS(parse_term(")"), ParseError);
}

TEST_CASE("evaluation in a set algebra matches the tuple semantics")
{
    const int n = 3;
    const int u = 2;
    const FiniteBAO alg(oracle::set_frame(n, u));
    const auto ts = tuples(n, u);
    std::mt19937_64 rng(4);

    // Direct meaning of each operation on sets of tuples.
    std::function<std::set<int>(const TermPtr&, const std::set<int>&, const std::set<int>&)> meaning =
        [&](const TermPtr& t, const std::set<int>& x, const std::set<int>& y) -> std::set<int> {
        std::set<int> out;
        auto idx = [&](std::size_t k) { return std::get<int>(t->indices[k]); };
        auto find = [&](const std::vector<int>& v) {
            return static_cast<int>(std::find(ts.begin(), ts.end(), v) - ts.begin());
        };
        const int size = static_cast<int>(ts.size());
        switch (t->kind) {
        case TermKind::Variable: return t->name == "x" ? x : y;
        case TermKind::Zero: return out;
        case TermKind::One:
            for (int a = 0; a < size; ++a)
                out.insert(a);
            return out;
        case TermKind::Diagonal:
            for (int a = 0; a < size; ++a)
                if (ts[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx(0))] ==
                    ts[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx(1))])
                    out.insert(a);
            return out;
        case TermKind::Cylindrify:
        case TermKind::CylindrifySet: {
            const auto arg = meaning(t->args[0], x, y);
            for (int a = 0; a < size; ++a)
                for (int b : arg) {
                    bool agree = true;
                    for (int k = 0; k < n; ++k) {
                        bool free = false;
                        for (std::size_t q = 0; q < t->indices.size(); ++q)
                            free |= idx(q) == k;
                        if (!free && ts[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] !=
                                         ts[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)])
                            agree = false;
                    }
                    if (agree)
                        out.insert(a);
                }
            return out;
        }
        case TermKind::Substitute: {
            // s_i^j X = {s : s with s_i replaced by s_j lies in X}
            const auto arg = meaning(t->args[0], x, y);
            for (int a = 0; a < size; ++a) {
                auto v = ts[static_cast<std::size_t>(a)];
                v[static_cast<std::size_t>(idx(0))] = v[static_cast<std::size_t>(idx(1))];
                if (arg.count(find(v)))
                    out.insert(a);
            }
            return out;
        }
        case TermKind::Transpose: {
            const auto arg = meaning(t->args[0], x, y);
            for (int a = 0; a < size; ++a) {
                auto v = ts[static_cast<std::size_t>(a)];
                std::swap(v[static_cast<std::size_t>(idx(0))], v[static_cast<std::size_t>(idx(1))]);
                if (arg.count(find(v)))
                    out.insert(a);
            }
            return out;
        }
        case TermKind::Complement: {
            const auto arg = meaning(t->args[0], x, y);
            for (int a = 0; a < size; ++a)
                if (!arg.count(a))
                    out.insert(a);
            return out;
        }
        case TermKind::Join:
            for (const auto& s : t->args)
                for (int a : meaning(s, x, y))
                    out.insert(a);
            return out;
        case TermKind::Meet: {
            out = meaning(t->args[0], x, y);
            for (std::size_t k = 1; k < t->args.size(); ++k) {
                const auto m = meaning(t->args[k], x, y);
                std::set<int> keep;
                for (int a : out)
                    if (m.count(a))
                        keep.insert(a);
                out = keep;
            }
            return out;
        }
        default: FAIL("unexpected term kind"); return out;
        }
    };

    // With transpositions in the signature as well.
    AtomStructure withp = oracle::set_frame(n, u);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            withp.signature.transpositions.emplace_back(i, j);
            auto& pairs = withp.unary[transposition_name(i, j)];
            for (int a = 0; a < static_cast<int>(ts.size()); ++a) {
                auto v = ts[static_cast<std::size_t>(a)];
                std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
                pairs.emplace_back(a, static_cast<int>(std::find(ts.begin(), ts.end(), v) - ts.begin()));
            }
        }
    const FiniteBAO palg(withp);
    for (int k = 0; k < 200; ++k) {
        const auto t = random_term(rng, n, 3);
        const Element x = oracle::random_element(rng, alg.atom_count());
        const Element y = oracle::random_element(rng, alg.atom_count());
        const auto expect = meaning(t, oracle::to_set(x), oracle::to_set(y));
        CHECK_MESSAGE(oracle::to_set(eval(t, palg, {{"x", x}, {"y", y}})) == expect, to_string(t));
    }
    CHECK(eval(term::s(1, 1, term::var("x")), alg, {{"x", alg.atom(3)}}) == alg.atom(3));
}

TEST_CASE("evaluation errors")
{
    const FiniteBAO alg(oracle::set_frame(2, 2));
    CHECK_THROWS_AS(eval(term::var("x"), alg), EvaluationError);
    CHECK_THROWS_AS(eval(term::c(5, term::one()), alg), EvaluationError);
    CHECK_THROWS_AS(eval(term::c(std::string("i"), term::one()), alg), EvaluationError);
    CHECK_THROWS_AS(eval(term::conv(term::one()), alg), EvaluationError);
}

TEST_CASE("eta plus is functorial and renames indices only")
{
    std::mt19937_64 rng(9);
    const IndexInjection theta({2, 0, 3}, 4);
    const IndexInjection eta({1, 4, 0, 2}, 5);
    for (int k = 0; k < 100; ++k) {
        const auto t = random_term(rng, 3, 3);
        const auto once = eta_plus(eta.after(theta), t);
        const auto twice = eta_plus(eta, eta_plus(theta, t));
        CHECK(structurally_equal(once, twice));
        CHECK(variables(once) == variables(t));
        CHECK(depth(once) == depth(t));
        for (const auto& i : index_support(once)) {
            const int v = std::get<int>(i);
            CHECK(std::find(eta.after(theta).image().begin(), eta.after(theta).image().end(), v) !=
                  eta.after(theta).image().end());
        }
        CHECK(structurally_equal(eta_plus(IndexInjection::identity(3), t), t));
    }
    CHECK_THROWS_AS(IndexInjection({0, 0}, 2), ValidationError);
    CHECK_THROWS_AS(IndexInjection({0, 3}, 2), ValidationError);
}

TEST_CASE("canonical form is idempotent and evaluation invariant")
{
    std::mt19937_64 rng(13);
    const FiniteBAO alg(oracle::set_frame(3, 2));
    for (int k = 0; k < 100; ++k) {
        const auto t = random_term(rng, 3, 3);
        if (t->kind == TermKind::Transpose)
            continue;
        bool has_p = false;
        for (const auto& [op, _] : operation_multiset(t))
            has_p |= op == "p";
        const auto c = canonical(t);
        CHECK(structurally_equal(canonical(c), c));
        if (!has_p) {
            const Element x = oracle::random_element(rng, alg.atom_count());
            const Element y = oracle::random_element(rng, alg.atom_count());
            CHECK(eval(c, alg, {{"x", x}, {"y", y}}) == eval(t, alg, {{"x", x}, {"y", y}}));
        }
    }
    CHECK(structurally_equal(canonical(parse_term("(+ y x)")), canonical(parse_term("(+ x y)"))));
}

TEST_CASE("bind_indices replaces variables")
{
    const auto t = parse_term("(c i (d i j))");
    CHECK(index_support(t).size() == 2);
    const auto b = bind_indices(t, {{Index{std::string("i")}, 0}, {Index{std::string("j")}, 2}});
    CHECK(to_string(b) == "(c 0 (d 0 2))");
    const auto partial = bind_indices(t, {{Index{std::string("i")}, 1}});
    CHECK(to_string(partial) == "(c 1 (d 1 j))");
}
