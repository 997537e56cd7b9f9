#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/splitting.hpp"
#include "cylkit/term.hpp"

#include <set>

using namespace cylkit;

namespace {

SplitSpec toy_spec()
{
    SplitSpec s;
    s.alpha = 3;
    s.sizes = {2, 2, 2};
    s.p = 3;
    s.generators = {transposition(3, 0, 1)};
    return s;
}

const SplitBase& toy_base()
{
    static const SplitBase b = build_base(toy_spec());
    return b;
}

} // namespace

TEST_CASE("substitution groups")
{
    const auto g = generate_group({transposition(3, 0, 1)}, 3);
    CHECK(g.size() == 2);
    CHECK(g.front() == Transformation{0, 1, 2});
    CHECK(generate_group({Transformation{1, 2, 0}}, 3).size() == 3);
    CHECK(generate_group({transposition(3, 0, 1), Transformation{1, 2, 0}}, 3).size() == 6);
    // (sigma o tau)(k) = sigma(tau(k))
    CHECK(compose_transformations({1, 2, 0}, {0, 0, 1}) == Transformation{1, 1, 2});
}

TEST_CASE("split spec validation")
{
    SplitSpec s = toy_spec();
    s.sizes = {2, 2};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = toy_spec();
    s.p = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("base algebra generated by R")
{
    const auto& b = toy_base();
    CHECK(b.base_size == 6);
    CHECK(b.group.size() == 2);
    std::set<int> distinct(b.r_atoms.begin(), b.r_atoms.end());
    CHECK(distinct.size() == b.r_atoms.size());
    // R has 8 tuples, each coordinate in its own block of U.
    CHECK(b.r.count() == 8);
    for (int a = 0; a < static_cast<int>(b.algebra.atom_count()); ++a)
        CHECK(b.lower(b.lift(b.algebra.atom(a))) == b.algebra.atom(a));
    CHECK(b.lift(b.algebra.atom(b.r_atoms[0])) == b.r);
}

TEST_CASE("splitting R into p pieces")
{
    const auto& b = toy_base();
    const SplitAlgebra s = split(b, 3);
    CHECK(s.algebra.atom_count() == b.algebra.atom_count() + b.group.size() * 2);
    const Element r = s.r();
    for (std::size_t t = 0; t < s.split_atoms.size(); ++t)
        for (int piece : s.split_atoms[t])
            for (int i = 0; i < 3; ++i) {
                // c_i s_tau R_j = c_i s_tau R
                const Element whole = s.lift(b.algebra.atom(s.base_atoms[t]));
                CHECK(s.algebra.apply(cylindrifier_name(i), s.algebra.atom(piece)) ==
                      s.algebra.apply(cylindrifier_name(i), whole));
            }
    const std::string sub = substitution_name(transposition(3, 0, 1));
    for (int a = 0; a < static_cast<int>(s.algebra.atom_count()); ++a)
        CHECK(s.algebra.apply(sub, s.algebra.apply(sub, s.algebra.atom(a))) == s.algebra.atom(a));
    CHECK(s.algebra.apply(sub, s.algebra.atom(s.split_atoms[0][1])) == s.algebra.atom(s.split_atoms[1][1]));
    CHECK(r == s.lift(b.algebra.atom(b.r_atoms[0])));
}

TEST_CASE("the witness term separates split algebras from set algebras")
{
    const auto& b = toy_base();
    const auto tau = witness_term(2, 3);
    const Element r = b.algebra.atom(b.r_atoms[0]);
    CHECK(eval(tau, b.algebra, {{"x", r}}).none());
    const SplitAlgebra s = split(b, 3);
    CHECK(eval(tau, s.algebra, {{"x", s.r()}}).none());

    // In a set algebra whose 0-projection has three points it is nonzero.
    const FiniteBAO full(oracle::set_frame(3, 3));
    CHECK(eval(tau, full, {{"x", full.one()}}).any());
    const FiniteBAO two(oracle::set_frame(3, 2));
    CHECK(eval(tau, two, {{"x", two.one()}}).none());
    CHECK_THROWS_AS(witness_term(3, 3), ValidationError);
    CHECK_THROWS_AS(witness_term(0, 3), ValidationError);
}

TEST_CASE("real partitions are splittings inside the set algebra")
{
    const auto& b = toy_base();
    const auto cells = real_partition(b, 2);
    REQUIRE(cells.size() == 2);
    CHECK((cells[0] & cells[1]).none());
    CHECK((cells[0] | cells[1]) == b.r);
    for (const auto& c : cells)
        for (int i = 0; i < 3; ++i)
            CHECK(b.full.apply(cylindrifier_name(i), c) == b.full.apply(cylindrifier_name(i), b.r));
    CHECK_THROWS_AS(real_partition(b, 3), ValidationError);
}

TEST_CASE("blur, small subalgebra and representation embedding")
{
    const auto& b = toy_base();
    const SplitAlgebra s = split(b, 3);
    const std::vector<Element> gens{s.algebra.atom(s.split_atoms[0][0])};
    const auto blocks = blur(s, gens);
    CHECK(blocks.size() == 2);
    std::set<int> all;
    for (const auto& blk : blocks)
        all.insert(blk.begin(), blk.end());
    CHECK(all == std::set<int>{0, 1, 2});

    const auto small = small_subalgebra(s, gens);
    CHECK(small.blocks == blocks);
    CHECK(small.sub.contains(gens[0]));
    const auto rep = rep_embedding(b, s, small);
    CHECK(rep.witness.ok());
    CHECK(rep.witness.injective);
    CHECK(rep.cells.size() == blocks.size());

    // No generators: everything is blurred into one block.
    CHECK(blur(s, {}).size() == 1);
}

TEST_CASE("refining a splitting embeds the coarser one")
{
    const auto& b = toy_base();
    const SplitAlgebra s2 = split(b, 2);
    const SplitAlgebra s4 = split(b, 4);
    const auto w = split_embedding(s2, s4, {{0, 1}, {2, 3}});
    CHECK(w.ok());
    CHECK(w.injective);
    CHECK_THROWS_AS(split_embedding(s2, s4, {{0, 1}, {1, 2, 3}}), ValidationError);
}
