#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"
#include "cylkit/morphisms.hpp"

#include <numeric>
#include <random>

using namespace cylkit;

namespace {

// Copy of the frame with atom a renamed to perm[a].
AtomStructure permuted(const AtomStructure& f, const std::vector<int>& perm)
{
    AtomStructure g = f;
    const std::size_t n = f.atoms.size();
    for (std::size_t a = 0; a < n; ++a)
        g.atoms[static_cast<std::size_t>(perm[a])] = f.atoms[a];
    for (auto& [name, pairs] : g.unary)
        for (auto& [a, b] : pairs) {
            a = perm[static_cast<std::size_t>(a)];
            b = perm[static_cast<std::size_t>(b)];
        }
    for (auto& [name, members] : g.constants)
        for (auto& a : members)
            a = perm[static_cast<std::size_t>(a)];
    if (f.has_composition) {
        g.composition = Consistency(n, false);
        for (int a = 0; a < static_cast<int>(n); ++a)
            for (int b = 0; b < static_cast<int>(n); ++b)
                for (int c = 0; c < static_cast<int>(n); ++c)
                    if (f.composition.consistent(a, b, c))
                        g.composition.set(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)],
                                          perm[static_cast<std::size_t>(c)], true);
    }
    return g;
}

} // namespace

TEST_CASE("isomorphism search agrees with plain backtracking")
{
    std::mt19937_64 rng(23);
    int found = 0;
    for (int round = 0; round < 60; ++round) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const auto f = oracle::random_frame(rng, n, round % 2 == 0);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const FiniteBAO a(f);
        // Half the time compare against an unrelated frame.
        const FiniteBAO b(round % 3 == 0 ? oracle::random_frame(rng, n, round % 2 == 0) : permuted(f, perm));
        const auto fast = find_isomorphism(a, b);
        const auto slow = find_isomorphism_unpruned(a, b);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) {
            ++found;
            CHECK(fast->ok());
            CHECK(check_homomorphism(a, b, fast->images, {true, true}).ok());
        }
    }
    CHECK(found > 20);
}

TEST_CASE("parallel isomorphism search gives the same verdict")
{
    const FiniteBAO a(oracle::set_frame(3, 2));
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    const FiniteBAO b(permuted(a.frame(), perm));
    CHECK(find_isomorphism(a, b, SearchOptions{64, 4}).has_value());
    CHECK_FALSE(find_isomorphism(a, FiniteBAO(oracle::set_frame(3, 1)), SearchOptions{64, 4}).has_value());
    CHECK_THROWS_AS(find_isomorphism(a, b, SearchOptions{4, 1}), CapExceeded);
}

TEST_CASE("homomorphism checks")
{
    const FiniteBAO a(oracle::set_frame(2, 2));
    std::vector<Element> id;
    for (int k = 0; k < 4; ++k)
        id.push_back(a.atom(k));
    const auto w = check_homomorphism(a, a, id, {true, true});
    CHECK(w.ok());
    CHECK(w.injective);
    CHECK(w.surjective);

    // Swapping two atoms that sit differently on the diagonal is not a morphism.
    auto bad = id;
    std::swap(bad[0], bad[1]);
    CHECK_FALSE(check_homomorphism(a, a, bad).ok());

    // Images must partition the unit.
    auto overlap = id;
    overlap[1] = overlap[0];
    CHECK_FALSE(check_homomorphism(a, a, overlap).ok());
    CHECK_THROWS_AS(check_homomorphism(a, a, {a.atom(0)}), ValidationError);

    const auto twice = compose(a, a, w, w);
    CHECK(twice.ok());
    CHECK(twice.atom_map() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("embeddings between small set algebras")
{
    const FiniteBAO one(oracle::set_frame(1, 1));
    const FiniteBAO two(oracle::set_frame(1, 2));
    // The only map sends the single atom to the unit.
    const auto e = find_embeddings(one, two);
    REQUIRE(e.size() == 1);
    CHECK(e[0].images[0].is_full());
    // ^2 1 has d_01 = 1, so it cannot sit inside ^2 2.
    CHECK(find_embeddings(FiniteBAO(oracle::set_frame(2, 1)), FiniteBAO(oracle::set_frame(2, 2))).empty());
    // Automorphisms of ^2 2: brute force over atom permutations.
    const FiniteBAO sq(oracle::set_frame(2, 2));
    std::vector<int> perm{0, 1, 2, 3};
    std::size_t autos = 0;
    do {
        if (check_homomorphism(sq, sq, from_atom_map(sq, sq, perm).images, {true, true}).ok())
            ++autos;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(autos >= 2);
    CHECK(find_embeddings(sq, sq).size() == autos);
}

TEST_CASE("amalgamation and super amalgamation on a small span")
{
    const FiniteBAO a0(oracle::set_frame(1, 1));
    const FiniteBAO a1(oracle::set_frame(1, 2));
    const auto i = find_embeddings(a0, a1);
    REQUIRE(i.size() == 1);
    std::vector<Element> id{a1.atom(0), a1.atom(1)};
    const auto m = check_homomorphism(a1, a1, id, {true, false});
    const auto r = amalgam_check(a0, a1, a1, i[0], i[0], a1, m, m);
    CHECK(r.amalgam);
    CHECK_FALSE(r.super);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->first.is_subset_of(r.witness->second));

    const auto found = amalgam_search(a0, a1, a1, i[0], i[0], std::vector<FiniteBAO>{a0, a1});
    CHECK(found.found);
    CHECK(found.d->atom_count() == 2);
}

TEST_CASE("ca_frames are CA frames")
{
    for (int n : {1, 2})
        for (int atoms = 1; atoms <= 3; ++atoms)
            for (const auto& f : ca_frames(n, atoms)) {
                CHECK(f.atoms.size() == static_cast<std::size_t>(atoms));
                CHECK(ca_frame_correspondents(f, n).holds());
            }
    CHECK_FALSE(ca_frames(2, 2).empty());
}
