#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"
#include "cylkit/monk.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/schema.hpp"

#include <array>
#include <map>
#include <set>

using namespace cylkit;

namespace {

oracle::RawMonkAtom raw(const MonkAtom& a)
{
    oracle::RawMonkAtom r{a.cls, {}};
    for (int i = 0; i < a.m; ++i)
        for (int j = i + 1; j < a.m; ++j)
            if (!a.related(i, j))
                r.f[{i, j}] = a.f(i, j);
    return r;
}

} // namespace

TEST_CASE("Monk atoms match brute-force enumeration")
{
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {4, 2}}) {
        const auto atoms = monk_atoms(m, n);
        std::set<oracle::RawMonkAtom> got;
        for (const auto& a : atoms)
            got.insert(raw(a));
        CHECK(got.size() == atoms.size());
        CHECK_MESSAGE(got == oracle::monk_atoms_brute(m, n), "m=" << m << " n=" << n);
    }
    CHECK(monk_atoms(3, 3).size() == 34);
    CHECK_THROWS_AS(monk_atoms(9, 3), CapExceeded);
}

TEST_CASE("Monk frame relations follow the definition")
{
    const int m = 3;
    const auto atoms = monk_atoms(m, 2);
    const auto frame = monk_structure(m, 2);
    const int size = static_cast<int>(atoms.size());
    for (int k = 0; k < m; ++k) {
        std::set<AtomPair> expect;
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) {
                const auto& x = atoms[static_cast<std::size_t>(a)];
                const auto& y = atoms[static_cast<std::size_t>(b)];
                bool agree = true;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        if (i == k || j == k)
                            continue;
                        if (x.related(i, j) != y.related(i, j) || (!x.related(i, j) && x.f(i, j) != y.f(i, j)))
                            agree = false;
                    }
                if (agree)
                    expect.insert({a, b});
            }
        const auto& got = frame.unary.at(cylindrifier_name(k));
        CHECK(std::set<AtomPair>(got.begin(), got.end()) == expect);
        for (int l = k; l < m; ++l) {
            std::vector<int> e;
            for (int a = 0; a < size; ++a)
                if (atoms[static_cast<std::size_t>(a)].related(k, l))
                    e.push_back(a);
            auto c = frame.constants.at(diagonal_name(k, l));
            std::sort(c.begin(), c.end());
            CHECK(c == e);
        }
    }
}

TEST_CASE("G(3,3) satisfies the CA_3 correspondents")
{
    CHECK(ca_frame_correspondents(monk_structure(3, 3), 3).holds());
    CHECK(ca_frame_correspondents(monk_structure(3, 1), 3).holds());
}

TEST_CASE("relativizing a reduct of C(n, n+k) gives C(m, m+k)")
{
    for (auto [m, n, k] : std::vector<std::array<int, 3>>{{2, 3, 1}, {2, 3, 2}}) {
        const FiniteBAO big = monk_algebra(n, n + k);
        const Element x = monk_x_element(m, n, k);
        std::vector<int> rho;
        for (int i = 0; i < m; ++i)
            rho.push_back(i);
        const FiniteBAO rl = relativize(reduct_rho(big, rho), x);
        const FiniteBAO small = monk_algebra(m, m + k);
        REQUIRE(rl.atom_count() == small.atom_count());
        SearchOptions opt;
        opt.max_atoms = 4096;
        CHECK(find_isomorphism(rl, small, opt).has_value());
        const auto atoms = monk_atoms(n, n + k);
        for (std::size_t a = 0; a < atoms.size(); ++a)
            CHECK(x.test(a) == monk_x_member(atoms[a], m, k));
    }
}

TEST_CASE("Johnson extension transpositions are involutive atom permutations")
{
    const FiniteBAO alg(johnson_extension(3, 2));
    const std::string p01 = transposition_name(0, 1);
    for (int a = 0; a < static_cast<int>(alg.atom_count()); ++a) {
        const Element img = alg.apply(p01, alg.atom(a));
        REQUIRE(img.count() == 1);
        CHECK(alg.apply(p01, img) == alg.atom(a));
        // p_01 c_0 = c_1 p_01
        CHECK(alg.apply(p01, alg.apply("c0", alg.atom(a))) == alg.apply("c1", alg.apply(p01, alg.atom(a))));
    }
}
