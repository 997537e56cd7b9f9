#pragma once

// Brute-force reference computations used to cross-check the library. They
// read frames directly and never go through FiniteBAO's caches.

#include "cylkit/atom_structure.hpp"
#include "cylkit/bao.hpp"
#include "cylkit/element.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace cylkit;

inline std::set<int> to_set(const Element& x)
{
    std::set<int> s;
    for (std::size_t a = 0; a < x.universe(); ++a)
        if (x.test(a))
            s.insert(static_cast<int>(a));
    return s;
}

inline Element from_set(std::size_t n, const std::set<int>& s)
{
    Element x(n);
    for (int a : s)
        x.set(static_cast<std::size_t>(a));
    return x;
}

// f(X) = {a : exists b in X, (a, b) in T}
inline std::set<int> apply(const AtomStructure& f, const std::string& op, const std::set<int>& x)
{
    std::set<int> out;
    for (auto [a, b] : f.unary.at(op))
        if (x.count(b))
            out.insert(a);
    return out;
}

inline std::set<int> compose(const AtomStructure& f, const std::set<int>& x, const std::set<int>& y)
{
    std::set<int> out;
    const int n = static_cast<int>(f.atoms.size());
    for (int a = 0; a < n; ++a)
        for (int b : x)
            for (int c : y)
                if (f.composition.consistent(a, b, c))
                    out.insert(a);
    return out;
}

inline std::vector<Element> all_elements(std::size_t n)
{
    std::vector<Element> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Element x(n);
        for (std::size_t a = 0; a < n; ++a)
            if (mask >> a & 1U)
                x.set(a);
        out.push_back(x);
    }
    return out;
}

inline Element random_element(std::mt19937_64& rng, std::size_t n)
{
    Element x(n);
    for (std::size_t a = 0; a < n; ++a)
        if (rng() & 1U)
            x.set(a);
    return x;
}

// A frame with arbitrary relations "f", "g", constant "k" and, optionally,
// a random consistency predicate with converse and identity. Not a CA frame.
inline AtomStructure random_frame(std::mt19937_64& rng, int atoms, bool composition = true)
{
    AtomStructure s;
    for (int a = 0; a < atoms; ++a)
        s.atoms.push_back("a" + std::to_string(a));
    s.signature.extra_unary = {"f", "g"};
    s.signature.extra_constants = {"k"};
    std::bernoulli_distribution coin(0.3);
    for (const char* op : {"f", "g"}) {
        auto& pairs = s.unary[op];
        for (int a = 0; a < atoms; ++a)
            for (int b = 0; b < atoms; ++b)
                if (coin(rng))
                    pairs.emplace_back(a, b);
    }
    for (int a = 0; a < atoms; ++a)
        if (coin(rng))
            s.constants["k"].push_back(a);
    s.constants["k"];
    if (composition) {
        // Relation algebra slots: a random involution as converse, a random identity.
        s.signature.relation_algebra = true;
        std::vector<int> order(static_cast<std::size_t>(atoms));
        for (int a = 0; a < atoms; ++a)
            order[static_cast<std::size_t>(a)] = a;
        std::shuffle(order.begin(), order.end(), rng);
        auto& conv = s.unary[kConverseName];
        for (std::size_t k = 0; k < order.size(); k += 2) {
            const int a = order[k];
            const int b = k + 1 < order.size() && coin(rng) ? order[k + 1] : a;
            conv.emplace_back(a, b);
            if (b != a)
                conv.emplace_back(b, a);
            else if (k + 1 < order.size())
                conv.emplace_back(order[k + 1], order[k + 1]);
        }
        auto& id = s.constants[kIdentityName];
        for (int a = 0; a < atoms; ++a)
            if (coin(rng))
                id.push_back(a);
        s.has_composition = true;
        s.composition = Consistency(static_cast<std::size_t>(atoms), false);
        for (int a = 0; a < atoms; ++a)
            for (int b = 0; b < atoms; ++b)
                for (int c = 0; c < atoms; ++c)
                    if (coin(rng))
                        s.composition.set(a, b, c, true);
    }
    return s;
}

// The full cylindric set algebra on ^n U, |U| = u, built straight from the
// definition: c_i relates tuples that agree off i.
inline AtomStructure set_frame(int n, int u)
{
    AtomStructure s;
    s.signature = cylindric_signature(n);
    std::vector<std::vector<int>> tuples;
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    for (;;) {
        tuples.push_back(t);
        int k = n - 1;
        while (k >= 0 && ++t[static_cast<std::size_t>(k)] == u)
            t[static_cast<std::size_t>(k--)] = 0;
        if (k < 0)
            break;
    }
    for (const auto& v : tuples) {
        std::string l;
        for (int x : v)
            l += std::to_string(x);
        s.atoms.push_back(l);
    }
    const int size = static_cast<int>(tuples.size());
    for (int i = 0; i < n; ++i) {
        auto& pairs = s.unary[cylindrifier_name(i)];
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) {
                bool agree = true;
                for (int k = 0; k < n; ++k)
                    if (k != i && tuples[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] !=
                                      tuples[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)])
                        agree = false;
                if (agree)
                    pairs.emplace_back(a, b);
            }
        for (int j = i; j < n; ++j) {
            auto& members = s.constants[diagonal_name(i, j)];
            for (int a = 0; a < size; ++a)
                if (tuples[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] ==
                    tuples[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)])
                    members.push_back(a);
        }
    }
    return s;
}

// A CA_n-signature frame where each T_i is a random equivalence relation and
// each E_ij a random atom set (E_ii = everything, E_ij = E_ji). Satisfies the
// CA_n axioms only occasionally, which is the point.
inline AtomStructure random_partition_frame(std::mt19937_64& rng, int n, int atoms)
{
    AtomStructure s;
    s.signature = cylindric_signature(n);
    for (int a = 0; a < atoms; ++a)
        s.atoms.push_back("a" + std::to_string(a));
    for (int i = 0; i < n; ++i) {
        std::vector<int> block(static_cast<std::size_t>(atoms));
        const int parts = 1 + static_cast<int>(rng() % static_cast<unsigned>(atoms));
        for (auto& b : block)
            b = static_cast<int>(rng() % static_cast<unsigned>(parts));
        auto& pairs = s.unary[cylindrifier_name(i)];
        for (int a = 0; a < atoms; ++a)
            for (int b = 0; b < atoms; ++b)
                if (block[static_cast<std::size_t>(a)] == block[static_cast<std::size_t>(b)])
                    pairs.emplace_back(a, b);
        for (int j = i; j < n; ++j) {
            auto& members = s.constants[diagonal_name(i, j)];
            for (int a = 0; a < atoms; ++a)
                if (i == j || rng() % 3 == 0)
                    members.push_back(a);
        }
    }
    return s;
}

// The full relation algebra on u points: atoms are pairs (a, b), numbered a * u + b.
inline AtomStructure relation_frame(int u)
{
    AtomStructure s;
    s.signature.relation_algebra = true;
    const int n = u * u;
    for (int a = 0; a < u; ++a)
        for (int b = 0; b < u; ++b)
            s.atoms.push_back(std::to_string(a) + std::to_string(b));
    auto& conv = s.unary[kConverseName];
    auto& id = s.constants[kIdentityName];
    for (int a = 0; a < u; ++a) {
        id.push_back(a * u + a);
        for (int b = 0; b < u; ++b)
            conv.emplace_back(b * u + a, a * u + b);
    }
    s.has_composition = true;
    s.composition = Consistency(static_cast<std::size_t>(n), false);
    for (int a = 0; a < u; ++a)
        for (int m = 0; m < u; ++m)
            for (int b = 0; b < u; ++b)
                s.composition.set(a * u + b, a * u + m, m * u + b, true);
    return s;
}

// CA_3 axioms written out by hand, one line per instance.
inline std::vector<std::string> hand_ca3()
{
    std::vector<std::string> out;
    const int n = 3;
    auto s = [](int v) { return std::to_string(v); };
    for (int i = 0; i < n; ++i) {
        out.push_back("(= (c " + s(i) + " 0) 0)");
        out.push_back("(= (+ x (c " + s(i) + " x)) (c " + s(i) + " x))");
        out.push_back("(= (c " + s(i) + " (* x (c " + s(i) + " y))) (* (c " + s(i) + " x) (c " + s(i) + " y)))");
        out.push_back("(= (d " + s(i) + " " + s(i) + ") 1)");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            out.push_back("(= (c " + s(i) + " (c " + s(j) + " x)) (c " + s(j) + " (c " + s(i) + " x)))");
            out.push_back("(= (c " + s(j) + " (d " + s(i) + " " + s(j) + ")) 1)");
            out.push_back("(= (* (c " + s(i) + " (* (d " + s(i) + " " + s(j) + ") x)) (c " + s(i) + " (* (d " + s(i) + " " +
                          s(j) + ") (- x)))) 0)");
            const int k = 3 - i - j;
            out.push_back("(= (d " + s(i) + " " + s(j) + ") (c " + s(k) + " (* (d " + s(i) + " " + s(k) + ") (d " + s(k) +
                          " " + s(j) + "))))");
        }
    return out;
}

inline std::vector<std::vector<int>> injections(int from, int to)
{
    std::vector<std::vector<int>> out;
    std::vector<int> v(static_cast<std::size_t>(to));
    for (int k = 0; k < to; ++k)
        v[static_cast<std::size_t>(k)] = k;
    std::set<std::vector<int>> seen;
    do {
        std::vector<int> img(v.begin(), v.begin() + from);
        if (seen.insert(img).second)
            out.push_back(img);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// Atoms as (class vector, colour matrix), enumerated without any of the
// library's ordering tricks: every map m -> m as a class vector, every
// colouring of all pairs, then filtered.
struct RawMonkAtom {
    std::vector<int> cls;
    std::map<std::pair<int, int>, int> f;
    friend auto operator<=>(const RawMonkAtom&, const RawMonkAtom&) = default;
};

inline std::set<RawMonkAtom> monk_atoms_brute(int m, int n)
{
    std::set<RawMonkAtom> out;
    std::vector<int> cls(static_cast<std::size_t>(m), 0);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            pairs.emplace_back(i, j);
    for (;;) {
        // Keep only canonical class vectors (first occurrence order).
        bool canonical = true;
        int next = 0;
        for (int v : cls) {
            if (v > next)
                canonical = false;
            if (v == next)
                ++next;
        }
        if (canonical) {
            std::vector<int> colour(pairs.size(), 0);
            for (;;) {
                bool ok = true;
                RawMonkAtom a{cls, {}};
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    auto [i, j] = pairs[p];
                    if (cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(j)]) {
                        if (colour[p] != 0)
                            ok = false; // count each equivalent pair once
                        continue;
                    }
                    a.f[{i, j}] = colour[p];
                }
                // class-constant
                for (auto [p, c] : a.f)
                    for (auto [q, d] : a.f) {
                        auto same = [&](int x, int y) {
                            return cls[static_cast<std::size_t>(x)] == cls[static_cast<std::size_t>(y)];
                        };
                        if (same(p.first, q.first) && same(p.second, q.second) && c != d)
                            ok = false;
                        if (same(p.first, q.second) && same(p.second, q.first) && c != d)
                            ok = false;
                    }
                // no monochromatic triangle of inequivalent indices
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        for (int k = j + 1; k < m; ++k)
                            if (a.f.count({i, j}) && a.f.count({i, k}) && a.f.count({j, k}) &&
                                a.f[{i, j}] == a.f[{i, k}] && a.f[{i, j}] == a.f[{j, k}])
                                ok = false;
                if (ok)
                    out.insert(a);
                std::size_t p = 0;
                while (p < colour.size() && ++colour[p] == n)
                    colour[p++] = 0;
                if (p == colour.size())
                    break;
            }
        }
        int k = m - 1;
        while (k >= 0 && ++cls[static_cast<std::size_t>(k)] == m)
            cls[static_cast<std::size_t>(k--)] = 0;
        if (k < 0)
            break;
    }
    return out;
}

} // namespace oracle
