#include "cylkit/monk.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <map>

namespace cylkit {

int pair_index(int i, int j, int m)
{
    if (i > j)
        std::swap(i, j);
    return i * m - i * (i + 1) / 2 + (j - i - 1);
}

int MonkAtom::f(int i, int j) const { return colour[static_cast<std::size_t>(pair_index(i, j, m))]; }

std::string to_string(const MonkAtom& a)
{
    std::string s;
    const int classes = a.m == 0 ? 0 : *std::max_element(a.cls.begin(), a.cls.end()) + 1;
    for (int c = 0; c < classes; ++c) {
        if (c)
            s += '|';
        for (int i = 0; i < a.m; ++i)
            if (a.cls[static_cast<std::size_t>(i)] == c)
                s += std::to_string(i);
    }
    bool first = true;
    for (int i = 0; i < a.m; ++i)
        for (int j = i + 1; j < a.m; ++j) {
            if (a.related(i, j))
                continue;
            s += first ? ';' : ',';
            first = false;
            s += std::to_string(i) + std::to_string(j) + "=" + std::to_string(a.f(i, j));
        }
    return s;
}

namespace {

void check_params(int m, int n, const MonkCaps& caps)
{
    if (m < 2 || n < 1)
        throw ValidationError("G(m, n) needs m >= 2 and n >= 1");
    if (m > caps.max_m || n > caps.max_n)
        throw CapExceeded("G(" + std::to_string(m) + ", " + std::to_string(n) + ") exceeds the caps m <= " +
                          std::to_string(caps.max_m) + ", n <= " + std::to_string(caps.max_n));
}

// Restricted growth strings of length m in lexicographic order.
std::vector<std::vector<int>> partitions(int m)
{
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    auto rec = [&](auto&& self, int pos, int max) -> void {
        if (pos == m) {
            out.push_back(rgs);
            return;
        }
        for (int c = 0; c <= max + 1; ++c) {
            rgs[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1, std::max(max, c));
        }
    };
    rgs[0] = 0;
    rec(rec, 1, 0);
    return out;
}

} // namespace

std::vector<MonkAtom> monk_atoms(int m, int n, const MonkCaps& caps)
{
    check_params(m, n, caps);
    std::vector<MonkAtom> out;
    const int pairs = m * (m - 1) / 2;
    for (const auto& rgs : partitions(m)) {
        const int classes = *std::max_element(rgs.begin(), rgs.end()) + 1;
        // colour per class pair (p < q), pair_index over `classes`
        const int class_pairs = classes * (classes - 1) / 2;
        std::vector<int> cc(static_cast<std::size_t>(class_pairs), 0);
        auto ok_so_far = [&](int p, int q) {
            // all triangles whose largest pair is (p, q)
            for (int r = 0; r < p; ++r) {
                const int a = cc[static_cast<std::size_t>(pair_index(r, p, classes))];
                const int b = cc[static_cast<std::size_t>(pair_index(r, q, classes))];
                if (a == b && b == cc[static_cast<std::size_t>(pair_index(p, q, classes))])
                    return false;
            }
            return true;
        };
        std::vector<std::pair<int, int>> order;
        for (int p = 0; p < classes; ++p)
            for (int q = p + 1; q < classes; ++q)
                order.emplace_back(p, q);
        // pair_index order is (0,1),(0,2),...,(1,2),...; the triangle check at (p,q)
        // needs (r,p) and (r,q) for r < p, which come earlier in that order.
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == order.size()) {
                MonkAtom a;
                a.m = m;
                a.cls = rgs;
                a.colour.assign(static_cast<std::size_t>(pairs), -1);
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        const int ci = rgs[static_cast<std::size_t>(i)];
                        const int cj = rgs[static_cast<std::size_t>(j)];
                        if (ci != cj)
                            a.colour[static_cast<std::size_t>(pair_index(i, j, m))] =
                                cc[static_cast<std::size_t>(pair_index(ci, cj, classes))];
                    }
                out.push_back(std::move(a));
                return;
            }
            auto [p, q] = order[pos];
            for (int col = 0; col < n; ++col) {
                cc[static_cast<std::size_t>(pair_index(p, q, classes))] = col;
                if (ok_so_far(p, q))
                    self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

namespace {

AtomStructure monk_frame(const std::vector<MonkAtom>& atoms, int m)
{
    AtomStructure s;
    s.signature = cylindric_signature(m);
    for (const auto& a : atoms)
        s.atoms.push_back(to_string(a));
    const int size = static_cast<int>(atoms.size());
    for (int k = 0; k < m; ++k) {
        std::map<std::vector<int>, std::vector<int>> groups;
        for (int x = 0; x < size; ++x) {
            const auto& a = atoms[static_cast<std::size_t>(x)];
            std::vector<int> key;
            // restriction of R to m \ {k}, renumbered by first occurrence
            std::map<int, int> renumber;
            for (int i = 0; i < m; ++i)
                if (i != k) {
                    auto [it, _] = renumber.emplace(a.cls[static_cast<std::size_t>(i)], static_cast<int>(renumber.size()));
                    key.push_back(it->second);
                }
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (i != k && j != k)
                        key.push_back(a.colour[static_cast<std::size_t>(pair_index(i, j, m))]);
            groups[key].push_back(x);
        }
        auto& pairs = s.unary[cylindrifier_name(k)];
        for (const auto& [_, g] : groups)
            for (int x : g)
                for (int y : g)
                    pairs.emplace_back(x, y);
    }
    for (int k = 0; k < m; ++k)
        for (int l = k; l < m; ++l) {
            auto& members = s.constants[diagonal_name(k, l)];
            for (int x = 0; x < size; ++x)
                if (atoms[static_cast<std::size_t>(x)].related(k, l))
                    members.push_back(x);
        }
    return s;
}

} // namespace

AtomStructure monk_structure(int m, int n, const MonkCaps& caps) { return monk_frame(monk_atoms(m, n, caps), m); }

FiniteBAO monk_algebra(int m, int n, const MonkCaps& caps) { return FiniteBAO(monk_structure(m, n, caps)); }

bool monk_x_member(const MonkAtom& a, int m, int k)
{
    for (int u = m; u < a.m; ++u) {
        for (int v = 0; v < a.m; ++v)
            if (v != u && a.related(u, v))
                return false;
        for (int v = 0; v < u; ++v)
            if (a.f(u, v) != u + k)
                return false;
    }
    return true;
}

Element monk_x_element(int m, int n, int k, const MonkCaps& caps)
{
    if (m >= n || k < 1)
        throw ValidationError("x needs m < n and k >= 1");
    const auto atoms = monk_atoms(n, n + k, caps);
    Element x(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a)
        if (monk_x_member(atoms[a], m, k))
            x.set(a);
    return x;
}

AtomStructure johnson_extension(int m, int n, const MonkCaps& caps)
{
    const auto atoms = monk_atoms(m, n, caps);
    AtomStructure s = monk_frame(atoms, m);
    std::map<MonkAtom, int> index;
    for (std::size_t a = 0; a < atoms.size(); ++a)
        index.emplace(atoms[a], static_cast<int>(a));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            s.signature.transpositions.emplace_back(i, j);
            auto swap = [&](int u) { return u == i ? j : u == j ? i : u; };
            auto& pairs = s.unary[transposition_name(i, j)];
            for (std::size_t b = 0; b < atoms.size(); ++b) {
                const auto& src = atoms[b];
                // image a = src o [i, j]: a.cls(u) ~ src.cls(swap u), a.f(u, v) = src.f(swap u, swap v)
                MonkAtom a;
                a.m = m;
                std::map<int, int> renumber;
                for (int u = 0; u < m; ++u) {
                    auto [it, _] = renumber.emplace(src.cls[static_cast<std::size_t>(swap(u))], static_cast<int>(renumber.size()));
                    a.cls.push_back(it->second);
                }
                a.colour.assign(src.colour.size(), -1);
                for (int u = 0; u < m; ++u)
                    for (int v = u + 1; v < m; ++v)
                        if (!a.related(u, v))
                            a.colour[static_cast<std::size_t>(pair_index(u, v, m))] = src.f(swap(u), swap(v));
                pairs.emplace_back(index.at(a), static_cast<int>(b));
            }
        }
    return s;
}

} // namespace cylkit
