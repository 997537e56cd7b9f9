#include "cylkit/hh.hpp"

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

namespace cylkit {

std::string to_string(const HHAtom& a)
{
    if (a.identity)
        return "id";
    return "a" + std::to_string(a.k) + "(" + std::to_string(a.i) + "," + std::to_string(a.j) + ")";
}

std::vector<HHAtom> hh_atoms(int n, int r, int psi)
{
    if (n < 2 || r < 1)
        throw ValidationError("A(n, r) needs n >= 2 and r >= 1");
    if (psi < std::max(n, r))
        throw ValidationError("A(n, r) needs psi >= max(n, r)");
    std::vector<HHAtom> out{HHAtom{}};
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < psi; ++k)
                out.push_back(HHAtom{false, i, j, k});
    return out;
}

bool hh_forbidden(const HHAtom& a, const HHAtom& b, const HHAtom& c)
{
    const std::array<const HHAtom*, 3> t{&a, &b, &c};
    for (int p = 0; p < 3; ++p)
        if (t[static_cast<std::size_t>(p)]->identity) {
            const HHAtom& s = *t[static_cast<std::size_t>((p + 1) % 3)];
            const HHAtom& u = *t[static_cast<std::size_t>((p + 2) % 3)];
            return !(s == u);
        }
    if (a.i != b.i || b.i != c.i)
        return false;
    const int lo = std::min({a.j, b.j, c.j});
    return (a.j == lo) + (b.j == lo) + (c.j == lo) >= 2;
}

AtomStructure hh_structure(int n, int r, int psi)
{
    const auto atoms = hh_atoms(n, r, psi);
    if (atoms.size() > 128)
        throw CapExceeded("A(n, r) with more than 128 atoms");
    const int size = static_cast<int>(atoms.size());
    AtomStructure s;
    s.signature.relation_algebra = true;
    for (const auto& a : atoms)
        s.atoms.push_back(to_string(a));
    s.constants[kIdentityName] = {0};
    auto& conv = s.unary[kConverseName];
    for (int a = 0; a < size; ++a)
        conv.emplace_back(a, a);
    s.has_composition = true;
    s.composition = Consistency(atoms.size(), false);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b)
            for (int c = 0; c < size; ++c) {
                const auto& x = atoms[static_cast<std::size_t>(a)];
                const auto& y = atoms[static_cast<std::size_t>(b)];
                const auto& z = atoms[static_cast<std::size_t>(c)];
                const bool f = hh_forbidden(x, y, z);
                if (f != hh_forbidden(y, x, z) || f != hh_forbidden(x, z, y) || f != hh_forbidden(z, y, x))
                    throw Error("forbidden triples are not closed under permutation at " + to_string(x) + ", " +
                                to_string(y) + ", " + to_string(z));
                s.composition.set(a, b, c, !f);
            }
    return s;
}

FiniteBAO hh_algebra(int n, int r, int psi) { return FiniteBAO(hh_structure(n, r, psi)); }

std::size_t tuple_count(int nodes, int wide)
{
    std::size_t total = 0;
    std::size_t p = 1;
    for (int l = 0; l <= wide; ++l) {
        total += p;
        p *= static_cast<std::size_t>(nodes);
    }
    return total;
}

std::size_t tuple_index(const std::vector<int>& tuple, int nodes)
{
    std::size_t offset = tuple_count(nodes, static_cast<int>(tuple.size()) - 1);
    std::size_t v = 0;
    for (int x : tuple)
        v = v * static_cast<std::size_t>(nodes) + static_cast<std::size_t>(x);
    return offset + v;
}

int Hypernetwork::hyperlabel(const std::vector<int>& tuple) const
{
    if (hyper.empty())
        return 0;
    return hyper[tuple_index(tuple, nodes)];
}

namespace {

// Calls f(tuple) for every tuple of length l over `nodes` in lexicographic order.
template <class F>
void for_each_tuple(int nodes, int l, F&& f)
{
    std::vector<int> t(static_cast<std::size_t>(l), 0);
    for (;;) {
        f(t);
        int p = l - 1;
        while (p >= 0 && ++t[static_cast<std::size_t>(p)] == nodes)
            t[static_cast<std::size_t>(p--)] = 0;
        if (p < 0)
            return;
    }
}

bool avoids(const std::vector<int>& tuple, const std::vector<int>& excluded)
{
    for (int x : tuple)
        if (std::find(excluded.begin(), excluded.end(), x) != excluded.end())
            return false;
    return true;
}

// Labels on every tuple avoiding the excluded nodes, flattened.
std::vector<int> key_off(const Hypernetwork& n, const std::vector<int>& excluded)
{
    std::vector<int> key;
    for (int x = 0; x < n.nodes; ++x)
        for (int y = 0; y < n.nodes; ++y)
            if (avoids({x, y}, excluded))
                key.push_back(n.at(x, y));
    if (!n.hyper.empty())
        for (int l = 0; l <= n.wide; ++l)
            if (l != 2)
                for_each_tuple(n.nodes, l, [&](const std::vector<int>& t) {
                    if (avoids(t, excluded))
                        key.push_back(n.hyper[tuple_index(t, n.nodes)]);
                });
    return key;
}

// Dense ids for key_off over a whole set. The networks share a shape, so the
// kept positions are computed once and keys are packed into byte strings.
std::vector<int> key_ids(const std::vector<Hypernetwork>& h, const std::vector<int>& excluded)
{
    std::vector<int> out;
    if (h.empty())
        return out;
    const Hypernetwork& shape = h.front();
    std::vector<std::size_t> edge_pos;
    std::vector<std::size_t> hyper_pos;
    for (int x = 0; x < shape.nodes; ++x)
        for (int y = 0; y < shape.nodes; ++y)
            if (avoids({x, y}, excluded))
                edge_pos.push_back(static_cast<std::size_t>(x * shape.nodes + y));
    if (!shape.hyper.empty())
        for (int l = 0; l <= shape.wide; ++l)
            if (l != 2)
                for_each_tuple(shape.nodes, l, [&](const std::vector<int>& t) {
                    if (avoids(t, excluded))
                        hyper_pos.push_back(tuple_index(t, shape.nodes));
                });
    std::unordered_map<std::string, int> ids;
    ids.reserve(h.size());
    out.reserve(h.size());
    std::string key;
    for (const auto& n : h) {
        if (n.nodes != shape.nodes || n.wide != shape.wide || n.hyper.size() != shape.hyper.size())
            throw ValidationError("hypernetworks in one set must share nodes and width");
        key.clear();
        auto put = [&](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
        for (std::size_t p : edge_pos)
            put(n.at(static_cast<int>(p) / n.nodes, static_cast<int>(p) % n.nodes));
        for (std::size_t p : hyper_pos)
            put(n.hyper[p]);
        auto [it, _] = ids.emplace(key, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

std::vector<int> converse_map(const FiniteBAO& algebra)
{
    std::vector<int> conv(algebra.atom_count(), -1);
    for (int a = 0; a < static_cast<int>(algebra.atom_count()); ++a) {
        const auto img = algebra.image(kConverseName, a);
        if (img.size() != 1)
            throw ValidationError("converse of atom " + algebra.atom_label(a) + " is not an atom");
        conv[static_cast<std::size_t>(a)] = img[0];
    }
    return conv;
}

} // namespace

Hypernetwork compose(const Hypernetwork& n, const std::vector<int>& sigma)
{
    if (static_cast<int>(sigma.size()) != n.nodes)
        throw ValidationError("node map must have one image per node");
    Hypernetwork out = n;
    for (int x = 0; x < n.nodes; ++x)
        for (int y = 0; y < n.nodes; ++y)
            out.label[static_cast<std::size_t>(x * n.nodes + y)] =
                n.at(sigma[static_cast<std::size_t>(x)], sigma[static_cast<std::size_t>(y)]);
    if (!n.hyper.empty())
        for (int l = 0; l <= n.wide; ++l)
            if (l != 2)
                for_each_tuple(n.nodes, l, [&](const std::vector<int>& t) {
                    std::vector<int> image;
                    for (int x : t)
                        image.push_back(sigma[static_cast<std::size_t>(x)]);
                    out.hyper[tuple_index(t, n.nodes)] = n.hyper[tuple_index(image, n.nodes)];
                });
    return out;
}

bool equivalent_off(const Hypernetwork& m, const Hypernetwork& n, const std::vector<int>& excluded)
{
    return key_off(m, excluded) == key_off(n, excluded);
}

std::string to_string(const Hypernetwork& n, const FiniteBAO& algebra)
{
    std::string s;
    for (int x = 0; x < n.nodes; ++x)
        for (int y = x + 1; y < n.nodes; ++y) {
            if (!s.empty())
                s += ';';
            s += std::to_string(x) + std::to_string(y) + "=" + algebra.atom_label(n.at(x, y));
        }
    if (!n.hyper.empty()) {
        s += '|';
        for (int v : n.hyper)
            if (v >= 0)
                s += std::to_string(v);
    }
    return s;
}

bool HypernetworkSet::contains(const Hypernetwork& n) const { return std::binary_search(networks.begin(), networks.end(), n); }

std::optional<std::string> network_violation(const FiniteBAO& algebra, const Hypernetwork& n)
{
    const int m = n.nodes;
    if (n.label.size() != static_cast<std::size_t>(m * m))
        return "label matrix has the wrong size";
    if (!n.hyper.empty() && n.hyper.size() != tuple_count(m, n.wide))
        return "hyperlabel table has the wrong size";
    const Element& id = algebra.constant(kIdentityName);
    const auto conv = converse_map(algebra);
    auto is_id = [&](int a) { return id.test(static_cast<std::size_t>(a)); };
    for (int x = 0; x < m; ++x)
        if (!is_id(n.at(x, x)))
            return "diagonal: N(" + std::to_string(x) + "," + std::to_string(x) + ") is not below Id";
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (n.at(y, x) != conv[static_cast<std::size_t>(n.at(x, y))])
                return "converse: N(" + std::to_string(y) + "," + std::to_string(x) + ")";
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (!algebra.consistent(n.at(x, y), n.at(x, z), n.at(z, y)))
                    return "triangle: N(" + std::to_string(x) + "," + std::to_string(y) + ") via " + std::to_string(z);
    for (int x0 = 0; x0 < m; ++x0)
        for (int x1 = 0; x1 < m; ++x1)
            for (int y0 = 0; y0 < m; ++y0)
                for (int y1 = 0; y1 < m; ++y1)
                    if (is_id(n.at(x0, y0)) && is_id(n.at(x1, y1)) && n.at(x0, x1) != n.at(y0, y1))
                        return "tuple equality on pairs";
    if (!n.hyper.empty())
        for (int l = 0; l <= n.wide; ++l) {
            if (l == 2)
                continue;
            std::string bad;
            for_each_tuple(m, l, [&](const std::vector<int>& xs) {
                for_each_tuple(m, l, [&](const std::vector<int>& ys) {
                    if (!bad.empty())
                        return;
                    for (int i = 0; i < l; ++i)
                        if (!is_id(n.at(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)])))
                            return;
                    if (n.hyper[tuple_index(xs, m)] != n.hyper[tuple_index(ys, m)])
                        bad = "tuple equality at length " + std::to_string(l);
                });
            });
            if (!bad.empty())
                return bad;
        }
    return std::nullopt;
}

namespace {

struct Enumerator {
    const FiniteBAO& algebra;
    int m;
    int wide;
    int lambda;
    std::size_t max_networks;
    std::vector<int> conv;
    std::vector<int> id_atoms;
    std::vector<std::pair<int, int>> order; // x <= y

    bool triangles_ok(const std::vector<int>& label) const
    {
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                const int a = label[static_cast<std::size_t>(x * m + y)];
                if (a < 0)
                    continue;
                for (int z = 0; z < m; ++z) {
                    const int b = label[static_cast<std::size_t>(x * m + z)];
                    const int c = label[static_cast<std::size_t>(z * m + y)];
                    if (b >= 0 && c >= 0 && !algebra.consistent(a, b, c))
                        return false;
                }
            }
        return true;
    }

    void emit(const std::vector<int>& label, std::vector<Hypernetwork>& out) const
    {
        Hypernetwork n;
        n.nodes = m;
        n.wide = wide;
        n.label = label;
        if (lambda == 1) {
            out.push_back(std::move(n));
        } else {
            // one free hyperlabel per tuple of class representatives
            std::vector<int> rep(static_cast<std::size_t>(m));
            for (int x = 0; x < m; ++x) {
                int r = x;
                for (int y = 0; y < x; ++y)
                    if (algebra.constant(kIdentityName).test(static_cast<std::size_t>(label[static_cast<std::size_t>(x * m + y)]))) {
                        r = rep[static_cast<std::size_t>(y)];
                        break;
                    }
                rep[static_cast<std::size_t>(x)] = r;
            }
            std::map<std::size_t, int> cls; // representative tuple index -> free position
            std::vector<std::size_t> slot(tuple_count(m, wide), 0);
            for (int l = 0; l <= wide; ++l)
                if (l != 2)
                    for_each_tuple(m, l, [&](const std::vector<int>& t) {
                        std::vector<int> r;
                        for (int x : t)
                            r.push_back(rep[static_cast<std::size_t>(x)]);
                        auto [it, _] = cls.emplace(tuple_index(r, m), static_cast<int>(cls.size()));
                        slot[tuple_index(t, m)] = static_cast<std::size_t>(it->second);
                    });
            const std::size_t free = cls.size();
            double total = 1;
            for (std::size_t k = 0; k < free; ++k)
                total *= lambda;
            if (total + static_cast<double>(out.size()) > static_cast<double>(max_networks))
                throw CapExceeded("hyperlabel assignments exceed the network cap");
            std::vector<int> assign(free, 0);
            for (;;) {
                Hypernetwork h = n;
                h.hyper.assign(tuple_count(m, wide), -1);
                for (int l = 0; l <= wide; ++l)
                    if (l != 2)
                        for_each_tuple(m, l, [&](const std::vector<int>& t) {
                            const std::size_t ti = tuple_index(t, m);
                            h.hyper[ti] = assign[slot[ti]];
                        });
                out.push_back(std::move(h));
                std::size_t p = 0;
                while (p < free && ++assign[p] == lambda)
                    assign[p++] = 0;
                if (p == free)
                    break;
            }
        }
        if (out.size() > max_networks)
            throw CapExceeded("more than " + std::to_string(max_networks) + " hypernetworks");
    }

    void rec(std::vector<int>& label, std::size_t pos, std::vector<Hypernetwork>& out) const
    {
        if (pos == order.size()) {
            emit(label, out);
            return;
        }
        auto [x, y] = order[pos];
        const std::vector<int>& choices = x == y ? id_atoms : all_atoms;
        for (int a : choices) {
            label[static_cast<std::size_t>(x * m + y)] = a;
            label[static_cast<std::size_t>(y * m + x)] = conv[static_cast<std::size_t>(a)];
            if (x == y && conv[static_cast<std::size_t>(a)] != a)
                continue;
            if (triangles_ok(label))
                rec(label, pos + 1, out);
        }
        label[static_cast<std::size_t>(x * m + y)] = -1;
        label[static_cast<std::size_t>(y * m + x)] = -1;
    }

    std::vector<int> all_atoms;
};

} // namespace

HypernetworkSet enumerate_hypernetworks(const FiniteBAO& algebra, int nodes, int wide, int lambda,
                                        const HypernetworkCaps& caps)
{
    if (!algebra.signature().relation_algebra)
        throw ValidationError("hypernetworks need a relation algebra");
    if (nodes < 1 || wide < 2 || lambda < 1)
        throw ValidationError("hypernetworks need nodes >= 1, wide >= 2 and at least one hyperlabel");
    if (nodes > caps.max_nodes)
        throw CapExceeded("hypernetwork enumeration is capped at " + std::to_string(caps.max_nodes) + " nodes");
    if (algebra.atom_count() > caps.max_atoms)
        throw CapExceeded("hypernetwork enumeration is capped at " + std::to_string(caps.max_atoms) + " atoms");

    Enumerator e{algebra, nodes, wide, lambda, caps.max_networks, converse_map(algebra), {}, {}, {}};
    HypernetworkSet result{algebra, nodes, wide, lambda, {}, false};
    for (int a = 0; a < static_cast<int>(algebra.atom_count()); ++a) {
        e.all_atoms.push_back(a);
        if (algebra.constant(kIdentityName).test(static_cast<std::size_t>(a)))
            e.id_atoms.push_back(a);
        if (e.conv[static_cast<std::size_t>(a)] != a)
            result.converse_law_assumed = true;
    }
    for (int y = 0; y < nodes; ++y)
        for (int x = 0; x <= y; ++x)
            e.order.emplace_back(x, y);

    std::vector<int> label(static_cast<std::size_t>(nodes * nodes), -1);
    auto& out = result.networks;
    if (caps.jobs <= 1 || nodes < 2) {
        e.rec(label, 0, out);
    } else {
        // branch on (0,0) and (0,1), the first two pairs in the order
        std::vector<std::vector<int>> prefixes;
        for (int d : e.id_atoms)
            for (int a : e.all_atoms) {
                auto l = label;
                l[0] = d;
                l[1] = a;
                l[static_cast<std::size_t>(nodes)] = e.conv[static_cast<std::size_t>(a)];
                if (e.conv[static_cast<std::size_t>(d)] == d && e.triangles_ok(l))
                    prefixes.push_back(std::move(l));
            }
        for (std::size_t start = 0; start < prefixes.size(); start += caps.jobs) {
            std::vector<std::future<std::vector<Hypernetwork>>> batch;
            for (std::size_t k = start; k < std::min(prefixes.size(), start + caps.jobs); ++k)
                batch.push_back(std::async(std::launch::async, [&e, l = prefixes[k]]() mutable {
                    std::vector<Hypernetwork> part;
                    e.rec(l, 2, part);
                    return part;
                }));
            for (auto& f : batch) {
                auto part = f.get();
                out.insert(out.end(), part.begin(), part.end());
                if (out.size() > caps.max_networks)
                    throw CapExceeded("more than " + std::to_string(caps.max_networks) + " hypernetworks");
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& n : out)
        if (auto v = network_violation(algebra, n))
            throw Error("enumerator produced an invalid hypernetwork (" + *v + ")");
    return result;
}

bool is_symmetric(const HypernetworkSet& h)
{
    // Closure under N o sigma for generators of the full transformation
    // monoid on m gives closure under all maps, as (N o s) o t = N o (s o t).
    const int m = h.nodes;
    if (m < 2)
        return true;
    std::vector<std::vector<int>> generators;
    std::vector<int> sigma(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x)
        sigma[static_cast<std::size_t>(x)] = x;
    std::swap(sigma[0], sigma[1]);
    generators.push_back(sigma);
    for (int x = 0; x < m; ++x)
        sigma[static_cast<std::size_t>(x)] = (x + 1) % m;
    generators.push_back(sigma);
    for (int x = 0; x < m; ++x)
        sigma[static_cast<std::size_t>(x)] = x;
    sigma[0] = 1;
    generators.push_back(sigma);
    for (const auto& g : generators)
        for (const auto& n : h.networks)
            if (!h.contains(compose(n, g)))
                return false;
    return true;
}

bool is_symmetric_exhaustive(const HypernetworkSet& h)
{
    const int m = h.nodes;
    std::vector<int> sigma(static_cast<std::size_t>(m), 0);
    for (;;) {
        for (const auto& n : h.networks)
            if (!h.contains(compose(n, sigma)))
                return false;
        int p = m - 1;
        while (p >= 0 && ++sigma[static_cast<std::size_t>(p)] == m)
            sigma[static_cast<std::size_t>(p--)] = 0;
        if (p < 0)
            return true;
    }
}

HyperbasisReport check_hyperbasis(const HypernetworkSet& h)
{
    HyperbasisReport r;
    const auto& H = h.networks;
    const int m = h.nodes;
    const int atoms = static_cast<int>(h.algebra.atom_count());
    auto fail = [&](bool& flag, const char* clause, std::string detail) {
        flag = false;
        if (r.first_violation.empty()) {
            r.first_violation = clause;
            r.detail = std::move(detail);
        }
    };

    for (const auto& n : H) {
        if (n.nodes != m || n.wide != h.wide) {
            fail(r.networks, "networks", "member with different shape");
            break;
        }
        if (auto v = network_violation(h.algebra, n)) {
            fail(r.networks, "networks", *v + " in " + to_string(n, h.algebra));
            break;
        }
    }

    if (m >= 2) {
        std::vector<bool> seen(static_cast<std::size_t>(atoms), false);
        for (const auto& n : H)
            seen[static_cast<std::size_t>(n.at(0, 1))] = true;
        for (int a = 0; a < atoms; ++a)
            if (!seen[static_cast<std::size_t>(a)]) {
                fail(r.witness, "witness", "no N with N(0,1) = " + h.algebra.atom_label(a));
                break;
            }
    }

    if (atoms > 256 || m > 256)
        throw CapExceeded("hyperbasis check supports at most 256 atoms and nodes");
    // required[c]: number of atom pairs (a, b) with c <= a;b
    std::vector<std::size_t> required(static_cast<std::size_t>(atoms), 0);
    for (int c = 0; c < atoms; ++c)
        for (int a = 0; a < atoms; ++a)
            for (int b = 0; b < atoms; ++b)
                if (h.algebra.consistent(c, a, b))
                    ++required[static_cast<std::size_t>(c)];

    // Amalgamation: for each ==_z group and x, y != z, every consistent
    // (a, b) below M(x, y) occurs as (M(x, z), M(z, y)) in the group.
    for (int z = 0; z < m && r.amalgamation; ++z) {
        const auto ids = key_ids(H, {z});
        std::vector<std::uint64_t> seen;
        seen.reserve(H.size() * static_cast<std::size_t>((m - 1) * (m - 1)));
        for (std::size_t k = 0; k < H.size(); ++k)
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    if (x != z && y != z)
                        seen.push_back(std::uint64_t(ids[k]) << 32 | std::uint64_t(x) << 24 | std::uint64_t(y) << 16 |
                                       std::uint64_t(H[k].at(x, z)) << 8 | std::uint64_t(H[k].at(z, y)));
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        std::vector<int> first(H.size(), -1); // group -> a member
        for (std::size_t k = 0; k < H.size(); ++k)
            if (first[static_cast<std::size_t>(ids[k])] < 0)
                first[static_cast<std::size_t>(ids[k])] = static_cast<int>(k);
        for (std::size_t lo = 0; lo < seen.size() && r.amalgamation;) {
            std::size_t hi = lo;
            while (hi < seen.size() && seen[hi] >> 16 == seen[lo] >> 16)
                ++hi;
            const auto group = static_cast<std::size_t>(seen[lo] >> 32);
            const int x = static_cast<int>(seen[lo] >> 24 & 0xff);
            const int y = static_cast<int>(seen[lo] >> 16 & 0xff);
            const auto& net = H[static_cast<std::size_t>(first[group])];
            const int c = net.at(x, y);
            std::size_t good = 0;
            for (std::size_t k = lo; k < hi; ++k)
                if (h.algebra.consistent(c, static_cast<int>(seen[k] >> 8 & 0xff), static_cast<int>(seen[k] & 0xff)))
                    ++good;
            if (good != required[static_cast<std::size_t>(c)]) {
                std::string missing;
                for (int a = 0; a < atoms && missing.empty(); ++a)
                    for (int b = 0; b < atoms && missing.empty(); ++b) {
                        const std::uint64_t key = (seen[lo] >> 16 << 16) | std::uint64_t(a) << 8 | std::uint64_t(b);
                        if (h.algebra.consistent(c, a, b) &&
                            !std::binary_search(seen.begin() + static_cast<std::ptrdiff_t>(lo),
                                                seen.begin() + static_cast<std::ptrdiff_t>(hi), key))
                            missing = h.algebra.atom_label(a) + ";" + h.algebra.atom_label(b);
                    }
                fail(r.amalgamation, "amalgamation",
                     to_string(net, h.algebra) + " at x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                         ", z=" + std::to_string(z) + " with " + missing);
            }
            lo = hi;
        }
    }

    // Patching: within each ==_{x,y} group every (==_x class, ==_y class)
    // combination is realised by a member.
    for (int x = 0; x < m && r.patching; ++x)
        for (int y = 0; y < m && r.patching; ++y) {
            if (x == y)
                continue;
            const auto kxy = key_ids(H, {x, y});
            const auto kx = key_ids(H, {x});
            const auto ky = key_ids(H, {y});
            std::vector<std::array<int, 3>> rows;
            rows.reserve(H.size());
            for (std::size_t k = 0; k < H.size(); ++k)
                rows.push_back({kxy[k], kx[k], ky[k]});
            std::sort(rows.begin(), rows.end());
            rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
            for (std::size_t lo = 0; lo < rows.size() && r.patching;) {
                std::size_t hi = lo;
                std::set<int> as;
                std::set<int> bs;
                while (hi < rows.size() && rows[hi][0] == rows[lo][0]) {
                    as.insert(rows[hi][1]);
                    bs.insert(rows[hi][2]);
                    ++hi;
                }
                if (hi - lo != as.size() * bs.size())
                    fail(r.patching, "patching", "x=" + std::to_string(x) + ", y=" + std::to_string(y));
                lo = hi;
            }
        }

    r.symmetric = is_symmetric(h);
    if (!r.symmetric)
        fail(r.symmetric, "symmetry", "some N o sigma is missing");
    return r;
}

FiniteBAO ca_of_hyperbasis(const HypernetworkSet& h)
{
    if (h.networks.empty())
        throw ValidationError("Ca(H) needs a nonempty set of hypernetworks");
    const auto& H = h.networks;
    const int m = h.nodes;
    AtomStructure s;
    s.signature.dimension = m;
    for (int i = 0; i < m; ++i) {
        s.signature.cylindrifiers.push_back(i);
        for (int j = i; j < m; ++j)
            s.signature.diagonals.emplace_back(i, j);
        for (int j = i + 1; j < m; ++j)
            s.signature.transpositions.emplace_back(i, j);
    }
    for (const auto& n : H)
        s.atoms.push_back(to_string(n, h.algebra));
    const int size = static_cast<int>(H.size());

    for (int i = 0; i < m; ++i) {
        const auto ids = key_ids(H, {i});
        std::map<int, std::vector<int>> groups;
        for (int k = 0; k < size; ++k)
            groups[ids[static_cast<std::size_t>(k)]].push_back(k);
        auto& pairs = s.unary[cylindrifier_name(i)];
        for (const auto& [_, g] : groups)
            for (int a : g)
                for (int b : g)
                    pairs.emplace_back(a, b);
    }
    const Element& id = h.algebra.constant(kIdentityName);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            auto& members = s.constants[diagonal_name(i, j)];
            for (int k = 0; k < size; ++k)
                if (id.test(static_cast<std::size_t>(H[static_cast<std::size_t>(k)].at(i, j))))
                    members.push_back(k);
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> swap(static_cast<std::size_t>(m));
            for (int x = 0; x < m; ++x)
                swap[static_cast<std::size_t>(x)] = x == i ? j : x == j ? i : x;
            auto& pairs = s.unary[transposition_name(i, j)];
            for (int b = 0; b < size; ++b) {
                const auto image = compose(H[static_cast<std::size_t>(b)], swap);
                auto it = std::lower_bound(H.begin(), H.end(), image);
                if (it != H.end() && *it == image)
                    pairs.emplace_back(static_cast<int>(it - H.begin()), b);
            }
        }
    return FiniteBAO(std::move(s));
}

HyperNeatReduct neat_reduct_of_hyperbasis(const HypernetworkSet& h, int m)
{
    if (h.networks.empty())
        throw ValidationError("Ca(H) needs a nonempty set of hypernetworks");
    if (m < 1 || m > h.nodes)
        throw ValidationError("neat reduct needs 1 <= m <= " + std::to_string(h.nodes));
    const auto& H = h.networks;
    const int size = static_cast<int>(H.size());

    // classes of the equivalence generated by ==_j for m <= j < nodes
    std::vector<int> parent(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k)
        parent[static_cast<std::size_t>(k)] = k;
    auto find = [&](int k) {
        while (parent[static_cast<std::size_t>(k)] != k) {
            parent[static_cast<std::size_t>(k)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(k)])];
            k = parent[static_cast<std::size_t>(k)];
        }
        return k;
    };
    for (int j = m; j < h.nodes; ++j) {
        const auto ids = key_ids(H, {j});
        std::vector<int> first(static_cast<std::size_t>(size), -1);
        for (int k = 0; k < size; ++k) {
            int& f = first[static_cast<std::size_t>(ids[static_cast<std::size_t>(k)])];
            if (f < 0) {
                f = k;
            } else {
                const int a = find(f);
                const int b = find(k);
                parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
    }
    HyperNeatReduct out{std::nullopt, std::vector<int>(static_cast<std::size_t>(size), -1), {}};
    for (int k = 0; k < size; ++k) {
        const int root = find(k);
        int& c = out.atom_map[static_cast<std::size_t>(root)];
        if (c < 0) {
            c = static_cast<int>(out.representatives.size());
            out.representatives.push_back(k);
        }
        out.atom_map[static_cast<std::size_t>(k)] = c;
    }
    const int classes = static_cast<int>(out.representatives.size());

    AtomStructure s;
    s.signature.dimension = m;
    for (int i = 0; i < m; ++i) {
        s.signature.cylindrifiers.push_back(i);
        for (int j = i; j < m; ++j)
            s.signature.diagonals.emplace_back(i, j);
        for (int j = i + 1; j < m; ++j)
            s.signature.transpositions.emplace_back(i, j);
    }
    for (int rep : out.representatives) {
        auto r = restrict_hyperbasis(HypernetworkSet{h.algebra, h.nodes, h.wide, h.lambda, {H[static_cast<std::size_t>(rep)]},
                                                     h.converse_law_assumed},
                                     m);
        s.atoms.push_back(to_string(r.networks.front(), h.algebra) + "#" + std::to_string(rep));
    }

    for (int i = 0; i < m; ++i) {
        const auto ids = key_ids(H, {i});
        std::map<int, std::set<int>> groups;
        for (int k = 0; k < size; ++k)
            groups[ids[static_cast<std::size_t>(k)]].insert(out.atom_map[static_cast<std::size_t>(k)]);
        std::set<AtomPair> pairs;
        for (const auto& [_, g] : groups)
            for (int a : g)
                for (int b : g)
                    pairs.emplace(a, b);
        s.unary[cylindrifier_name(i)].assign(pairs.begin(), pairs.end());
    }
    const Element& id = h.algebra.constant(kIdentityName);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            std::vector<char> in(static_cast<std::size_t>(classes), 2);
            for (int k = 0; k < size; ++k) {
                const char v = id.test(static_cast<std::size_t>(H[static_cast<std::size_t>(k)].at(i, j))) ? 1 : 0;
                char& c = in[static_cast<std::size_t>(out.atom_map[static_cast<std::size_t>(k)])];
                if (c != 2 && c != v)
                    throw ValidationError("d" + std::to_string(i) + std::to_string(j) + " cuts a class of the neat reduct");
                c = v;
            }
            auto& members = s.constants[diagonal_name(i, j)];
            for (int c = 0; c < classes; ++c)
                if (in[static_cast<std::size_t>(c)] == 1)
                    members.push_back(c);
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> swap(static_cast<std::size_t>(h.nodes));
            for (int x = 0; x < h.nodes; ++x)
                swap[static_cast<std::size_t>(x)] = x == i ? j : x == j ? i : x;
            std::set<AtomPair> pairs;
            for (int b = 0; b < size; ++b) {
                const auto image = compose(H[static_cast<std::size_t>(b)], swap);
                auto it = std::lower_bound(H.begin(), H.end(), image);
                if (it != H.end() && *it == image)
                    pairs.emplace(out.atom_map[static_cast<std::size_t>(it - H.begin())], out.atom_map[static_cast<std::size_t>(b)]);
            }
            s.unary[transposition_name(i, j)].assign(pairs.begin(), pairs.end());
        }
    out.algebra.emplace(std::move(s));
    return out;
}

HypernetworkSet restrict_hyperbasis(const HypernetworkSet& h, int nodes, std::optional<int> wide)
{
    const int w = wide.value_or(h.wide);
    if (nodes < 1 || nodes > h.nodes)
        throw ValidationError("restriction needs 1 <= m <= " + std::to_string(h.nodes));
    if (w < 2 || w > h.wide)
        throw ValidationError("restriction width must lie in [2, " + std::to_string(h.wide) + "]");
    HypernetworkSet out{h.algebra, nodes, w, h.lambda, {}, h.converse_law_assumed};
    for (const auto& n : h.networks) {
        Hypernetwork r;
        r.nodes = nodes;
        r.wide = w;
        for (int x = 0; x < nodes; ++x)
            for (int y = 0; y < nodes; ++y)
                r.label.push_back(n.at(x, y));
        if (!n.hyper.empty()) {
            r.hyper.assign(tuple_count(nodes, w), -1);
            for (int l = 0; l <= w; ++l)
                if (l != 2)
                    for_each_tuple(nodes, l, [&](const std::vector<int>& t) {
                        r.hyper[tuple_index(t, nodes)] = n.hyper[tuple_index(t, n.nodes)];
                    });
        }
        out.networks.push_back(std::move(r));
    }
    std::sort(out.networks.begin(), out.networks.end());
    out.networks.erase(std::unique(out.networks.begin(), out.networks.end()), out.networks.end());
    return out;
}

MorphismWitness embedding_check(const HypernetworkSet& h, const FiniteBAO& ca)
{
    if (h.nodes < 3)
        throw ValidationError("the relation algebra reduct needs at least 3 nodes");
    if (ca.atom_count() != h.networks.size())
        throw FrameMismatch("Ca(H) does not match the hypernetwork set");
    const RaReductResult rr = ra_reduct(ca, RaCoordinates{0, 1, 2});
    std::vector<Element> images;
    for (int a = 0; a < static_cast<int>(h.algebra.atom_count()); ++a) {
        Element e = ca.zero();
        for (std::size_t k = 0; k < h.networks.size(); ++k)
            if (h.networks[k].at(0, 1) == a)
                e.set(k);
        Element img = rr.algebra.zero();
        for (int c : decompose(rr.classes, e, "the image of " + h.algebra.atom_label(a)))
            img.set(static_cast<std::size_t>(c));
        images.push_back(std::move(img));
    }
    return check_homomorphism(h.algebra, rr.algebra, std::move(images), {true, false});
}

} // namespace cylkit
