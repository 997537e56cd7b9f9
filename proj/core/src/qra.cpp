#include "cylkit/qra.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <set>

namespace cylkit {

namespace {

void require_ra(const FiniteBAO& b)
{
    if (!b.signature().relation_algebra || !b.has_composition())
        throw ValidationError("qra: algebra lacks the relation algebra signature");
}

Element converse(const FiniteBAO& b, const Element& x) { return b.apply(kConverseName, x); }

TermPtr pi(const TermPtr& eps, const TermPtr& p, const TermPtr& q, int n, int i)
{
    if (i == n - 1)
        return power(q, n - 1);
    return term::compose({eps, power(q, i), p});
}

std::string index_pair(int i, int j) { return std::to_string(i) + (i >= 10 || j >= 10 ? "_" : "") + std::to_string(j); }

} // namespace

QuasiprojectionCheck check_quasiprojections(const FiniteBAO& b, const Element& p, const Element& q, QraReading reading)
{
    require_ra(b);
    b.require_member(p);
    b.require_member(q);
    const Element& id = b.constant(kIdentityName);
    QuasiprojectionCheck r;
    if (!b.compose(converse(b, p), p).is_subset_of(id)) {
        r.holds = false;
        r.failing = "p^;p <= 1'";
        return r;
    }
    if (reading == QraReading::Standard) {
        if (!b.compose(converse(b, q), q).is_subset_of(id)) {
            r.holds = false;
            r.failing = "q^;q <= 1'";
            return r;
        }
    } else if (!b.compose(q, q).is_subset_of(b.one())) {
        r.holds = false;
        r.failing = "q;q <= 1";
        return r;
    }
    if (!b.compose(converse(b, p), q).is_full()) {
        r.holds = false;
        r.failing = "p^;q = 1";
    }
    return r;
}

TermPtr power(const TermPtr& x, int k)
{
    if (k < 0)
        throw ValidationError("power: negative exponent");
    TermPtr r = term::identity();
    for (int i = 0; i < k; ++i)
        r = term::compose({r, x});
    return r;
}

TermPtr dom(const TermPtr& x) { return term::compose({term::identity(), term::compose({x, term::conv(x)})}); }

TermPtr ran(const TermPtr& x) { return term::compose({term::identity(), term::compose({term::conv(x), x})}); }

std::map<std::string, TermPtr> qra_terms(int n, QraReading reading)
{
    if (n < 2)
        throw ValidationError("qra_terms: n must be at least 2");
    const auto p = term::var("p");
    const auto q = term::var("q");
    const auto x = term::var("x");
    std::map<std::string, TermPtr> out;

    const auto eps = dom(power(q, n - 1));
    out["eps"] = eps;
    std::vector<TermPtr> pis;
    std::vector<TermPtr> xis;
    for (int i = 0; i < n; ++i) {
        pis.push_back(pi(eps, p, q, n, i));
        out["pi" + std::to_string(i)] = pis.back();
        xis.push_back(reading == QraReading::Standard ? term::compose({pis.back(), term::conv(pis.back())})
                                                      : term::compose({pis.back(), pis.back()}));
        out["xi" + std::to_string(i)] = xis.back();
    }
    for (int i = 0; i < n; ++i) {
        std::vector<TermPtr> others;
        for (int j = 0; j < n; ++j)
            if (j != i)
                others.push_back(xis[static_cast<std::size_t>(j)]);
        const auto ti = others.size() == 1 ? others.front() : term::meet(others);
        out["t" + std::to_string(i)] = ti;
        out["c" + std::to_string(i)] = term::compose({x, ti});
    }
    out["t"] = term::meet(xis);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const auto& a = pis[static_cast<std::size_t>(i)];
            const auto& b = pis[static_cast<std::size_t>(j)];
            TermPtr d = reading == QraReading::Standard
                ? term::compose({term::one(), term::meet({term::compose({a, term::conv(b)}), term::identity()})})
                : term::compose({term::one(), term::meet({a, b})});
            out["d" + index_pair(i, j)] = d;
        }
    out["1n"] = term::compose({term::one(), eps});
    out["dom"] = dom(x);
    out["ran"] = ran(x);
    out["suc"] = term::compose({term::one(), term::compose({term::conv(p), x, term::conv(q)})});
    out["pred"] = term::compose({term::conv(p), ran(x), q});
    return out;
}

BnResult build_Bn(const FiniteBAO& b, const Element& p, const Element& q, int n, QraReading reading)
{
    require_ra(b);
    const auto qp = check_quasiprojections(b, p, q, reading);
    if (!qp.holds)
        throw ValidationError("build_Bn: not quasi-projections (" + qp.failing + ")");
    if (b.atom_count() > 16)
        throw CapExceeded("build_Bn: more than 16 atoms");

    const auto terms = qra_terms(n, reading);
    Assignment env{{"p", p}, {"q", q}};
    const Element t = eval(terms.at("t"), b, env);
    BnResult r;
    r.unit = eval(terms.at("1n"), b, env);

    const Element one = b.one();
    const std::size_t total = std::size_t{1} << b.atom_count();
    std::set<Element> members;
    for (std::size_t mask = 0; mask < total; ++mask) {
        Element x(b.atom_count());
        for (std::size_t a = 0; a < b.atom_count(); ++a)
            if (mask >> a & 1U)
                x.set(a);
        if (b.compose(b.compose(one, x), t) == x)
            members.insert(x);
    }
    r.elements.assign(members.begin(), members.end());

    std::vector<std::pair<std::pair<int, int>, Element>> diag;
    auto fail = [&](std::string why) {
        r.closed = false;
        r.failure = std::move(why);
        return r;
    };
    auto in = [&](const Element& y) { return members.count(y) != 0; };

    if (!in(b.zero()))
        return fail("0 not in B_n");
    if (!in(r.unit))
        return fail("1^(n) not in B_n");
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Element d = eval(terms.at("d" + index_pair(i, j)), b, env);
            if (!in(d))
                return fail("d" + index_pair(i, j) + " not in B_n");
            diag.push_back({{i, j}, d});
        }
    for (const auto& x : r.elements) {
        if (!x.is_subset_of(r.unit))
            return fail("element " + x.to_string() + " not below 1^(n)");
        if (!in(r.unit - x))
            return fail("complement of " + x.to_string() + " not in B_n");
        for (int i = 0; i < n; ++i) {
            env["x"] = x;
            if (!in(eval(terms.at("c" + std::to_string(i)), b, env)))
                return fail("c" + std::to_string(i) + " of " + x.to_string() + " not in B_n");
        }
        for (const auto& y : r.elements)
            if (!in(x | y) || !in(x & y))
                return fail("join or meet of " + x.to_string() + ", " + y.to_string() + " not in B_n");
    }
    r.closed = true;

    for (const auto& x : r.elements) {
        if (x.none())
            continue;
        bool minimal = true;
        for (const auto& y : r.elements)
            if (y.any() && y != x && y.is_subset_of(x)) {
                minimal = false;
                break;
            }
        if (minimal)
            r.atoms.push_back(x);
    }

    AtomStructure frame;
    frame.signature = cylindric_signature(n);
    for (const auto& a : r.atoms)
        frame.atoms.push_back(block_label(b, a));
    for (int i = 0; i < n; ++i) {
        auto& rel = frame.unary[cylindrifier_name(i)];
        for (std::size_t k = 0; k < r.atoms.size(); ++k) {
            env["x"] = r.atoms[k];
            const Element img = eval(terms.at("c" + std::to_string(i)), b, env);
            for (int a : decompose(r.atoms, img, "c" + std::to_string(i)))
                rel.emplace_back(a, static_cast<int>(k));
        }
    }
    for (const auto& [ij, d] : diag)
        frame.constants[diagonal_name(ij.first, ij.second)] = decompose(r.atoms, d, "diagonal");
    frame.normalize();
    r.algebra.emplace(std::move(frame));

    const auto axioms = instantiate_schema(ca_schema(), n);
    r.equations = check_variety(*r.algebra, axioms, CheckMode::exhaustive());
    return r;
}

InversionCheck check_suc_pred(const FiniteBAO& b, const Element& p, const Element& q, int n, QraReading reading)
{
    const auto bn = build_Bn(b, p, q, n, reading);
    const auto terms = qra_terms(n, reading);
    Assignment env{{"p", p}, {"q", q}};
    InversionCheck r;
    for (const auto& x : bn.elements) {
        env["x"] = x;
        if (eval(terms.at("c0"), b, env) != x)
            continue;
        ++r.checked;
        env["x"] = eval(terms.at("pred"), b, env);
        const Element sp = eval(terms.at("suc"), b, env);
        env["x"] = x;
        env["x"] = eval(terms.at("suc"), b, env);
        const Element ps = eval(terms.at("pred"), b, env);
        if (sp != x || ps != x) {
            r.holds = false;
            r.counterexample = x;
            return r;
        }
    }
    return r;
}

FiniteBAO trivial_qra()
{
    AtomStructure s;
    s.atoms = {"1'"};
    s.signature.relation_algebra = true;
    s.constants[kIdentityName] = {0};
    s.unary[kConverseName] = {{0, 0}};
    s.has_composition = true;
    s.composition = Consistency(1, true);
    return FiniteBAO(std::move(s));
}

} // namespace cylkit
