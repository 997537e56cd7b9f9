// cylkit: command-line front end.
//
// Every verb prints a JSON report on stdout. Exit codes: 0 all checks hold,
// 1 definitive failure, 2 bounded search exhausted or cap hit, 3 usage or
// validation error.

#include "cylkit/dimension_ops.hpp"
#include "cylkit/errors.hpp"
#include "cylkit/hh.hpp"
#include "cylkit/io.hpp"
#include "cylkit/monk.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/qra.hpp"
#include "cylkit/schema.hpp"
#include "cylkit/set_algebras.hpp"
#include "cylkit/splitting.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace cylkit;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 3;

struct Globals {
    unsigned jobs = 1;
    bool timings = false;
};

struct Run {
    io::Report report;
    bool exhausted = false;

    int exit_code() const
    {
        if (!report.all_hold())
            return kExitFail;
        return exhausted ? kExitExhausted : kExitOk;
    }
};

FiniteBAO load_algebra(Run& run, const std::string& path)
{
    const std::string text = io::read_file(path);
    run.report.digests[path] = io::sha256_hex(text);
    return FiniteBAO(io::frame_from_json(io::parse(text)));
}

HypernetworkSet load_hypernetworks(Run& run, const std::string& path)
{
    const std::string text = io::read_file(path);
    run.report.digests[path] = io::sha256_hex(text);
    return io::hypernetworks_from_json(io::parse(text));
}

void write_frame(Run& run, const std::string& out, const AtomStructure& frame)
{
    run.report.witnesses["atoms"] = frame.atoms.size();
    if (out.empty())
        return;
    const Json j = io::to_json(frame);
    io::save(out, j);
    run.report.digests[out] = io::sha256_hex(io::dump(j));
}

Element parse_element(const std::string& text, const FiniteBAO& algebra)
{
    return io::element_from_json(io::parse(text), algebra);
}

std::vector<int> parse_ints(const std::string& text)
{
    std::vector<int> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ','))
        try {
            out.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw ValidationError("expected a comma separated list of integers, got '" + text + "'");
        }
    return out;
}

Json assignment_json(const Assignment& a, const FiniteBAO& algebra)
{
    Json j = Json::object();
    for (const auto& [name, x] : a) {
        Json labels = Json::array();
        for (int v : x.atoms())
            labels.push_back(algebra.atom_label(v));
        j[name] = labels;
    }
    return j;
}

CheckMode parse_mode(const std::string& mode, std::uint64_t seed, std::size_t trials)
{
    if (mode == "exhaustive")
        return CheckMode::exhaustive();
    if (mode == "sampled")
        return CheckMode::sampled(seed, trials);
    if (mode == "atoms")
        return CheckMode::atoms();
    throw ValidationError("unknown mode '" + mode + "' (exhaustive, sampled, atoms)");
}

// "ca3" -> (ca, 3); "pea4" -> (pea, 4); "ra" -> (ra, 0)
std::pair<std::string, int> parse_variety(const std::string& v)
{
    std::size_t k = 0;
    while (k < v.size() && !std::isdigit(static_cast<unsigned char>(v[k])))
        ++k;
    const std::string name = v.substr(0, k);
    const int n = k < v.size() ? std::stoi(v.substr(k)) : 0;
    if (name == "ra" && n == 0)
        return {name, 0};
    if ((name == "ca" || name == "pea") && n >= 3)
        return {name, n};
    throw ValidationError("unknown variety '" + v + "' (ca<n>, pea<n> with n >= 3, or ra)");
}

void add_correspondents(Run& run, const CorrespondentReport& r)
{
    for (const auto& c : r.checks) {
        Json d = Json::object();
        if (!c.witness.empty())
            d["witness"] = c.witness;
        run.report.verdict(c.check, c.holds, d);
    }
}

void add_variety(Run& run, const FiniteBAO& alg, const VarietyReport& r)
{
    for (const auto& e : r.entries) {
        Json d{{"equation", to_string(e.equation.equation)},
               {"mode", to_string(e.verdict.mode.kind)},
               {"definitive", e.verdict.definitive},
               {"assignments", e.verdict.assignments}};
        if (e.verdict.counterexample)
            d["counterexample"] = assignment_json(*e.verdict.counterexample, alg);
        run.report.verdict(e.equation.name, e.verdict.holds, d);
    }
}

Json morphism_json(const MorphismWitness& w, const FiniteBAO& a, const FiniteBAO& b)
{
    Json images = Json::object();
    for (std::size_t k = 0; k < w.images.size(); ++k) {
        Json labels = Json::array();
        for (int v : w.images[k].atoms())
            labels.push_back(b.atom_label(v));
        images[a.atom_label(static_cast<int>(k))] = labels;
    }
    return images;
}

QraReading parse_reading(const std::string& r)
{
    if (r == "standard")
        return QraReading::Standard;
    if (r == "verbatim")
        return QraReading::Verbatim;
    throw ValidationError("unknown reading '" + r + "' (standard, verbatim)");
}

SchemaTemplate schema_named(const std::string& name)
{
    if (name == "ca")
        return ca_schema();
    if (name == "pea")
        return pea_schema();
    throw ValidationError("unknown schema '" + name + "' (ca, pea)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cylkit: finite cylindric, polyadic and relation algebra toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads for search kernels")->check(CLI::Range(1U, 256U));
    app.add_flag("--timings", g.timings, "Include wall-clock timings in the report");

    Run run;
    std::function<void()> action;

    // construct
    auto* construct = app.add_subcommand("construct", "Build an algebra or a set of hypernetworks");
    construct->require_subcommand(1);
    std::string out;
    int m = 3, n = 3, r = 1, psi = 3, u = 2, nodes = 0, wide = 0, lambda = 1, alpha = 3, p = 1;
    bool transpositions = false, total = false;
    std::string relation, sizes;
    std::vector<std::string> generators;

    auto* c_monk = construct->add_subcommand("monk", "Monk atom structure G(m, n)");
    c_monk->add_option("--m", m, "Dimension")->required();
    c_monk->add_option("--n", n, "Colours")->required();
    c_monk->add_flag("--johnson", transpositions, "Add the transpositions p_ij");
    c_monk->add_option("--out", out, "Output frame");
    c_monk->callback([&] {
        action = [&] { write_frame(run, out, transpositions ? johnson_extension(m, n) : monk_structure(m, n)); };
    });

    auto* c_hh = construct->add_subcommand("hh", "Relation algebra A(n, r) or its hypernetworks");
    c_hh->add_option("--n", n, "n")->required();
    c_hh->add_option("--r", r, "r")->required();
    c_hh->add_option("--psi", psi, "Copies per (i, j)")->required();
    c_hh->add_option("--nodes", nodes, "Enumerate hypernetworks on this many nodes");
    c_hh->add_option("--wide", wide, "Longest labelled tuple");
    c_hh->add_option("--lambda", lambda, "Number of hyperlabels");
    c_hh->add_option("--out", out, "Output file");
    c_hh->callback([&] {
        action = [&] {
            const FiniteBAO a = hh_algebra(n, r, psi);
            if (nodes == 0) {
                write_frame(run, out, a.frame());
                return;
            }
            HypernetworkCaps caps;
            caps.jobs = g.jobs;
            const auto h = enumerate_hypernetworks(a, nodes, wide == 0 ? nodes : wide, lambda, caps);
            run.report.witnesses["networks"] = h.networks.size();
            if (!out.empty()) {
                const Json j = io::to_json(h);
                io::save(out, j);
                run.report.digests[out] = io::sha256_hex(io::dump(j));
            }
        };
    });

    auto* c_set = construct->add_subcommand("set", "Full cylindric set algebra on ^n U");
    c_set->add_option("--n", n, "Dimension")->required();
    c_set->add_option("--u", u, "Base size")->required();
    c_set->add_flag("--transpositions", transpositions, "Add p_ij");
    c_set->add_option("--out", out, "Output frame");
    c_set->callback([&] {
        action = [&] {
            FullSetOptions o;
            o.transpositions = transpositions;
            write_frame(run, out, full_set_algebra(n, u, o).frame());
        };
    });

    auto* c_dir = construct->add_subcommand("directed", "Directed set algebra over a base <U; R>");
    c_dir->add_option("--alpha", alpha, "Dimension")->required();
    c_dir->add_option("--u", u, "Base size")->required();
    c_dir->add_option("--relation", relation, "Pairs x:y separated by commas");
    c_dir->add_flag("--total", total, "R = U x U");
    c_dir->add_option("--out", out, "Output frame");
    c_dir->callback([&] {
        action = [&] {
            DirectedBase base{u, {}};
            if (total) {
                for (int x = 0; x < u; ++x)
                    for (int y = 0; y < u; ++y)
                        base.r.emplace_back(x, y);
            } else {
                std::stringstream in(relation);
                std::string pair;
                while (std::getline(in, pair, ',')) {
                    const auto colon = pair.find(':');
                    if (colon == std::string::npos)
                        throw ValidationError("relation pairs are written x:y");
                    base.r.emplace_back(std::stoi(pair.substr(0, colon)), std::stoi(pair.substr(colon + 1)));
                }
            }
            const auto cls = classify_base(base);
            run.report.witnesses["base"] = {{"weak_p", cls.weak_p}, {"p", cls.p_structure}, {"extensional", cls.extensional}};
            write_frame(run, out, directed_set_algebra(alpha, base).frame());
        };
    });

    auto* c_split = construct->add_subcommand("split", "Split the atom R of the algebra generated by R");
    c_split->add_option("--alpha", alpha, "Dimension")->required();
    c_split->add_option("--sizes", sizes, "Block sizes |U_i|, comma separated")->required();
    c_split->add_option("--p", p, "Pieces")->required();
    c_split->add_option("--generator", generators, "Substitution generator as images, e.g. 1,0,2");
    c_split->add_option("--out", out, "Output frame");
    c_split->callback([&] {
        action = [&] {
            SplitSpec spec;
            spec.alpha = alpha;
            spec.sizes = parse_ints(sizes);
            spec.p = p;
            for (const auto& gen : generators)
                spec.generators.push_back(parse_ints(gen));
            const SplitBase base = build_base(spec);
            const SplitAlgebra s = split(base, p);
            run.report.witnesses["base_atoms"] = base.algebra.atom_count();
            const auto tau = witness_term(std::min(p, alpha) - 1 < 1 ? 1 : std::min(p, alpha) - 1, alpha);
            run.report.verdict("tau(R) = 0", eval(tau, s.algebra, {{"x", s.r()}}).none(),
                               {{"term", to_string(tau)}});
            write_frame(run, out, s.algebra.frame());
        };
    });

    // check
    auto* check = app.add_subcommand("check", "Check laws of an algebra or a hyperbasis");
    check->require_subcommand(1);
    std::string input, variety = "ca3", mode = "exhaustive", pe, qe, reading = "standard";
    std::size_t trials = 1000;

    auto* k_ax = check->add_subcommand("axioms", "Equations of a variety");
    k_ax->add_option("--input", input, "Frame")->required();
    k_ax->add_option("--variety", variety, "ca<n>, pea<n> or ra");
    k_ax->add_option("--mode", mode, "exhaustive, sampled or atoms");
    k_ax->add_option("--trials", trials, "Samples per equation");
    k_ax->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, input);
            const auto [name, dim] = parse_variety(variety);
            if (name == "ra") {
                add_correspondents(run, ra_atom_axioms(a));
                return;
            }
            const auto cm = parse_mode(mode, run.report.seed, trials);
            add_variety(run, a, check_variety(a, instantiate_schema(schema_named(name), dim), cm));
        };
    });

    auto* k_corr = check->add_subcommand("correspondents", "CA_n frame conditions");
    k_corr->add_option("--input", input, "Frame")->required();
    k_corr->add_option("--variety", variety, "ca<n>");
    k_corr->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, input);
            const auto [name, dim] = parse_variety(variety);
            if (name != "ca")
                throw ValidationError("correspondents are defined for ca<n>");
            add_correspondents(run, ca_frame_correspondents(a.frame(), dim));
        };
    });

    auto* k_hb = check->add_subcommand("hyperbasis", "Hyperbasis clauses and symmetry");
    k_hb->add_option("--input", input, "Hypernetwork set")->required();
    k_hb->callback([&] {
        action = [&] {
            const auto h = load_hypernetworks(run, input);
            const auto rep = check_hyperbasis(h);
            const Json d = rep.first_violation.empty() ? Json::object()
                                                      : Json{{"first", rep.first_violation}, {"detail", rep.detail}};
            run.report.verdict("networks", rep.networks, d);
            run.report.verdict("witness", rep.witness);
            run.report.verdict("amalgamation", rep.amalgamation);
            run.report.verdict("patching", rep.patching);
            run.report.verdict("symmetric", is_symmetric(h));
            run.report.witnesses["networks"] = h.networks.size();
        };
    });

    auto* k_qp = check->add_subcommand("quasiprojections", "Quasi-projection laws for p, q");
    k_qp->add_option("--input", input, "Relation algebra frame")->required();
    k_qp->add_option("--p", pe, "Element p as a JSON list of atoms")->required();
    k_qp->add_option("--q", qe, "Element q as a JSON list of atoms")->required();
    k_qp->add_option("--reading", reading, "standard or verbatim");
    k_qp->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, input);
            const auto r = check_quasiprojections(a, parse_element(pe, a), parse_element(qe, a), parse_reading(reading));
            run.report.verdict("quasiprojections", r.holds,
                               r.failing.empty() ? Json::object() : Json{{"failing", r.failing}});
        };
    });

    // dimension operations
    std::string indices, rho, element, coords;
    auto* nr = app.add_subcommand("neat-reduct", "Nr_I of a frame");
    nr->add_option("--input", input, "Frame")->required();
    nr->add_option("--indices", indices, "I, comma separated")->required();
    nr->add_option("--out", out, "Output frame");
    nr->callback([&] {
        action = [&] { write_frame(run, out, neat_reduct(load_algebra(run, input), parse_ints(indices)).algebra.frame()); };
    });

    auto* rd = app.add_subcommand("reduct", "Rd^rho of a frame");
    rd->add_option("--input", input, "Frame")->required();
    rd->add_option("--rho", rho, "rho(0),rho(1),...")->required();
    rd->add_option("--out", out, "Output frame");
    rd->callback([&] { action = [&] { write_frame(run, out, reduct_rho(load_algebra(run, input), parse_ints(rho)).frame()); }; });

    auto* rl = app.add_subcommand("relativize", "Rl_x of a frame");
    rl->add_option("--input", input, "Frame")->required();
    rl->add_option("--element", element, "x as a JSON list of atoms")->required();
    rl->add_option("--out", out, "Output frame");
    rl->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, input);
            write_frame(run, out, relativize(a, parse_element(element, a)).frame());
        };
    });

    auto* ra = app.add_subcommand("ra-reduct", "Relation algebra reduct of a CA_n frame");
    ra->add_option("--input", input, "Frame")->required();
    ra->add_option("--coords", coords, "a,b,spare");
    ra->add_option("--out", out, "Output frame");
    ra->callback([&] {
        action = [&] {
            std::optional<RaCoordinates> co;
            if (!coords.empty()) {
                const auto v = parse_ints(coords);
                if (v.size() != 3)
                    throw ValidationError("--coords takes three indices");
                co = RaCoordinates{v[0], v[1], v[2]};
            }
            const auto r = ra_reduct(load_algebra(run, input), co);
            run.report.verdict("associative", r.associative);
            write_frame(run, out, r.algebra.frame());
        };
    });

    // schema
    auto* schema = app.add_subcommand("schema", "Instantiate or check an equation schema");
    schema->require_subcommand(1);
    std::string schema_name = "ca";
    auto* s_inst = schema->add_subcommand("instantiate", "Sigma_n");
    s_inst->add_option("--schema", schema_name, "ca or pea");
    s_inst->add_option("--n", n, "Dimension")->required();
    s_inst->add_option("--out", out, "Output equations");
    s_inst->callback([&] {
        action = [&] {
            const auto sigma = instantiate_schema(schema_named(schema_name), n);
            const Json j = io::to_json(sigma, n);
            run.report.witnesses["equations"] = sigma.size();
            if (out.empty()) {
                run.report.witnesses["sigma"] = j.at("equations");
            } else {
                io::save(out, j);
                run.report.digests[out] = io::sha256_hex(io::dump(j));
            }
        };
    });
    auto* s_check = schema->add_subcommand("check", "Check Sigma_n or an equations file on a frame");
    std::string equations;
    s_check->add_option("--input", input, "Frame")->required();
    s_check->add_option("--schema", schema_name, "ca or pea");
    s_check->add_option("--equations", equations, "Equations file instead of a schema");
    s_check->add_option("--n", n, "Dimension");
    s_check->add_option("--mode", mode, "exhaustive, sampled or atoms");
    s_check->add_option("--trials", trials, "Samples per equation");
    s_check->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, input);
            std::vector<NamedEquation> sigma;
            if (!equations.empty()) {
                const std::string text = io::read_file(equations);
                run.report.digests[equations] = io::sha256_hex(text);
                sigma = io::equations_from_json(io::parse(text));
            } else {
                sigma = instantiate_schema(schema_named(schema_name), n);
            }
            add_variety(run, a, check_variety(a, sigma, parse_mode(mode, run.report.seed, trials)));
        };
    });

    // represent
    int max_base = 4;
    std::size_t max_atoms = 10;
    auto* rep = app.add_subcommand("represent", "Bounded search for a set representation");
    rep->add_option("--input", input, "Frame")->required();
    rep->add_option("--max-base", max_base, "Largest |U|");
    rep->add_option("--max-atoms", max_atoms, "Refuse larger algebras");
    rep->callback([&] {
        action = [&] {
            const FiniteBAO a = cylindric_reduct(load_algebra(run, input));
            RepresentationOptions o{max_base, max_atoms, g.jobs};
            const auto r = representation_search(a, o);
            run.report.witnesses["base"] = r.base;
            run.report.witnesses["nodes"] = r.nodes;
            if (r.found) {
                run.report.verdict("representation", r.witness.ok(), {{"base", r.base}});
                run.report.witnesses["representation"] = morphism_json(r.witness, a, *r.target);
            } else {
                run.report.witnesses["result"] = "none up to base " + std::to_string(max_base);
                run.exhausted = true;
            }
        };
    });

    // iso
    std::string left, right;
    auto* iso = app.add_subcommand("iso", "Isomorphism between two frames");
    iso->add_option("left", left, "Frame")->required();
    iso->add_option("right", right, "Frame")->required();
    iso->add_option("--max-atoms", max_atoms, "Refuse larger frames")->default_val(4096);
    iso->callback([&] {
        action = [&] {
            const FiniteBAO a = load_algebra(run, left);
            const FiniteBAO b = load_algebra(run, right);
            if (!(a.signature() == b.signature()) || a.atom_count() != b.atom_count()) {
                run.report.verdict("isomorphic", false, {{"result", "none"}});
                return;
            }
            const auto w = find_isomorphism(a, b, SearchOptions{max_atoms, g.jobs});
            if (!w) {
                run.report.verdict("isomorphic", false, {{"result", "none"}});
                return;
            }
            run.report.verdict("isomorphic", w->ok());
            run.report.witnesses["map"] = morphism_json(*w, a, b);
        };
    });

    // amalgam
    std::string a0p, a1p, a2p;
    std::size_t bound = 4;
    auto* am = app.add_subcommand("amalgam", "Close the span A1 <- A0 -> A2 inside a small CA_n");
    am->add_option("--a0", a0p, "Frame")->required();
    am->add_option("--a1", a1p, "Frame")->required();
    am->add_option("--a2", a2p, "Frame")->required();
    am->add_option("--bound", bound, "Largest candidate (atoms)");
    am->callback([&] {
        action = [&] {
            const FiniteBAO a0 = load_algebra(run, a0p);
            const FiniteBAO a1 = load_algebra(run, a1p);
            const FiniteBAO a2 = load_algebra(run, a2p);
            const auto e1 = find_embeddings(a0, a1, 1);
            const auto e2 = find_embeddings(a0, a2, 1);
            if (e1.empty() || e2.empty()) {
                run.report.verdict("span", false, {{"detail", "A0 does not embed into A1 and A2"}});
                return;
            }
            const auto r = amalgam_search(a0, a1, a2, e1[0], e2[0], bound);
            run.report.witnesses["candidates"] = r.candidates_tried;
            if (!r.found) {
                run.report.witnesses["result"] = "none up to " + std::to_string(bound) + " atoms";
                run.exhausted = true;
                return;
            }
            run.report.verdict("amalgam", r.check.amalgam);
            run.report.witnesses["super"] = r.check.super;
            run.report.witnesses["d_atoms"] = r.d->atom_count();
        };
    });

    // qra
    auto* qra = app.add_subcommand("qra", "Quasi-projective relation algebras");
    qra->require_subcommand(1);
    auto* q_terms = qra->add_subcommand("terms", "The named terms for dimension n");
    q_terms->add_option("--n", n, "Dimension")->required();
    q_terms->add_option("--reading", reading, "standard or verbatim");
    q_terms->callback([&] {
        action = [&] {
            Json t = Json::object();
            for (const auto& [name, term] : qra_terms(n, parse_reading(reading)))
                t[name] = to_string(term);
            run.report.witnesses["terms"] = t;
        };
    });
    auto* q_check = qra->add_subcommand("check", "Build B_n and check it");
    std::string trivial;
    q_check->add_option("--input", input, "Relation algebra frame (omit for the trivial QRA)");
    q_check->add_option("--p", pe, "Element p as a JSON list of atoms");
    q_check->add_option("--q", qe, "Element q as a JSON list of atoms");
    q_check->add_option("--n", n, "Dimension")->required();
    q_check->add_option("--reading", reading, "standard or verbatim");
    q_check->callback([&] {
        action = [&] {
            const FiniteBAO b = input.empty() ? trivial_qra() : load_algebra(run, input);
            const Element pp = pe.empty() ? b.one() : parse_element(pe, b);
            const Element qq = qe.empty() ? b.one() : parse_element(qe, b);
            const auto rd_ = parse_reading(reading);
            const auto qp = check_quasiprojections(b, pp, qq, rd_);
            run.report.verdict("quasiprojections", qp.holds,
                               qp.failing.empty() ? Json::object() : Json{{"failing", qp.failing}});
            if (!qp.holds)
                return;
            const auto bn = build_Bn(b, pp, qq, n, rd_);
            run.report.witnesses["elements"] = bn.elements.size();
            run.report.witnesses["atoms"] = bn.atoms.size();
            run.report.verdict("closed", bn.closed, bn.failure.empty() ? Json::object() : Json{{"failure", bn.failure}});
            if (bn.equations)
                run.report.verdict("ca_axioms", bn.equations->all_hold());
            const auto inv = check_suc_pred(b, pp, qq, n, rd_);
            run.report.verdict("suc_pred_inverse", inv.holds, {{"checked", inv.checked}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (int k = 1; k < argc; ++k)
        run.report.command.emplace_back(argv[k]);
    run.report.jobs = g.jobs;
    const auto start = std::chrono::steady_clock::now();
    try {
        run.report.seed = io::resolve_seed(1);
        action();
    } catch (const CapExceeded& e) {
        std::cerr << "cap: " << e.what() << "\n";
        run.report.witnesses["cap"] = e.what();
        run.exhausted = true;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    run.report.timings["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << io::dump(run.report.to_json(g.timings));
    return run.exit_code();
}
