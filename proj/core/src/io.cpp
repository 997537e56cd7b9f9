#include "cylkit/io.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/term.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cylkit::io {

namespace {

void require_version(const Json& j, const char* kind)
{
    if (!j.is_object())
        throw ValidationError(std::string(kind) + ": expected a JSON object");
    if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
        throw ValidationError(std::string(kind) + ": unsupported or missing schema_version");
    if (j.contains("kind") && j.at("kind") != kind)
        throw ValidationError(std::string("expected kind '") + kind + "', found '" + j.at("kind").get<std::string>() + "'");
}

template <class T>
T get(const Json& j, const char* key, const char* what)
{
    if (!j.contains(key))
        throw ValidationError(std::string(what) + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string(what) + ": field '" + key + "': " + e.what());
    }
}

} // namespace

Json to_json(const Signature& sig)
{
    Signature s = sig;
    s.normalize();
    Json j;
    j["dimension"] = s.dimension;
    j["cylindrifiers"] = s.cylindrifiers;
    j["quasi"] = s.quasi;
    j["diagonals"] = Json::array();
    for (auto [a, b] : s.diagonals)
        j["diagonals"].push_back({a, b});
    j["transpositions"] = Json::array();
    for (auto [a, b] : s.transpositions)
        j["transpositions"].push_back({a, b});
    j["substitutions"] = s.substitutions;
    j["relation_algebra"] = s.relation_algebra;
    j["extra_unary"] = s.extra_unary;
    j["extra_constants"] = s.extra_constants;
    return j;
}

Signature signature_from_json(const Json& j)
{
    const char* what = "signature";
    Signature s;
    s.dimension = get<int>(j, "dimension", what);
    s.cylindrifiers = get<std::vector<int>>(j, "cylindrifiers", what);
    if (j.contains("quasi"))
        s.quasi = get<std::vector<int>>(j, "quasi", what);
    for (const auto& p : get<std::vector<std::vector<int>>>(j, "diagonals", what)) {
        if (p.size() != 2)
            throw ValidationError("signature: diagonal entries are index pairs");
        s.diagonals.emplace_back(p[0], p[1]);
    }
    if (j.contains("transpositions"))
        for (const auto& p : get<std::vector<std::vector<int>>>(j, "transpositions", what)) {
            if (p.size() != 2)
                throw ValidationError("signature: transposition entries are index pairs");
            s.transpositions.emplace_back(p[0], p[1]);
        }
    if (j.contains("substitutions"))
        s.substitutions = get<std::vector<Transformation>>(j, "substitutions", what);
    if (j.contains("relation_algebra"))
        s.relation_algebra = get<bool>(j, "relation_algebra", what);
    if (j.contains("extra_unary"))
        s.extra_unary = get<std::vector<std::string>>(j, "extra_unary", what);
    if (j.contains("extra_constants"))
        s.extra_constants = get<std::vector<std::string>>(j, "extra_constants", what);
    s.normalize();
    return s;
}

Json to_json(const AtomStructure& frame)
{
    AtomStructure f = frame;
    f.normalize();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "frame";
    j["atoms"] = f.atoms;
    j["signature"] = to_json(f.signature);
    j["unary"] = Json::object();
    for (const auto& [name, pairs] : f.unary) {
        Json rel = Json::array();
        for (auto [a, b] : pairs)
            rel.push_back({a, b});
        j["unary"][name] = rel;
    }
    j["constants"] = Json::object();
    for (const auto& [name, members] : f.constants)
        j["constants"][name] = members;
    if (f.has_composition) {
        Json triples = Json::array();
        const int n = static_cast<int>(f.atoms.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (f.composition.consistent(a, b, c))
                        triples.push_back({a, b, c});
        j["consistent"] = triples;
    }
    return j;
}

AtomStructure frame_from_json(const Json& j)
{
    require_version(j, "frame");
    const char* what = "frame";
    AtomStructure f;
    f.atoms = get<std::vector<std::string>>(j, "atoms", what);
    f.signature = signature_from_json(get<Json>(j, "signature", what));
    const int n = static_cast<int>(f.atoms.size());
    if (j.contains("unary"))
        for (const auto& [name, rel] : j.at("unary").items()) {
            auto& pairs = f.unary[name];
            for (const auto& p : rel) {
                const auto v = p.get<std::vector<int>>();
                if (v.size() != 2)
                    throw ValidationError("frame: relation '" + name + "' needs atom pairs");
                pairs.emplace_back(v[0], v[1]);
            }
        }
    if (j.contains("constants"))
        for (const auto& [name, members] : j.at("constants").items())
            f.constants[name] = members.get<std::vector<int>>();
    if (j.contains("consistent")) {
        f.has_composition = true;
        f.composition = Consistency(f.atoms.size(), false);
        for (const auto& t : j.at("consistent")) {
            const auto v = t.get<std::vector<int>>();
            if (v.size() != 3)
                throw ValidationError("frame: consistent entries are atom triples");
            for (int a : v)
                if (a < 0 || a >= n)
                    throw ValidationError("frame: consistent triple refers to an invalid atom index");
            f.composition.set(v[0], v[1], v[2], true);
        }
    }
    f.normalize();
    f.validate();
    return f;
}

Json to_json(const Element& x) { return x.atoms(); }

Element element_from_json(const Json& j, std::size_t universe)
{
    if (!j.is_array())
        throw ValidationError("element: expected a list of atom indices");
    Element x(universe);
    for (const auto& a : j) {
        if (!a.is_number_integer() || a.get<long long>() < 0 || a.get<std::size_t>() >= universe)
            throw ValidationError("element: invalid atom index " + a.dump());
        x.set(a.get<std::size_t>());
    }
    return x;
}

Element element_from_json(const Json& j, const FiniteBAO& algebra)
{
    if (!j.is_array())
        throw ValidationError("element: expected a list");
    Element x = algebra.zero();
    for (const auto& a : j) {
        if (a.is_string()) {
            const auto& atoms = algebra.frame().atoms;
            auto it = std::find(atoms.begin(), atoms.end(), a.get<std::string>());
            if (it == atoms.end())
                throw ValidationError("element: unknown atom '" + a.get<std::string>() + "'");
            x.set(static_cast<std::size_t>(it - atoms.begin()));
        } else {
            x |= element_from_json(Json::array({a}), algebra.atom_count());
        }
    }
    return x;
}

Json to_json(const HypernetworkSet& h)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "hypernetworks";
    j["algebra"] = to_json(h.algebra.frame());
    j["nodes"] = h.nodes;
    j["wide"] = h.wide;
    j["lambda"] = h.lambda;
    j["converse_law_assumed"] = h.converse_law_assumed;
    Json nets = Json::array();
    for (const auto& n : h.networks)
        nets.push_back({{"label", n.label}, {"hyper", n.hyper}});
    j["networks"] = nets;
    return j;
}

HypernetworkSet hypernetworks_from_json(const Json& j)
{
    require_version(j, "hypernetworks");
    const char* what = "hypernetworks";
    HypernetworkSet h{FiniteBAO(frame_from_json(get<Json>(j, "algebra", what))), 0, 0, 1, {}, false};
    h.nodes = get<int>(j, "nodes", what);
    h.wide = get<int>(j, "wide", what);
    h.lambda = get<int>(j, "lambda", what);
    if (j.contains("converse_law_assumed"))
        h.converse_law_assumed = get<bool>(j, "converse_law_assumed", what);
    if (h.nodes < 1 || h.wide < 2 || h.lambda < 1)
        throw ValidationError("hypernetworks: nodes >= 1, wide >= 2, lambda >= 1 required");
    const auto pairs = static_cast<std::size_t>(h.nodes * h.nodes);
    for (const auto& n : get<Json>(j, "networks", what)) {
        Hypernetwork net;
        net.nodes = h.nodes;
        net.wide = h.wide;
        net.label = get<std::vector<int>>(n, "label", what);
        net.hyper = get<std::vector<int>>(n, "hyper", what);
        if (net.label.size() != pairs)
            throw ValidationError("hypernetworks: label list has the wrong length");
        for (int a : net.label)
            if (a < 0 || static_cast<std::size_t>(a) >= h.algebra.atom_count())
                throw ValidationError("hypernetworks: label refers to an invalid atom");
        if (h.lambda > 1 && net.hyper.size() != tuple_count(h.nodes, h.wide))
            throw ValidationError("hypernetworks: hyperlabel list has the wrong length");
        h.networks.push_back(std::move(net));
    }
    std::sort(h.networks.begin(), h.networks.end());
    h.networks.erase(std::unique(h.networks.begin(), h.networks.end()), h.networks.end());
    return h;
}

Json to_json(const std::vector<NamedEquation>& sigma, int n)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "equations";
    j["n"] = n;
    Json eqs = Json::array();
    for (const auto& e : sigma)
        eqs.push_back({{"name", e.name}, {"equation", to_string(e.equation)}});
    j["equations"] = eqs;
    return j;
}

std::vector<NamedEquation> equations_from_json(const Json& j)
{
    require_version(j, "equations");
    std::vector<NamedEquation> out;
    for (const auto& e : get<Json>(j, "equations", "equations"))
        out.push_back({get<std::string>(e, "name", "equations"), parse_equation(get<std::string>(e, "equation", "equations"))});
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(e.what(), line, col);
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json load(const std::filesystem::path& path) { return parse(read_file(path)); }

void save(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path.string() + "'");
    out << dump(j);
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int k = 0; k < len; ++k) {
        s += hex[digest[k] >> 4];
        s += hex[digest[k] & 15];
    }
    return s;
}

std::uint64_t resolve_seed(std::uint64_t fallback)
{
    const char* env = std::getenv("CYLKIT_SEED");
    if (env == nullptr || *env == '\0')
        return fallback;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used, 0);
        if (env[used] != '\0')
            throw ValidationError("");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("CYLKIT_SEED is not an unsigned integer: '") + env + "'");
    }
}

void Report::verdict(const std::string& check, bool holds, Json detail)
{
    Json v = std::move(detail);
    v["check"] = check;
    v["holds"] = holds;
    verdicts.push_back(std::move(v));
}

bool Report::all_hold() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Json& v) { return v.at("holds").get<bool>(); });
}

Json Report::to_json(bool with_timings) const
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "report";
    j["command"] = command;
    j["digests"] = digests;
    j["verdicts"] = verdicts;
    j["witnesses"] = witnesses;
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["parallel"] = jobs > 1;
    if (with_timings)
        j["timings"] = timings;
    return j;
}

} // namespace cylkit::io
