#pragma once

#include "cylkit/atom_structure.hpp"
#include "cylkit/bao.hpp"
#include "cylkit/hh.hpp"
#include "cylkit/schema.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cylkit::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Canonical form: sorted keys (std::map), sorted relation pairs and constant
/// lists, composition as the sorted list of consistent triples.
Json to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

Json to_json(const AtomStructure& frame);
AtomStructure frame_from_json(const Json& j);

/// Elements are written as sorted lists of atom indices.
Json to_json(const Element& x);
Element element_from_json(const Json& j, std::size_t universe);
/// Accepts an index list or a list of atom labels.
Element element_from_json(const Json& j, const FiniteBAO& algebra);

Json to_json(const HypernetworkSet& h);
HypernetworkSet hypernetworks_from_json(const Json& j);

Json to_json(const std::vector<NamedEquation>& sigma, int n);
std::vector<NamedEquation> equations_from_json(const Json& j);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
/// ParseError on malformed JSON, ValidationError on a wrong schema_version.
Json parse(const std::string& text);
Json load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const Json& j);
std::string read_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& data);

/// CYLKIT_SEED when set, else the fallback. ValidationError on a malformed value.
std::uint64_t resolve_seed(std::uint64_t fallback);

struct Report {
    std::vector<std::string> command;
    std::map<std::string, std::string> digests; // input path -> sha256
    Json verdicts = Json::array(); // {"check", "holds", ...} in order
    Json witnesses = Json::object();
    std::map<std::string, double> timings; // seconds
    std::uint64_t seed = 0;
    unsigned jobs = 1;

    void verdict(const std::string& check, bool holds, Json detail = Json::object());
    bool all_hold() const;
    /// Timings are only emitted on request, so reports stay byte-stable.
    Json to_json(bool with_timings) const;
};

} // namespace cylkit::io
