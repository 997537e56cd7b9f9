#include "doctest.h"
#include "oracles.hpp"

#include "cylkit/errors.hpp"
#include "cylkit/hh.hpp"
#include "cylkit/io.hpp"
#include "cylkit/schema.hpp"

#include <cstdlib>
#include <filesystem>
#include <random>

using namespace cylkit;

namespace {

std::filesystem::path scratch()
{
    const char* env = std::getenv("CYLKIT_TEST_TMP");
    auto dir = std::filesystem::path(env ? env : std::filesystem::temp_directory_path().string()) / "cylkit_io";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("frames round trip through JSON")
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
        const auto f = oracle::random_frame(rng, 1 + static_cast<int>(rng() % 6), k % 2 == 0);
        const FiniteBAO a(f);
        const FiniteBAO b(io::frame_from_json(io::parse(io::dump(io::to_json(a.frame())))));
        CHECK(io::dump(io::to_json(b.frame())) == io::dump(io::to_json(a.frame())));
        for (const auto& x : oracle::all_elements(a.atom_count()))
            CHECK(a.apply("f", x) == b.apply("f", x));
    }
    const auto s = oracle::set_frame(2, 2);
    const auto j = io::to_json(s);
    CHECK(j.at("schema_version") == io::kSchemaVersion);
    CHECK(j.at("kind") == "frame");
    CHECK_FALSE(j.contains("consistent"));
}

TEST_CASE("malformed documents are rejected")
{
    CHECK_THROWS_AS(io::parse("{\"a\": [1, 2,,]}"), ParseError);
    try {
        io::parse("{\n  \"a\": ]\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    auto j = io::to_json(oracle::set_frame(2, 1));
    j["schema_version"] = 99;
    CHECK_THROWS_AS(io::frame_from_json(j), ValidationError);
    j = io::to_json(oracle::set_frame(2, 1));
    j["unary"]["c0"] = io::Json::array({io::Json::array({0, 5})});
    CHECK_THROWS_AS(FiniteBAO(io::frame_from_json(j)), ValidationError);
}

TEST_CASE("elements by index or label")
{
    const FiniteBAO a(oracle::set_frame(2, 2));
    Element x = a.zero();
    x.set(1);
    x.set(3);
    CHECK(io::element_from_json(io::to_json(x), a.atom_count()) == x);
    CHECK(io::element_from_json(io::Json::array({"01", "11"}), a) == x);
    CHECK_THROWS_AS(io::element_from_json(io::Json::array({"zz"}), a), ValidationError);
    CHECK_THROWS_AS(io::element_from_json(io::Json::array({7}), a.atom_count()), ValidationError);
}

TEST_CASE("hypernetworks and equations round trip")
{
    const auto h = enumerate_hypernetworks(hh_algebra(3, 1, 3), 3, 3, 1);
    const auto back = io::hypernetworks_from_json(io::parse(io::dump(io::to_json(h))));
    CHECK(back.networks == h.networks);
    CHECK(back.nodes == h.nodes);
    CHECK(back.wide == h.wide);

    const auto sigma = instantiate_schema(ca_schema(), 3);
    const auto eqs = io::equations_from_json(io::to_json(sigma, 3));
    REQUIRE(eqs.size() == sigma.size());
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        CHECK(eqs[k].name == sigma[k].name);
        CHECK(to_string(eqs[k].equation) == to_string(sigma[k].equation));
    }
}

TEST_CASE("files, digests and seeds")
{
    const auto path = scratch() / "frame.json";
    const auto j = io::to_json(oracle::set_frame(2, 2));
    io::save(path, j);
    CHECK(io::load(path) == j);
    CHECK(io::read_file(path) == io::dump(j));
    CHECK(io::read_file(path).back() == '\n');
    CHECK_THROWS(io::load(scratch() / "missing.json"));

    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    ::setenv("CYLKIT_SEED", "1234", 1);
    CHECK(io::resolve_seed(7) == 1234);
    ::unsetenv("CYLKIT_SEED");
    CHECK(io::resolve_seed(7) == 7);
}

TEST_CASE("reports")
{
    io::Report r;
    r.command = {"check", "axioms"};
    r.verdict("C2", true);
    r.verdict("C3", false, {{"witness", "a0"}});
    CHECK_FALSE(r.all_hold());
    const auto j = r.to_json(false);
    CHECK(j.at("verdicts").size() == 2);
    CHECK_FALSE(j.contains("timings"));
    CHECK(r.to_json(true).contains("timings"));
}
