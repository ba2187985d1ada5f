#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "biext/cli.hpp"
#include "biext/motive_file.hpp"

#include <fstream>
#include <sstream>

using namespace biext;
using nlohmann::json;

namespace {

const std::string kData = BIEXT_TEST_DATA;
const std::string kCm = kData + "/cm.json";

CommandResult run(std::vector<std::string> args) { return run_command(args); }

json run_json(std::vector<std::string> args, int expected = 0) {
    const CommandResult r = run_command(args);
    REQUIRE_MESSAGE(r.exit_code == expected, r.error);
    return json::parse(r.output);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = std::string("/tmp/biext_test_") + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("hom reports the CM bilinear forms") {
    const json r = run_json({"hom", kCm, "--sources", "E,E", "--target", "Z1", "--split-sym"});
    CHECK(r["rank"] == 2);
    CHECK(r["basis"] == json::parse("[[[1,0,0,1]],[[0,1,-1,0]]]"));
    CHECK(r["symmetric_rank"] == 1);
    CHECK(r["antisymmetric_rank"] == 1);
    CHECK(r["field"]["d"] == 1);
    CHECK(r["input_sha256"] == sha256_hex(slurp(kCm)));
}

TEST_CASE("validate names the Hodge symmetry violation") {
    const CommandResult r = run({"validate", kData + "/degenerate.json"});
    CHECK(r.exit_code == 2);
    const json doc = json::parse(r.output);
    CHECK(doc["ok"] == false);
    CHECK(doc["motives"]["E"]["issues"][0]["invariant"] == "hodge-symmetry");
    CHECK(doc["motives"]["Z1"]["ok"] == true);
    CHECK(run({"validate", kCm}).exit_code == 0);
}

TEST_CASE("builtin suites pass") {
    const json r = run_json({"check", "--builtin", "--suite", "all", "--seed", "7"});
    CHECK(r["passed"] == true);
    CHECK(r["suites"].size() == 13);
}

TEST_CASE("check on a file") {
    const json r = run_json({"check", kCm, "--suite", "copies,dual", "--seed", "3"});
    CHECK(r["passed"] == true);
    CHECK(run({"check", kCm, "--builtin"}).exit_code == 2);
    CHECK(run({"check", "--builtin", "--suite", "nope"}).exit_code == 2);
}

TEST_CASE("reports are deterministic") {
    const std::vector<std::string> args{"hom", kCm, "--sources", "M,E", "--target", "M"};
    CHECK(run(args).output == run(args).output);
    const std::vector<std::string> chk{"check", "--builtin", "--suite", "oracle,thmotimes", "--seed", "11"};
    CHECK(run(chk).output == run(chk).output);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({"hom", kCm, "--sources", "E,X", "--target", "Z1"}).exit_code == 2);
    CHECK(run({"hom", kCm, "--sources", "E,,E", "--target", "Z1"}).exit_code == 2);
    CHECK(run({"hom", "/nonexistent.json", "--sources", "E", "--target", "Z1"}).exit_code == 2);
    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);
    CHECK(run({"--help"}).exit_code == 0);
    const std::string bad_scalar = temp_file("bad_scalar.json", R"({"field":{"d":1},"motives":{"E":{"elliptic":"1+2w"}}})");
    CHECK(run({"validate", bad_scalar}).exit_code == 2);
    const std::string dup = temp_file("dup.json", R"({"field":{"d":1},"motives":{"E":{"tate":1},"E":{"tate":0}}})");
    CHECK(run({"validate", dup}).exit_code == 2);
    const std::string bad_d = temp_file("bad_d.json", R"({"field":{"d":4},"motives":{}})");
    CHECK(run({"validate", bad_d}).exit_code == 2);
    const std::string cycle = temp_file("cycle.json", R"({"field":{"d":1},"motives":{"A":{"dual":"B"},"B":{"sum":["A"]}}})");
    CHECK(run({"validate", cycle}).exit_code == 2);
    CHECK(run({"modn", kCm, "--map", "J", "--n", "1"}).exit_code == 2);
    CHECK(run({"curvature", kCm, "--map", "polarization"}).exit_code == 2);
    CHECK(run({"pairing", kCm, "--motive", "E", "--self-dual", "J"}).exit_code == 2);
    CHECK(run({"grprofile", kCm, "--expr", "E*"}).exit_code == 2);
    CHECK(run({"grprofile", kCm, "--expr", "E/W-0"}).exit_code == 2);
}

TEST_CASE("non-morphism fixtures are reported") {
    const std::string text =
        R"({"field":{"d":1},"motives":{"E":{"elliptic":"w"},"Z1":{"tate":1}},
            "maps":{"bad":{"sources":["E","E"],"target":"Z1","coefficients":[[1,0,0,0]]},
                    "shape":{"sources":["E"],"target":"Z1","coefficients":[[1,0,0]]}}})";
    const std::string path = temp_file("bad_map.json", text);
    const CommandResult r = run({"validate", path});
    CHECK(r.exit_code == 2);
    const json doc = json::parse(r.output);
    CHECK(doc["maps"]["bad"]["issues"][0]["invariant"] == "not-a-morphism");
    CHECK(doc["maps"]["shape"]["issues"][0]["invariant"] == "build");
    CHECK(run({"modn", path, "--map", "bad", "--n", "3"}).exit_code == 2);
}

TEST_CASE("pairing, duals and self-dualities") {
    const json p = run_json({"pairing", kCm, "--motive", "E", "--self-dual", "polarization"});
    CHECK(p["unimodular"] == true);
    CHECK(p["self_duality"]["skew"] == true);
    CHECK(p["self_duality"]["nondegenerate"] == true);
    CHECK(p["self_duality"]["pulled_back"] == json::parse("[[0,1,-1,0]]"));
    const json k = run_json({"pairing", kCm, "--motive", "K"});
    CHECK(k["unimodular"] == true);
    const json d = run_json({"dual", kCm, "--motive", "K"});
    CHECK(d["profile"] == json::parse(R"({"0":1,"-2":1})"));
    CHECK(d["double_dual_is_identity"] == true);
}

TEST_CASE("mod n and curvature reports") {
    const json m = run_json({"modn", kCm, "--map", "J", "--n", "5"});
    CHECK(m["reduced"] == json::parse("[[0,1,4,0]]"));
    CHECK(m["commutes"] == true);
    const json c = run_json({"curvature", kCm, "--map", "J"});
    CHECK(c["upsilon"] == json::parse(R"([["0","-1","1","0"]])"));
    CHECK(c["identity_holds"] == true);
    const json s = run_json({"curvature", kCm, "--map", "Jsplit"});
    CHECK(s["upsilon"] == c["upsilon"]);
    CHECK_FALSE(s["gamma1"] == c["gamma1"]);
}

TEST_CASE("graded profiles of expressions") {
    auto profile = [](const std::string& e) { return run_json({"grprofile", kCm, "--expr", e})["profile"]; };
    CHECK(profile("(K*K*K)/W-3") == json::parse(R"({"0":1,"-2":3})"));
    CHECK(profile("copies(E, 3)") == json::parse(R"({"-1":6})"));
    CHECK(profile("copies(E, 0)") == json::object());
    CHECK(profile("dual(K)") == json::parse(R"({"0":1,"-2":1})"));
    CHECK(profile("E*E") == json::parse(R"({"-2":4})"));
    CHECK(profile("E + Z1") == json::parse(R"({"-1":2,"-2":1})"));
    CHECK(profile("Z0 * (E + Z1)") == profile("E + Z1"));
}

TEST_CASE("decompose") {
    const json r = run_json({"decompose", kCm, "--sources", "L,E,E", "--target", "Z1"});
    CHECK(r["lhs_rank"] == 2);
    CHECK(r["rhs_rank"] == 2);
    CHECK(r["terms"].size() == 3);
}

TEST_CASE("motive files round-trip") {
    const MotiveFile f = load_motive_file(kCm);
    const std::string once = serialize(f);
    const MotiveFile g = parse_motive_file(once);
    CHECK(g == f);
    CHECK(serialize(g) == once);
    CHECK(f.motive("Ed") == cartier_dual(f.motive("E")));
    CHECK(f.motive("S").rank() == 3);
    CHECK(f.maps.at("Jsplit").phi1.has_value());
    const MotiveFile b = parse_motive_file(builtin_motive_file());
    CHECK(parse_motive_file(serialize(b)) == b);
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
