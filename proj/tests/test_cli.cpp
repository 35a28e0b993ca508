#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "embed3/cli.hpp"

using embed3::cli::run;
using embed3::io::Json;

namespace {

struct Outcome
{
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    const std::string path = "embed3_cli_" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("cli: documented examples", "[cli]")
{
    auto torus = call({"embed-sphere", "fixture:torus", "--coeff", "z"});
    CHECK(torus.code == 0);
    CHECK(Json::parse(torus.out)["verdict"] == "embeddable");

    auto k5 = call({"embed-sphere", "fixture:k5xS1", "--coeff", "z"});
    CHECK(k5.code == 1);
    auto rep = Json::parse(k5.out);
    CHECK(rep["verdict"] == "not embeddable");
    REQUIRE(!rep["classes"].empty());
    for (const auto& c : rep["classes"]) {
        CHECK(c.contains("g"));
        CHECK(c.contains("rank_h1"));
        CHECK(c["satisfied"] == false);
    }

    auto l31 = call({"close", "fixture:lemma31", "--coeff", "z2"});
    CHECK(l31.code == 0);
    auto r = Json::parse(l31.out);
    CHECK(r["dim"] == 1);
    CHECK(r["closure"]["lagrangian"].size() == 1);
}

TEST_CASE("cli: negative verdicts carry per-class values over fields", "[cli]")
{
    for (std::string c : {"q", "z2", "zp:3", "zp:5"}) {
        auto k5 = call({"embed-sphere", "fixture:k5xS1", "--coeff", c});
        CHECK(k5.code == 1);
        for (const auto& cls : Json::parse(k5.out)["classes"]) {
            CHECK(cls["dim_h1"].get<std::size_t>() != cls["g"].get<std::size_t>());
        }
    }
}

TEST_CASE("cli: reports are byte-deterministic", "[cli]")
{
    for (std::vector<std::string> a : {std::vector<std::string>{"thicken", "fixture:k4xS1"},
                                       {"close", "fixture:surface-product:1,2", "--coeff", "q", "--integral"},
                                       {"graph", "genus", "fixture:k33"},
                                       {"graph", "product", "fixture:petersen", "--coeff", "z2"}}) {
        auto x = call(a), y = call(a);
        CHECK(x.code == 0);
        CHECK(x.out == y.out);
    }
}

TEST_CASE("cli: exit code 2 with located diagnostics", "[cli]")
{
    auto bad_json = temp_file("bad.json", "{\n  \"vertices\": [0, 1,\n");
    auto r = call({"thicken", bad_json});
    CHECK(r.code == 2);
    CHECK(r.err.find(bad_json + ":") != std::string::npos);
    CHECK(r.err.find("invalid JSON") != std::string::npos);

    auto bad_field = temp_file("field.json", "{\n  \"vertices\": [0, 1, 2],\n  \"edges\": [],\n  \"triangles\": [[0, 1, \"x\"]]\n}\n");
    r = call({"thicken", bad_field});
    CHECK(r.code == 2);
    CHECK(r.err.find(bad_field + ":4: field 'triangles'") != std::string::npos);

    auto missing = temp_file("missing.json", "{\n  \"boundary_genera\": [1],\n  \"inclusion_matrix\": [[1, 0]],\n  \"orientable\": true\n}\n");
    r = call({"close", missing, "--coeff", "q"});
    CHECK(r.code == 2);
    CHECK(r.err.find("missing required field 'h1_relations'") != std::string::npos);

    auto asym = temp_file("asym.json", "{\n  \"adjacency\": [[1], []]\n}\n");
    r = call({"graph", "genus", asym});
    CHECK(r.code == 2);
    CHECK(r.err.find(asym + ":2: field 'adjacency'") != std::string::npos);

    CHECK(call({"close", "fixture:lemma31", "--coeff", "zp:4"}).code == 2);
    CHECK(call({"close", "fixture:lemma31", "--coeff", "r"}).code == 2);
    CHECK(call({"close", "fixture:nope", "--coeff", "q"}).code == 2);
    CHECK(call({"close", "no_such_file.json", "--coeff", "q"}).code == 2);
    CHECK(call({"thicken", "fixture:lemma31"}).code == 2);
    CHECK(call({"graph", "product", "fixture:k4", "--coeff", "z"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
}

TEST_CASE("cli: precondition failures exit 2", "[cli]")
{
    // H1 has torsion, so the integral closure does not apply
    CHECK(call({"close", "fixture:lemma31", "--coeff", "z"}).code == 2);
    // kernel of rank 0 fails the half-lives condition
    auto bad = temp_file("hlhd.json", "{\n  \"h1_relations\": [],\n  \"boundary_genera\": [1],\n"
                                      "  \"inclusion_matrix\": [[1, 0], [0, 1]],\n  \"orientable\": true\n}\n");
    auto r = call({"close", bad, "--coeff", "q"});
    CHECK(r.code == 2);
    CHECK(r.err.find("half-lives") != std::string::npos);
}

TEST_CASE("cli: flags and listing", "[cli]")
{
    auto list = call({"fixtures", "list"});
    CHECK(list.code == 0);
    auto j = Json::parse(list.out);
    CHECK(j["graphs"].size() == 4);

    auto human = call({"close", "fixture:lemma31", "--coeff", "z2", "--human"});
    CHECK(human.code == 0);
    CHECK(human.out.find("verdict: closed") != std::string::npos);

    auto timed = call({"--timing", "graph", "genus", "fixture:k4"});
    CHECK(Json::parse(timed.out).contains("timing_ms"));
    CHECK(!Json::parse(call({"graph", "genus", "fixture:k4"}).out).contains("timing_ms"));
}
