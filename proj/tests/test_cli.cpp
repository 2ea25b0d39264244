#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "odekit/cli.hpp"
#include "odekit/corpus.hpp"
#include "odekit/rational.hpp"

using namespace odekit;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string &name, const std::string &content) {
    const auto path = std::filesystem::temp_directory_path() / ("odekit-test-" + name);
    std::ofstream(path) << content;
    return path;
}

bool lowest_terms(const json &v) { return v.is_string() && Rational::parse(v.get<std::string>()).to_string() == v; }

std::string join(const json &arr) {
    std::string s;
    for (const auto &v : arr) s += (s.empty() ? "" : ", ") + v.get<std::string>();
    return s;
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("painleve json for the cubic Painleve-Ince equation") {
    const json j = run_json({"painleve", "y'' + 3*y*y' + y^3"});
    CHECK(j["overall"] == "passes");
    REQUIRE(j["branches"].size() == 2);
    CHECK(j["branches"][0]["p"] == "-1");
    CHECK(j["branches"][0]["a0"] == "1");
    CHECK(j["branches"][0]["resonances"] == json::array({"-1", "1"}));
    CHECK(j["branches"][0]["direction"] == "right");
    CHECK(j["branches"][1]["p"] == "-1");
    CHECK(j["branches"][1]["a0"] == "2");
    CHECK(j["branches"][1]["resonances"] == json::array({"-1", "-2"}));
    CHECK(j["branches"][1]["direction"] == "left");
}

TEST_CASE("symmetries and classify examples") {
    CHECK(run_json({"symmetries", "2*y'*y''' - 3*y''^2", "--degree", "2"})["dimension"] == 6);
    const Run r = run({"classify", "0,1", "0,y"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("Type IV\n", 0) == 0);
    CHECK(run_json({"classify", "0,1", "0,y"})["type"] == "IV");
    CHECK(run_json({"bracket", "1,0", "x^2,0"})["result"] == json({{"xi", "2*x"}, {"eta", "0"}}));
    const json p = run_json({"prolong", "x", "0", "--order", "2"});
    CHECK(p["coefficients"][1]["eta"] == "-2*y''");
}

TEST_CASE("json output round trips") {
    const std::vector<std::vector<std::string>> commands{
        {"painleve", "y'' + 3*y*y' + y^3"},
        {"painleve", "u^2*u'*u''' + u*u'^2*u'' - u^2*u''^2 - u'^4"},
        {"painleve", "u^2*u'*u''' + (u*u'^2 - u^2)*u'' - 4*u'^4"},
        {"symmetries", "y'' + 3*y*y' + y^3", "--degree", "3"},
        {"prolong", "x^2", "x*y", "--order", "3"},
        {"classify", "0,1", "x,y"},
        {"corpus", "run", ODEKIT_CORPUS_PATH},
    };
    for (auto args : commands) {
        args.insert(args.begin(), {"--format", "json"});
        const Run r = run(args);
        REQUIRE(r.code == 0);
        const json j = json::parse(r.out);
        CHECK(j.dump(2) + "\n" == r.out);
        CHECK(json::parse(j.dump()) == j);
    }

    const json j = run_json({"painleve", "u^2*u'*u''' + u*u'^2*u'' - u^2*u''^2 - u'^4"});
    for (const auto &b : j["branches"]) {
        CHECK(lowest_terms(b["p"]));
        CHECK(lowest_terms(b["step"]));
        for (const auto &s : b["resonances"]) CHECK(lowest_terms(s));
    }
}

TEST_CASE("text and json agree") {
    for (const char *eq : {"y'' + 3*y*y' + y^3", "w*w'' - 2*w'^2", "u^2*u'*u''' + u*u'^2*u'' - u^2*u''^2 - u'^4",
                           "y'' + y^3", "y'' + 3*y*y' + y^3 + y^2"}) {
        const json j = run_json({"painleve", eq});
        const std::string text = run({"painleve", eq}).out;
        CAPTURE(eq);
        for (std::size_t i = 0; i < j["branches"].size(); ++i) {
            const json &b = j["branches"][i];
            CHECK(contains(text, "branch " + std::to_string(i + 1) + ": p = " + b["p"].get<std::string>() +
                                     ", a0 = " + b["a0"].get<std::string>()));
            if (!b["resonances"].empty()) CHECK(contains(text, "resonances: " + join(b["resonances"]) + "\n"));
            if (!b["series"].is_null()) {
                const json &c = b["series"]["coefficients"];
                for (std::size_t k = 1; k < c.size(); ++k)
                    CHECK(contains(text, "a" + std::to_string(k) + " = " + c[k].get<std::string>()));
            }
        }
        CHECK(contains(text, "overall: " + j["overall"].get<std::string>()));
    }

    const json s = run_json({"symmetries", "y'' + 3*y*y' + y^3", "--degree", "5"});
    const std::string text = run({"symmetries", "y'' + 3*y*y' + y^3", "--degree", "5"}).out;
    CHECK(contains(text, "dimension: " + std::to_string(s["dimension"].get<int>())));
    for (const auto &g : s["generators"])
        CHECK(contains(text, "xi = " + g["xi"].get<std::string>() + ", eta = " + g["eta"].get<std::string>()));
}

TEST_CASE("exit codes") {
    CHECK(run({"painleve", "y'' + "}).code == 2);
    CHECK(run({"painleve", "y'' + x*y"}).code == 2);
    CHECK(run({"symmetries", "y'' + exp(y)"}).code == 2);
    CHECK(run({"--seed-order", "lex", "painleve", "y''"}).code == 2);
    CHECK(run({"--format", "xml", "painleve", "y''"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"classify", "1,0", "2,0"}).code == 1);
    const Run bad = run({"painleve", "y'' + "});
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
    CHECK(run({"painleve", "y''"}).code == 0);
}

TEST_CASE("corpus runs") {
    SUBCASE("shipped corpus passes") {
        const Run r = run({"corpus", "run", ODEKIT_CORPUS_PATH});
        CHECK(r.code == 0);
        CHECK(contains(r.out, " passed, 0 failed\n"));
    }
    SUBCASE("wrong dimension is a mismatch") {
        const auto path = temp_file("wrong.corpus", "[entry ks]\nequation = 2*y'*y''' - 3*y''^2\n"
                                                    "expect.symmetry_degree = 2\nexpect.symmetry_dim = 5\n");
        const Run r = run({"corpus", "run", path.string()});
        CHECK(r.code == 1);
        CHECK(contains(r.out, "FAIL ks"));
        CHECK(contains(r.out, "0 passed, 1 failed"));
    }
    SUBCASE("empty file") {
        const auto path = temp_file("empty.corpus", "");
        const Run r = run({"corpus", "run", path.string()});
        CHECK(r.code == 0);
        CHECK(r.out == "0 passed, 0 failed\n");
    }
    SUBCASE("malformed file reports the line") {
        const auto path = temp_file("bad.corpus", "# comment\n[entry a]\nequation = y''\nexpect.nonsense = 3\n");
        const Run r = run({"corpus", "run", path.string()});
        CHECK(r.code == 2);
        CHECK(contains(r.err, "line 4"));
    }
    SUBCASE("missing file") { CHECK(run({"corpus", "run", "/nonexistent/odekit.corpus"}).code == 2); }
}

TEST_CASE("ODEKIT_DEGREE overrides the default degree") {
    ::setenv("ODEKIT_DEGREE", "1", 1);
    const json j = run_json({"symmetries", "y'' + 3*y*y' + y^3"});
    ::unsetenv("ODEKIT_DEGREE");
    CHECK(j["ansatz"]["max_degree_x"] == 1);
    CHECK(j["dimension"] == 2);
    CHECK(run_json({"symmetries", "y''"})["ansatz"]["max_degree_x"] == 5);
    CHECK(run_json({"symmetries", "y''", "--degree", "2"})["ansatz"]["max_degree_x"] == 2);
}

TEST_CASE("corpus parser") {
    std::istringstream good("# c\n[entry a]\nequation = y'' + k*y\nparam k = 3/6\n"
                            "expect.branch = p=-1, a0=arbitrary, res={-1,0}, dir=right\n"
                            "expect.series = 1: a2 = 5/6*a2^2/a0\nnotes = free text\n\n[entry b]\nequation = y''\n");
    const auto entries = parse_corpus(good);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].id == "a");
    CHECK(entries[0].params.at("k") == Rational(BigInt(1), BigInt(2)));
    REQUIRE(entries[0].branches.size() == 1);
    CHECK(entries[0].branches[0].a0 == "arbitrary");
    CHECK(entries[0].branches[0].resonances == std::vector<std::string>{"-1", "0"});
    REQUIRE(entries[0].series.size() == 1);
    CHECK(entries[0].series[0].index == 2);
    CHECK(entries[1].line == 9);

    auto error_line = [](const std::string &text) {
        std::istringstream in(text);
        try {
            parse_corpus(in);
        } catch (const CorpusError &e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(error_line("[entry a]\nequation = y''\n[entry a]\nequation = y''\n") == 3);
    CHECK(error_line("equation = y''\n") == 1);
    CHECK(error_line("[entry a]\nexpect.symmetry_dim = 2\n") == 1);
    CHECK(error_line("[entry a]\nequation = y''\nexpect.symmetry_dim = two\n") == 3);
}
