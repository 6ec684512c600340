#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " LGQ_CLI " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("malformed expression reports the position") {
    Run r = run("star mul 'p[1][1' 'a[1][1][2]'");
    CHECK(r.code == 2);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["position"].get<int>() == 6);
    CHECK(run("star mul '(% p[1][1] 1)' '1'").code == 2);
}

TEST_CASE("unknown suite and missing arguments are usage errors") {
    CHECK(run("suite nope").code == 2);
    CHECK(run("reduce star 'p[1][1]'").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("reports are deterministic") {
    Run a = run("hypotheses check --case all --samples 10 --seed 4");
    Run b = run("hypotheses check --case all --samples 10 --seed 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Run c = run("suite hpt --samples 8 --seed 2 -K 2");
    CHECK(c.code == 0);
    CHECK(c.out == run("suite hpt --samples 8 --seed 2 -K 2").out);
}

TEST_CASE("reduce star reports result, window and certificates") {
    Run r = run("reduce star -K 2 -N 1 '(+ a[1][1][1] a[1][2][2])' '(+ (^ p[1][1] 2) (^ p[1][2] 2) (^ p[1][3] 2))'");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("result"));
    CHECK(j["window"]["K"].get<int>() == 2);
    CHECK(j["certificates"]["basis_complete"].get<bool>());
    // A non-invariant input is rejected.
    CHECK(run("reduce star -K 2 'p[1][1]' '1'").code == 2);
}

TEST_CASE("failed identities give exit code 1") { CHECK(run("suite koszul").code == 1); }

TEST_CASE("cache directory round trip") {
    auto dir = std::filesystem::temp_directory_path() / "lgq_cli_cache_test";
    std::filesystem::remove_all(dir);
    std::string env = "LGQ_CACHE_DIR=" + dir.string();
    Run a = run("ideal nf '(* p[1][2] J[1])'", env);
    REQUIRE(a.code == 0);
    CHECK(std::filesystem::exists(dir / "ideal_N1_cap6.json"));
    Run b = run("ideal nf '(* p[1][2] J[1])'", env);
    CHECK(a.out == b.out);
    // A tampered entry is ignored and rebuilt.
    {
        auto f = dir / "ideal_N1_cap6.json";
        auto j = nlohmann::json::parse(std::ifstream(f));
        j["basis"][0]["certificate"][0] = j["basis"][1]["certificate"][0];
        std::ofstream(f) << j.dump();
    }
    CHECK(run("ideal nf '(* p[1][2] J[1])'", env).out == a.out);
    std::filesystem::remove_all(dir);
}
