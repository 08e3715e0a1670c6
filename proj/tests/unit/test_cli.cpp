#include "cotv/boosting.hpp"
#include "cotv/class_io.hpp"
#include "cotv/families.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace cotv;

namespace {

struct CliResult
{
    int code = -1;
    std::string out;
};

CliResult cli(const std::string& args)
{
    const std::string cmd = std::string(COTV_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string dir = "/tmp/cotv_cli_test_";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("families writes canonical class files")
    {
        const auto a = cli("families --family complement --n 4 --L 2 -o " + dir + "c1.json");
        const auto b = cli("families --family complement --n 4 --L 2 -o " + dir + "c2.json");
        CHECK(a.code == 0);
        CHECK(b.code == 0);
        CHECK(slurp(dir + "c1.json") == slurp(dir + "c2.json"));
        CHECK(*load_class(dir + "c1.json") == *complement_class(4, 2));
        CHECK(cli("families --family nope").code == 2);
        CHECK(cli("families --family complement --n 1 --L 2").code == 2);
    }

    TEST_CASE("dim reports exact rationals")
    {
        save_class(*singleton_bitstring_class(3), dir + "s3.json");
        const auto r = cli("dim --class " + dir + "s3.json --kind plain");
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["value"] == "3/1");
        CHECK(j["witness_certified_value"] == "3/1");
        CHECK(j["witness_shattered"] == true);
        const auto w = cli("dim --class " + dir + "s3.json --kind wsc --gamma-s 2 --gamma-c 1/2 --no-witness");
        CHECK(w.code == 0);
        CHECK(cli("dim --class " + dir + "s3.json --kind scl --gamma-s 1 --gamma-c 2").code == 2);
        CHECK(cli("dim --class " + dir + "missing.json").code == 2);
        CHECK(cli("dim --class " + dir + "s3.json --unknown-flag").code == 2);
    }

    TEST_CASE("malformed class files exit 2")
    {
        std::ofstream(dir + "bad.json") << "{ \"sigma\": [\"0\",";
        CHECK(cli("dim --class " + dir + "bad.json").code == 2);
    }

    TEST_CASE("run replays a learner")
    {
        save_class(*complement_class(4, 2), dir + "c4.json");
        const auto r = cli("run --class " + dir + "c4.json --learner sound-conservative --target 2");
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["transcript"]["totals"]["soundness"] == 0);
        CHECK(cli("run --class " + dir + "c4.json --learner sc-soa --target 9").code == 2);
        CHECK(cli("run --class " + dir + "c4.json --learner nobody").code == 2);
    }

    TEST_CASE("duel verdicts")
    {
        save_class(*singleton_bitstring_class(4), dir + "s4.json");
        const auto r = cli("duel --class " + dir + "s4.json --learner majority --adversary prop31");
        REQUIRE(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["verdict"] == "tight");
        save_class(*complement_class(4, 2), dir + "c4.json");
        const auto s = cli("duel --class " + dir + "c4.json --learner sound-conservative --adversary prop32");
        CHECK(s.code == 0);
        CHECK(cli("duel --class " + dir + "c4.json --learner majority --adversary prop32").code == 2);
    }

    TEST_CASE("boost is reproducible across thread counts")
    {
        REQUIRE(cli("boost --write-example " + dir + "scenario.json").code == 0);
        const auto a = cli("boost --scenario " + dir + "scenario.json --runs 3 --eval-trials 100 --threads 1");
        const auto b = cli("boost --scenario " + dir + "scenario.json --runs 3 --eval-trials 100 --threads 3");
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const auto j = nlohmann::json::parse(a.out);
        CHECK(j["runs"].size() == 3);
        CHECK(cli("boost verify-alpha --scenario " + dir + "scenario.json").code == 0);
    }

    TEST_CASE("a failed alpha certificate exits 3")
    {
        auto j = scenario_to_json(standard_boost_scenario());
        j["declared_good_problems"].push_back(13);
        std::ofstream(dir + "lying.json") << j.dump();
        const auto r = cli("boost verify-alpha --scenario " + dir + "lying.json");
        CHECK(r.code == 3);
        CHECK(nlohmann::json::parse(r.out)["declared_violations"].size() == 1);
    }
}
