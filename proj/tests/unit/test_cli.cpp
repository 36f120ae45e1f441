#include "hls/cli.hpp"
#include "hls/zonal.hpp"
#include "hls/zonal_io.hpp"

#include "json.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace hls;
using doctest::Approx;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hlscheck");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("constants")
{
    const Run a = run({"constants", "--dim", "2", "--lambda", "1"});
    REQUIRE(a.code == kExitPass);
    const auto doc = a.json();
    CHECK(doc["values"]["hls_sharp_constant"].get<double>() == Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(doc["status"] == "pass");

    const Run b = run({"constants", "--dim", "3", "--s", "1"});
    REQUIRE(b.code == kExitPass);
    const auto d2 = b.json();
    CHECK(d2["values"]["sobolev_sharp_constant"].get<double>() == Approx(5.4782).epsilon(1e-4));
    CHECK(d2["checks"].size() == 2);

    CHECK(run({"constants", "--dim", "3", "--lambda", "3"}).code == kExitUsage);
    CHECK(run({"constants", "--dim", "3", "--lambda", "1", "--s", "1"}).code == kExitUsage);
    CHECK(run({"constants"}).code == kExitUsage);
}

TEST_CASE("spectrum")
{
    const Run a = run({"spectrum", "--dim", "3", "--alpha", "0.25", "--lmax", "4"});
    REQUIRE(a.code == kExitPass);
    std::istringstream lines(a.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "l,E,E_tilde,key_margin");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
    }
    CHECK(rows == 5);
    const std::string path = temp_path("hls_cli_spectrum.csv");
    REQUIRE(run({"spectrum", "--dim", "3", "--alpha", "0.25", "--lmax", "4", "--out", path}).code == kExitPass);
    CHECK(slurp(path) == a.out);
    std::filesystem::remove(path);
    CHECK(run({"spectrum", "--dim", "2", "--alpha", "1"}).code == kExitUsage);
}

TEST_CASE("verify suites")
{
    CHECK(run({"verify", "chordal"}).code == kExitPass);
    const Run fh = run({"verify", "funk-hecke", "--dim", "3", "--alpha", "0.25", "--lmax", "10"});
    CHECK(fh.code == kExitPass);
    CHECK(fh.json()["checks"][0]["tolerance"].get<double>() == 1e-8);
    CHECK(run({"verify", "key", "--lmax", "200"}).code == kExitPass);
    CHECK(run({"verify", "no-such-suite"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
}

TEST_CASE("optimize")
{
    const Run a = run({"optimize", "--dim", "2", "--lambda", "1"});
    REQUIRE(a.code == kExitPass);
    const auto doc = a.json();
    CHECK(doc["values"]["final_quotient"].get<double>() == Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-6));

    // seed independence of the limit, and determinism for a fixed seed
    const Run b = run({"optimize", "--dim", "2", "--lambda", "1", "--seed", "7"});
    REQUIRE(b.code == kExitPass);
    CHECK(b.json()["values"]["final_quotient"].get<double>() ==
          Approx(doc["values"]["final_quotient"].get<double>()).epsilon(1e-6));
    CHECK(run({"optimize", "--dim", "2", "--lambda", "1", "--seed", "7"}).out == b.out);

    const Run zero = run({"optimize", "--dim", "2", "--lambda", "1", "--iters", "0"});
    CHECK(zero.code == kExitPass);
    const auto zd = zero.json();
    CHECK(zd["values"].contains("initial_quotient"));
    CHECK_FALSE(zd["values"].contains("final_quotient"));

    const std::string trace = temp_path("hls_cli_trace.csv");
    const std::string output = temp_path("hls_cli_out.json");
    REQUIRE(run({"optimize", "--dim", "3", "--lambda", "2", "--trace", trace, "--output", output}).code == kExitPass);
    CHECK(slurp(trace).rfind("iter,quotient,sup_change,residual\n", 0) == 0);
    CHECK(read_zonal_file(output).dim() == 3);
    std::filesystem::remove(trace);
    std::filesystem::remove(output);
}

TEST_CASE("RUN_SEED is read when --seed is absent")
{
    ::setenv("RUN_SEED", "7", 1);
    const Run env = run({"optimize", "--dim", "2", "--lambda", "1"});
    ::unsetenv("RUN_SEED");
    const Run flag = run({"optimize", "--dim", "2", "--lambda", "1", "--seed", "7"});
    auto a = env.json();
    auto b = flag.json();
    CHECK(a["seed"] == 7);
    a.erase("args");
    b.erase("args");
    CHECK(a == b);
}

TEST_CASE("timing is opt-in")
{
    const Run plain = run({"verify", "chordal"});
    CHECK_FALSE(plain.json().contains("wall_seconds"));
    const Run timed = run({"--timing", "verify", "chordal"});
    CHECK(timed.json().contains("wall_seconds"));
}

TEST_CASE("sample and normalize")
{
    const std::string path = temp_path("hls_cli_sample.json");
    const std::string normalized = temp_path("hls_cli_normalized.json");
    REQUIRE(run({"sample", "--family", "hls-optimizer", "--dim", "2", "--lambda", "1", "--r", "0.5", "--out", path})
                .code == kExitPass);
    const Run a = run({"normalize", "--input", path, "--p", "1.3333333333333333", "--output", normalized});
    REQUIRE(a.code == kExitPass);
    const auto doc = a.json();
    CHECK(doc["delta"].get<double>() == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-8));
    CHECK(std::abs(doc["xi_sign"].get<int>()) == 1);
    CHECK(doc["tolerance"].get<double>() == 1e-10);
    CHECK(doc["status"] == "pass");

    const Run again = run({"normalize", "--input", normalized, "--p", "1.3333333333333333"});
    REQUIRE(again.code == kExitPass);
    CHECK(again.json()["delta"].get<double>() == Approx(1.0).epsilon(1e-8));

    CHECK(run({"normalize", "--input", temp_path("hls_cli_missing.json"), "--p", "2"}).code == kExitUsage);
    std::filesystem::remove(path);
    std::filesystem::remove(normalized);

    const Run poly = run({"sample", "--family", "polynomial", "--dim", "3", "--degree", "4", "--nodes", "32"});
    REQUIRE(poly.code == kExitPass);
    CHECK(zonal_from_json(poly.out).size() == 32);
    CHECK(run({"sample", "--family", "nonsense", "--dim", "3"}).code == kExitUsage);
}
