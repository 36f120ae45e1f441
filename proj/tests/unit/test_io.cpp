#include "hls/errors.hpp"
#include "hls/random.hpp"
#include "hls/report.hpp"
#include "hls/zonal.hpp"
#include "hls/zonal_io.hpp"

#include "json.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

using namespace hls;
using doctest::Approx;

TEST_CASE("zonal JSON round trip is lossless")
{
    Rng rng(3);
    for (int n : {1, 2, 4}) {
        const ZonalFn f = random_nonnegative_zonal(n, rng, n, 64);
        const std::string text = zonal_to_json(f);
        const ZonalFn g = zonal_from_json(text);
        CHECK(g.dim() == n);
        REQUIRE(g.size() == f.size());
        for (int k = 0; k < f.size(); ++k) {
            CHECK(g.values()[k] == f.values()[k]);
        }
        CHECK(zonal_to_json(g) == text);
        const auto doc = nlohmann::json::parse(text);
        CHECK(doc.at("coeffs").size() == static_cast<std::size_t>(f.basis()->degree() + 1));
        CHECK_FALSE(nlohmann::json::parse(zonal_to_json(f, false)).contains("coeffs"));
    }
}

TEST_CASE("zonal JSON validation")
{
    const ZonalFn f = ZonalFn::sample(2, [](double t) { return 1.0 + t; }, 16);
    auto doc = nlohmann::json::parse(zonal_to_json(f));
    CHECK_THROWS_AS(zonal_from_json("{not json"), UsageError);
    CHECK_THROWS_AS(zonal_from_json("{\"dim\": 2}"), UsageError);

    auto short_values = doc;
    short_values["values"].erase(short_values["values"].begin());
    CHECK_THROWS_AS(zonal_from_json(short_values.dump()), UsageError);

    auto moved = doc;
    moved["nodes"][3] = moved["nodes"][3].get<double>() + 1e-9;
    CHECK_THROWS_AS(zonal_from_json(moved.dump()), UsageError);

    auto wrong_dim = doc;
    wrong_dim["dim"] = 3;
    CHECK_THROWS_AS(zonal_from_json(wrong_dim.dump()), UsageError);

    // stale coefficients are ignored
    auto stale = doc;
    stale["coeffs"][0] = 1234.0;
    CHECK(zonal_from_json(stale.dump()).coeffs()[0] == Approx(f.coeffs()[0]).epsilon(1e-15));
}

TEST_CASE("zonal files")
{
    const auto path = std::filesystem::temp_directory_path() / "hls_test_io_zonal.json";
    const ZonalFn f = ZonalFn::sample(3, [](double t) { return std::exp(t); }, 32);
    write_zonal_file(path.string(), f);
    const ZonalFn g = read_zonal_file(path.string());
    CHECK(g.values() == f.values());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_zonal_file(path.string()), UsageError);
}

TEST_CASE("report tolerances and JSON")
{
    CHECK(within(1.0 + 1e-13, 1.0, 1e-12, Tolerance::relative));
    CHECK_FALSE(within(1.0 + 1e-11, 1.0, 1e-12, Tolerance::relative));
    CHECK(within(1e-13, 0.0, 1e-12, Tolerance::absolute));
    CHECK(within(-5.0, 0.0, 1e-12, Tolerance::at_most));
    CHECK_FALSE(within(1e-11, 0.0, 1e-12, Tolerance::at_most));
    CHECK(within(3.0, 0.0, 1e-12, Tolerance::at_least));
    CHECK_FALSE(within(std::nan(""), 0.0, 1.0, Tolerance::absolute));

    Report r;
    r.command = "demo";
    r.parameter("dim", 3);
    r.parameter("lambda", 0.1);
    r.parameter("start", "random");
    r.value("x", 0.1);
    r.value("bad", std::numeric_limits<double>::infinity());
    r.check("ok", 1.0, 1.0, 1e-12);
    const auto doc = nlohmann::json::parse(r.to_json());
    CHECK(doc["status"] == "pass");
    CHECK(doc["parameters"]["dim"] == 3);
    CHECK(doc["parameters"]["lambda"].get<double>() == 0.1);
    CHECK(doc["parameters"]["start"] == "random");
    CHECK(doc["values"]["bad"].is_string());
    CHECK(doc["checks"][0]["tolerance"].get<double>() == 1e-12);
    CHECK(doc["checks"][0]["tolerance_kind"] == "relative");
    CHECK_FALSE(doc.contains("wall_seconds"));
    r.check("broken", 2.0, 1.0, 1e-12);
    CHECK_FALSE(r.pass());
    CHECK(nlohmann::json::parse(r.to_json())["status"] == "fail");
}

TEST_CASE("numbers round trip through the shortest representation")
{
    for (double v : {0.1, 1.0 / 3.0, 2.0 * std::sqrt(3.14159), 1e-300, 123456789.123}) {
        CHECK(std::stod(format_number(v)) == v);
    }
}
