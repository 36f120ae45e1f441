#pragma once

// Machine-readable verification reports.

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hls {

enum class Tolerance {
    relative, // |measured - expected| <= tol * |expected|
    absolute, // |measured - expected| <= tol
    at_most,  // measured <= expected + tol
    at_least, // measured >= expected - tol
};

struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Tolerance kind = Tolerance::relative;
    bool pass = false;
};

bool within(double measured, double expected, double tolerance, Tolerance kind);

struct Value {
    std::string name;
    double value = 0.0;
};

struct Report {
    std::string command;
    std::vector<std::string> args;
    using Param = std::variant<std::string, long long, double>;
    std::vector<std::pair<std::string, Param>> parameters;
    std::vector<Value> values;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::optional<unsigned long long> seed;
    std::optional<double> wall_seconds;

    const Check& check(std::string name, double measured, double expected, double tolerance,
                       Tolerance kind = Tolerance::relative);
    void value(std::string name, double v) { values.push_back({std::move(name), v}); }
    void parameter(std::string name, std::string v) { parameters.emplace_back(std::move(name), std::move(v)); }
    void parameter(std::string name, const char* v) { parameter(std::move(name), std::string(v)); }
    void parameter(std::string name, int v) { parameters.emplace_back(std::move(name), static_cast<long long>(v)); }
    void parameter(std::string name, double v) { parameters.emplace_back(std::move(name), v); }

    bool pass() const;
    std::string to_json() const;
};

/// Shortest decimal that round-trips the double.
std::string format_number(double v);

} // namespace hls
