#include "hls/report.hpp"

#include "json.hpp"

#include <cmath>
#include <type_traits>

namespace hls {

bool within(double measured, double expected, double tolerance, Tolerance kind)
{
    if (!std::isfinite(measured)) {
        return false;
    }
    switch (kind) {
    case Tolerance::relative:
        return std::abs(measured - expected) <= tolerance * std::abs(expected);
    case Tolerance::absolute:
        return std::abs(measured - expected) <= tolerance;
    case Tolerance::at_most:
        return measured <= expected + tolerance;
    case Tolerance::at_least:
        return measured >= expected - tolerance;
    }
    return false;
}

namespace {

const char* kind_name(Tolerance kind)
{
    switch (kind) {
    case Tolerance::relative:
        return "relative";
    case Tolerance::absolute:
        return "absolute";
    case Tolerance::at_most:
        return "at_most";
    case Tolerance::at_least:
        return "at_least";
    }
    return "?";
}

nlohmann::ordered_json number(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

} // namespace

const Check& Report::check(std::string name, double measured, double expected, double tolerance, Tolerance kind)
{
    checks.push_back({std::move(name), measured, expected, tolerance, kind,
                      within(measured, expected, tolerance, kind)});
    return checks.back();
}

bool Report::pass() const
{
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

std::string Report::to_json() const
{
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["args"] = args;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) {
        std::visit([&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>) {
                params[k] = number(x);
            } else {
                params[k] = x;
            }
        }, v);
    }
    doc["parameters"] = params;
    if (seed) {
        doc["seed"] = *seed;
    }
    auto vals = nlohmann::ordered_json::object();
    for (const auto& v : values) {
        vals[v.name] = number(v.value);
    }
    doc["values"] = vals;
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json item;
        item["name"] = c.name;
        item["status"] = c.pass ? "pass" : "fail";
        item["measured"] = number(c.measured);
        item["expected"] = number(c.expected);
        item["tolerance"] = c.tolerance;
        item["tolerance_kind"] = kind_name(c.kind);
        list.push_back(item);
    }
    doc["checks"] = list;
    if (!notes.empty()) {
        doc["notes"] = notes;
    }
    if (wall_seconds) {
        doc["wall_seconds"] = *wall_seconds;
    }
    doc["status"] = pass() ? "pass" : "fail";
    return doc.dump(2) + "\n";
}

std::string format_number(double v)
{
    return nlohmann::json(v).dump();
}

} // namespace hls
