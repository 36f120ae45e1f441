#pragma once

// Named verification suites shared by `hlscheck verify` and the tests.

#include "hls/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hls {

struct SuiteOptions {
    std::optional<int> dim;
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::optional<int> lmax;
    std::optional<int> samples;
    std::uint64_t seed = 0;
};

const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite name or out-of-range options.
Report run_suite(const std::string& name, const SuiteOptions& options);

} // namespace hls
