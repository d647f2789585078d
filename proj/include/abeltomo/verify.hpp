#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace abeltomo {

struct VerifyOptions {
    std::vector<int> dimensions{3, 5, 7};
    int ensemble = 100;
    std::uint64_t seed = 1;
    /// Replaces every property's tolerance when set.
    std::optional<double> tolerance;
    /// Perturbs one cocycle phase in the projective-identity check.
    bool inject_phase_fault = false;
};

struct PropertyResult {
    std::string name;
    int ensemble = 0;
    double max_defect = 0;
    double tolerance = 0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<PropertyResult> properties;

    bool all_pass() const;
    /// Names of failing properties, comma separated.
    std::string failures() const;
    nlohmann::json to_json(const VerifyOptions& opts) const;
};

/// Runs the invariant suite: projective identity, Parseval, MUB overlaps,
/// tomogram path equivalence and stochasticity, reconstruction round trip,
/// channel characteristic-function multiplier and convolution.
VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace abeltomo
