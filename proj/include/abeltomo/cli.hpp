#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abeltomo::cli {

enum ExitCode : int {
    kSuccess = 0,
    kPropertyFailure = 1,
    kInvalidInput = 2,
    kUnsupportedRegime = 3,
};

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> in;
    std::optional<std::string> state;
    std::string out = ".";
    std::optional<double> tol;
    std::optional<int> grid;
    double theta = 0;
    double phi = 0;
    int order = 0;
    int M = 16;
    int ensemble = 100;
    double t_max = 16;
    bool inject_fault = false;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Diagnostics go to `err`, a one-line summary to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace abeltomo::cli
