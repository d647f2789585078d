#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "abeltomo/channel.hpp"
#include "abeltomo/continuum.hpp"

namespace abeltomo::io {

using nlohmann::json;

/// Malformed or semantically invalid input file.
struct InvalidInput : Error {
    using Error::Error;
};

/// Write-to-temp then rename; readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// %.17g: round-trips every double.
std::string format_double(double v);

json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const json& j);
json to_json(const CMatrixd& m);
json to_json(const CVectord& v);

/// Deterministic dump (2-space indent, trailing newline).
std::string dump(const json& j);

// ---- state files: { "n": int, "kind": "pure"|"mixed", "data": [...] }

struct StateFile {
    int n = 0;
    std::string kind;
    CMatrixd rho;
    std::optional<CVectord> amplitudes;
};

StateFile parse_state(const json& j);
StateFile read_state(const std::filesystem::path& path);
json state_json(const CVectord& f);
json state_json(const CMatrixd& rho);

// ---- channel files: { "n": int, "q": [[...]] } with q[a][b] at point (a, b)

WeylChannel<double> parse_channel(const json& j);
WeylChannel<double> read_channel(const std::filesystem::path& path);
json channel_json(const WeylChannel<double>& ch);

// ---- tomogram CSV: optional '#' comment lines, header "l,j0,...", rows "l,..."

std::string tomogram_csv(const Tomogram<double>& t, const std::string& comment = {});
Tomogram<double> parse_tomogram_csv(const std::string& text);
Tomogram<double> read_tomogram(const std::filesystem::path& path);

json char_json(const CharFunction<double>& F);

// ---- continuum inputs

/// { "kind": "grid", "x_min": r, "x_max": r, "data": [[re, im], ...] }
GridWavefunction<double> parse_grid_state(const json& j);
/// { "kind": "circle", "M": int, "data": [[re, im], ...] } with data[k + M] = c_k
CircleState<double> parse_circle_state(const json& j);
json circle_json(const CircleState<double>& s);

}  // namespace abeltomo::io
