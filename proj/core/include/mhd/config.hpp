#pragma once

#include <filesystem>
#include <string>

#include "mhd/experiments.hpp"

namespace mhd {

/// Parses "key = value" lines ('#' starts a comment). Canonical keys:
/// grid.L, grid.n, data.M, data.rho, data.N, data.alpha, data.T, data.eta,
/// solver.dt, solver.cadence, census.radius, mode, out_dir. Lengths accept
/// multiples of pi ("8pi", "8*pi"). Absent keys keep their defaults.
/// Throws ConfigError with line/column on syntax errors and unknown keys,
/// and with the violated rule on invariant failures.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Canonical text form accepted by parse_config_text.
std::string format_config(const ExperimentConfig& c);

/// Parses a real number, optionally followed by "pi" or "*pi" ("pi" alone allowed).
double parse_real(const std::string& s);

}  // namespace mhd
