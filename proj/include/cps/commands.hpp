#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cps/rational.hpp"

namespace cps {

enum class OutputFormat { text, json, csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> builtin;
  std::optional<std::string> scheme_path;
  bool no_shift = false;
  std::vector<Rational> radii;
  // Brute-force scan radius = scan_multiplier * tile scale; 0 disables it.
  double scan_multiplier = 0;
  Rational search_radius = 4;
  // validate: radius of the nonsingularity check.
  Rational nonsingular_radius = 20;
  OutputFormat format = OutputFormat::text;
  int precision_bits = 24;
};

enum ExitCode { exit_ok = 0, exit_semantic = 1, exit_io = 2 };

// Runs one command; the report goes to out, diagnostics to err.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// "1,2,5/2" -> radii; throws std::invalid_argument unless positive and increasing.
std::vector<Rational> parse_radii(const std::string& text);

}  // namespace cps
