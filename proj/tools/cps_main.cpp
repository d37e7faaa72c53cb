#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cps/builtins.hpp"
#include "cps/commands.hpp"

int main(int argc, char** argv) {
  using namespace cps;
  CLI::App app{"Complexity and acceptance-domain tools for cut and project sets"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string builtin, scheme_path, radii, search_radius, nonsingular_radius, format = "text", out_path;

  std::string names;
  for (auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "Check the standing assumptions on a scheme"},
      {"exponents", "Stabilizer ranks, flags and the complexity exponents"},
      {"count", "Empirical p(r), #C(r) and #C'(r) series"},
      {"conditions", "Almost canonical, quasicanonical and Boolean checks"},
      {"refinement-demo", "Search for a failure of A(R) refining C(c)"},
      {"export", "Write the scheme as JSON"}};
  for (auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto* b = sub->add_option("--builtin", builtin, "Builtin scheme: " + names);
    auto* f = sub->add_option("--scheme", scheme_path, "Scheme JSON file");
    b->excludes(f);
    sub->add_flag("--no-shift", cfg.no_shift, "Drop the window shift");
    sub->add_option("--radii", radii, "Comma separated radii, positive and increasing");
    sub->add_option("--search-radius", search_radius, "Coefficient and translate bound for condition searches")
        ->default_str("4");
    sub->add_option("--nonsingular-radius", nonsingular_radius, "Radius of the nonsingularity check")
        ->default_str("20");
    sub->add_option("--scan-multiplier", cfg.scan_multiplier,
                    "Brute-force patch count over a scan of this many tile scales (0 = off)")
        ->default_val(0);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--precision", cfg.precision_bits, "Bits of precision for rendered floats")->default_val(24);
    sub->add_option("--out", out_path, "Write the report to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_io;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!builtin.empty()) cfg.builtin = builtin;
  if (!scheme_path.empty()) cfg.scheme_path = scheme_path;
  cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
  try {
    if (!radii.empty()) cfg.radii = parse_radii(radii);
    if (!search_radius.empty()) cfg.search_radius = parse_rational(search_radius);
    if (!nonsingular_radius.empty()) cfg.nonsingular_radius = parse_rational(nonsingular_radius);
    if (cfg.search_radius <= 0 || cfg.nonsingular_radius <= 0) throw std::invalid_argument("radii must be positive");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }

  if (out_path.empty()) return run_command(cfg, std::cout, std::cerr);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return exit_io;
  }
  return run_command(cfg, out, std::cerr);
}
