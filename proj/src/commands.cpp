#include "cps/commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cps/builtins.hpp"
#include "cps/complexity.hpp"
#include "cps/conditions.hpp"
#include "cps/enumerate.hpp"
#include "cps/io.hpp"

namespace cps {

namespace {

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scheme load(const RunConfig& cfg) {
  if (cfg.builtin && cfg.scheme_path) throw ParseError("arguments", "give either --builtin or --scheme, not both");
  if (cfg.builtin) {
    try {
      return builtin_scheme(*cfg.builtin, !cfg.no_shift);
    } catch (const std::invalid_argument& e) {
      throw ParseError("--builtin", e.what());
    }
  }
  if (!cfg.scheme_path) throw ParseError("arguments", "no scheme: use --builtin NAME or --scheme FILE");
  Scheme s = load_scheme(*cfg.scheme_path);
  if (cfg.no_shift) s = s.with_shift(Vec(s.n()));
  return s;
}

int digits(const RunConfig& cfg) { return std::max(1, (int)std::ceil(cfg.precision_bits * 0.30103)); }

std::string approx(const FieldReal& x, int prec) {
  std::ostringstream os;
  os << std::setprecision(prec) << x.to_double();
  return os.str();
}

std::string show(const Vec& v, int prec) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  out += ") ~ (";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + approx(v[i], prec);
  return out + ")";
}

std::string show(const LatticePoint& g) {
  std::string out = "[";
  for (size_t i = 0; i < g.size(); ++i) out += (i ? " " : "") + std::to_string(g.c[i]);
  return out + "]";
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void require_valid(const Scheme& s, const Rational& radius) {
  auto rep = validate(s, radius);
  if (rep.ok()) return;
  std::string msg = "scheme '" + s.name() + "' fails validation at radius " + radius.get_str();
  for (auto& m : rep.messages) msg += "; " + m;
  if (rep.singular_witness) msg += "; singular lattice point " + show(*rep.singular_witness);
  throw SemanticError(msg);
}

int cmd_validate(const RunConfig& cfg, const Scheme& s, std::ostream& out) {
  auto rep = validate(s, cfg.nonsingular_radius);
  if (cfg.format == OutputFormat::json) {
    Json j = validation_to_json(rep);
    j["scheme"] = s.name();
    j["trust_irreducible"] = s.field()->irreducibility_trusted();
    print_json(out, j);
  } else {
    out << "scheme " << s.name() << " (k=" << s.k() << ", d=" << s.d() << ")\n";
    out << "  lattice basis invertible  " << (rep.basis_invertible ? "yes" : "no") << "\n";
    out << "  physical projection 1-1   " << (rep.phys_injective ? "yes" : "no") << "\n";
    out << "  internal projection dense " << (rep.internal_dense ? "yes" : "no") << "\n";
    out << "  window full-dimensional   " << (rep.window_ok ? "yes" : "no") << "\n";
    out << "  nonsingular to radius " << rep.nonsingular_radius.get_str() << "  " << (rep.nonsingular ? "yes" : "no")
        << "\n";
    out << "  aperiodic                 " << (rep.aperiodic ? "yes" : "no") << "\n";
    if (s.field()->irreducibility_trusted()) out << "  minimal polynomial irreducibility asserted, not checked\n";
    if (rep.singular_witness)
      out << "  singular witness " << show(*rep.singular_witness) << " on facet " << *rep.singular_facet << "\n";
    for (auto& m : rep.messages) out << "  " << m << "\n";
    out << (rep.ok() ? "valid" : "invalid") << "\n";
  }
  return rep.ok() ? exit_ok : exit_semantic;
}

int cmd_exponents(const RunConfig& cfg, const Scheme& s, std::ostream& out) {
  require_valid(s, cfg.nonsingular_radius);
  auto rep = exponent_report(s);
  if (cfg.format == OutputFormat::json) {
    print_json(out, exponents_to_json(s, rep));
    return exit_ok;
  }
  int prec = digits(cfg);
  out << "scheme " << s.name() << " (k=" << s.k() << ", d=" << s.d() << ")\n";
  out << "facet  class  rk  beta  opposite  hyperplane\n";
  for (auto& hd : rep.hyperplanes)
    out << std::setw(5) << hd.facet << std::setw(7) << hd.direction_class << std::setw(4) << hd.rk << std::setw(6)
        << hd.beta << std::setw(10) << (hd.opposite ? "yes" : "no") << "  normal " << show(hd.H.normal, prec)
        << ", offset " << approx(hd.H.offset, prec) << "\n";
  out << "flags (direction classes: alpha_f, alpha'_f)\n";
  for (auto& f : rep.flags) {
    out << "  {";
    for (size_t i = 0; i < f.members.size(); ++i) out << (i ? ", " : "") << f.members[i];
    out << "}: " << f.alpha_f << ", " << f.alpha_prime_f << "\n";
  }
  out << "alpha = " << rep.alpha << "\nalpha' = " << rep.alpha_prime << "\n";
  out << "aperiodic: " << (rep.aperiodic ? "yes" : "no") << ", bounds hold: " << (rep.bounds_hold ? "yes" : "no")
      << "\n";
  return exit_ok;
}

int cmd_count(const RunConfig& cfg, const Scheme& s, std::ostream& out) {
  if (s.n() > 3) throw SemanticError("count needs an internal dimension of at most 3");
  std::vector<Rational> radii = cfg.radii;
  if (radii.empty()) radii = {1, 2, 3, 4, 5};
  const Rational& rmax = radii.back();
  auto rep = validate(s, rmax);
  if (!rep.ok()) {
    std::string msg = "radius " + rmax.get_str() + " exceeds the validated nonsingular bound";
    if (rep.singular_witness)
      msg += ": lattice point " + show(*rep.singular_witness) + " at physical distance ~" +
             approx(FieldReal(sqrt_upper(rational_bounds(s.phys_norm_squared(*rep.singular_witness)).second)), 6) +
             " lies on the window boundary";
    for (auto& m : rep.messages) msg += "; " + m;
    throw SemanticError(msg);
  }
  ComplexityReport cr;
  for (auto& r : radii) cr.series.push_back(count_row(s, r));
  if (cfg.scan_multiplier > 0) {
    Rational scan(std::ceil(cfg.scan_multiplier * tile_scale(s)));
    auto brute = bruteforce_patch_counts(s, radii, scan);
    for (size_t i = 0; i < radii.size(); ++i) cr.series[i].bruteforce = brute[i];
  }
  if (radii.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (auto& row : cr.series) pts.push_back({row.r.get_d(), (double)row.p});
    cr.slope_fit = slope_fit(pts);
  }
  if (cfg.format == OutputFormat::csv) {
    write_series_csv(out, cr.series);
  } else if (cfg.format == OutputFormat::json) {
    Json j = series_to_json(cr);
    j["scheme"] = s.name();
    print_json(out, j);
  } else {
    bool brute = cfg.scan_multiplier > 0;
    out << "scheme " << s.name() << "\n";
    out << std::setw(8) << "r" << std::setw(12) << "p(r)" << std::setw(12) << "#C(r)" << std::setw(12) << "#C'(r)";
    if (brute) out << std::setw(12) << "brute p(r)";
    out << "\n";
    for (auto& row : cr.series) {
      out << std::setw(8) << row.r.get_str() << std::setw(12) << row.p << std::setw(12) << row.cuts << std::setw(12)
          << row.cuts_slab;
      if (brute) out << std::setw(12) << *row.bruteforce;
      out << "\n";
    }
    if (cr.slope_fit) out << "log-log slope of p(r): " << std::setprecision(digits(cfg)) << *cr.slope_fit << "\n";
  }
  return exit_ok;
}

void print_verdict(std::ostream& out, const Scheme& s, const ConditionVerdict& v, int prec) {
  out << std::left << std::setw(17) << to_string(v.kind) << std::right << to_string(v.status);
  if (!v.obstruction.empty()) out << " (" << v.obstruction << ")";
  out << "\n";
  if (v.status == ConditionStatus::proven) {
    size_t covers = 0, faces = 0;
    for (auto& c : v.certificate) covers += c.covers.size(), faces += c.face_translates.size();
    if (v.kind == ConditionKind::boolean)
      out << "  certificate: " << v.translates.size() << " translates cover the neighbourhood\n";
    else if (v.kind == ConditionKind::almost_canonical)
      out << "  certificate: " << faces << " face translates over " << v.certificate.size() << " facets\n";
    else
      out << "  certificate: " << covers << " local covers over " << v.certificate.size() << " facets\n";
  }
  if (v.witness_facet) {
    auto H = facet_hyperplane(s, *v.witness_facet);
    out << "  facet " << *v.witness_facet << ", hyperplane normal " << show(H.normal, prec) << ", offset "
        << H.offset.to_string() << "\n";
  }
  if (v.witness) out << "  witness " << show(*v.witness, prec) << "\n";
  if (v.uncovered_point) out << "  uncovered point " << show(*v.uncovered_point, prec) << "\n";
  if (!v.detail.empty()) out << "  " << v.detail << "\n";
}

int cmd_conditions(const RunConfig& cfg, const Scheme& s, std::ostream& out) {
  require_valid(s, cfg.nonsingular_radius);
  std::vector<ConditionVerdict> vs = {almost_canonical_check(s, cfg.search_radius),
                                      quasicanonical_check(s, cfg.search_radius),
                                      boolean_check(s, cfg.search_radius)};
  if (cfg.format == OutputFormat::json) {
    Json j = {{"scheme", s.name()}, {"search_radius", rational_to_json(cfg.search_radius)}};
    for (auto& v : vs) j[to_string(v.kind)] = verdict_to_json(s, v);
    print_json(out, j);
    return exit_ok;
  }
  out << "scheme " << s.name() << ", search radius " << cfg.search_radius.get_str() << "\n";
  for (auto& v : vs) print_verdict(out, s, v, digits(cfg));
  return exit_ok;
}

int cmd_refinement_demo(const RunConfig& cfg, const Scheme& s, std::ostream& out) {
  require_valid(s, cfg.nonsingular_radius);
  std::vector<Rational> radii = cfg.radii;
  if (radii.empty()) radii = {10, 20};
  auto demo = refinement_demo(s, radii);
  if (cfg.format == OutputFormat::json) {
    print_json(out, demo_to_json(s, demo));
    return exit_ok;
  }
  int prec = digits(cfg);
  out << "scheme " << s.name() << "\n";
  if (!demo.failure_found) {
    out << "no refinement failure found";
    if (!demo.detail.empty()) out << ": " << demo.detail;
    out << "\n";
    return exit_ok;
  }
  out << "refinement of C(" << demo.c.get_str() << ") by A(R) fails at vertex " << show(*demo.vertex, prec) << "\n";
  for (auto& r : demo.radii) {
    out << "R = " << r.R.get_str() << ", eps = " << r.eps.get_str() << ", same signature "
        << (r.same_signature ? "yes" : "no") << ", distinct regions " << (r.distinct_regions ? "yes" : "no") << "\n";
    for (auto& p : r.points) out << "  " << show(p, prec) << "\n";
  }
  if (!demo.detail.empty()) out << demo.detail << "\n";
  return exit_ok;
}

}  // namespace

std::vector<Rational> parse_radii(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational r = parse_rational(item);
    if (r <= 0) throw std::invalid_argument("radii must be positive");
    if (!out.empty() && r <= out.back()) throw std::invalid_argument("radii must be increasing");
    out.push_back(r);
  }
  if (out.empty()) throw std::invalid_argument("empty radius list");
  return out;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Scheme s = load(cfg);
    if (cfg.format == OutputFormat::csv && cfg.command != "count")
      throw ParseError("--format", "csv output is only available for count");
    if (cfg.command == "validate") return cmd_validate(cfg, s, out);
    if (cfg.command == "exponents") return cmd_exponents(cfg, s, out);
    if (cfg.command == "count") return cmd_count(cfg, s, out);
    if (cfg.command == "conditions") return cmd_conditions(cfg, s, out);
    if (cfg.command == "refinement-demo") return cmd_refinement_demo(cfg, s, out);
    if (cfg.command == "export") {
      print_json(out, scheme_to_json(s));
      return exit_ok;
    }
    err << "error: unknown command '" << cfg.command << "'\n";
    return exit_io;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_io;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_semantic;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_io;
  }
}

}  // namespace cps
