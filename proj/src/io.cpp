#include "cps/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "cps/stabilizer.hpp"

namespace cps {

namespace {

std::string at(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& path, const char* key) { return path + "." + key; }

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing key '") + key + "'");
  return *it;
}

const Json& array_of(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

Integer integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  Rational q = rational_from_json(j, path);
  if (q.get_den() != 1) throw ParseError(path, "expected an integer");
  return q.get_num();
}

Json int_vec_json(const IntVec& v) {
  Json out = Json::array();
  for (auto& z : v) {
    if (fits_int64(z)) out.push_back(z.get_si());
    else out.push_back(z.get_str());
  }
  return out;
}

Json opt_vec(const std::optional<Vec>& v, int degree) { return v ? vec_to_json(*v, degree) : Json(); }

Json hyperplane_json(const AffineHyperplane& h, int degree) {
  return {{"normal", vec_to_json(h.normal, degree)}, {"offset", field_real_to_json(h.offset, degree)}};
}

}  // namespace

Json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

Json field_real_to_json(const FieldReal& x, int degree) {
  auto c = x.coeffs();
  c.resize(std::max<size_t>(c.size(), degree));
  Json out = Json::array();
  for (auto& q : c) out.push_back(rational_to_json(q));
  return out;
}

FieldReal field_real_from_json(const Json& j, const FieldPtr& field, const std::string& path) {
  if (!j.is_array()) return FieldReal(field, rational_from_json(j, path));
  if ((int)j.size() > field->degree())
    throw ParseError(path, "more coefficients than the field degree " + std::to_string(field->degree()));
  std::vector<Rational> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(rational_from_json(j[i], at(path, i)));
  return FieldReal(field, std::move(c));
}

Json vec_to_json(const Vec& v, int degree) {
  Json out = Json::array();
  for (auto& x : v) out.push_back(field_real_to_json(x, degree));
  return out;
}

Vec vec_from_json(const Json& j, const FieldPtr& field, const std::string& path) {
  array_of(j, path);
  Vec v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(field_real_from_json(j[i], field, at(path, i)));
  return v;
}

Json matrix_to_json(const FieldMatrix& m, int degree) {
  Json out = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) out.push_back(vec_to_json(m.row(r), degree));
  return out;
}

FieldMatrix matrix_from_json(const Json& j, const FieldPtr& field, const std::string& path) {
  array_of(j, path);
  if (j.empty()) throw ParseError(path, "empty matrix");
  std::vector<Vec> rows;
  for (size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vec_from_json(j[i], field, at(path, i)));
    if (rows.back().size() != rows.front().size()) throw ParseError(at(path, i), "ragged matrix row");
  }
  return FieldMatrix::from_rows(rows);
}

Json field_to_json(const NumberField& f) {
  Json poly = Json::array();
  for (auto& c : f.min_poly()) {
    if (fits_int64(c)) poly.push_back(c.get_si());
    else poly.push_back(c.get_str());
  }
  Json out = {{"min_poly", poly},
              {"root_interval", {rational_to_json(f.root_interval().lo), rational_to_json(f.root_interval().hi)}}};
  if (f.irreducibility_trusted()) out["trust_irreducible"] = true;
  return out;
}

FieldPtr field_from_json(const Json& j, const std::string& path) {
  const Json& poly = array_of(member(j, "min_poly", path), at(path, "min_poly"));
  std::vector<Integer> c;
  for (size_t i = 0; i < poly.size(); ++i) c.push_back(integer_from_json(poly[i], at(at(path, "min_poly"), i)));
  const Json& iv = array_of(member(j, "root_interval", path), at(path, "root_interval"));
  if (iv.size() != 2) throw ParseError(at(path, "root_interval"), "expected [lo, hi]");
  Rational lo = rational_from_json(iv[0], at(at(path, "root_interval"), size_t(0)));
  Rational hi = rational_from_json(iv[1], at(at(path, "root_interval"), 1));
  bool trust = false;
  if (auto it = j.find("trust_irreducible"); it != j.end()) {
    if (!it->is_boolean()) throw ParseError(at(path, "trust_irreducible"), "expected a boolean");
    trust = it->get<bool>();
  }
  try {
    return make_field(std::move(c), lo, hi, trust);
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

Json polytope_to_json(const ConvexPolytope& p, int degree) {
  Json hs = Json::array();
  for (auto& h : p.halfspaces())
    hs.push_back({{"normal", vec_to_json(h.normal, degree)}, {"offset", field_real_to_json(h.offset, degree)}});
  return {{"halfspaces", hs}};
}

ConvexPolytope polytope_from_json(const Json& j, const FieldPtr& field, size_t dim, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  try {
    if (j.contains("vertices")) {
      const Json& vs = array_of(j["vertices"], at(path, "vertices"));
      std::vector<Vec> pts;
      for (size_t i = 0; i < vs.size(); ++i) {
        pts.push_back(vec_from_json(vs[i], field, at(at(path, "vertices"), i)));
        if (pts.back().size() != dim) throw ParseError(at(at(path, "vertices"), i), "wrong dimension");
      }
      return ConvexPolytope::hull(dim, pts);
    }
    const Json& hs = array_of(member(j, "halfspaces", path), at(path, "halfspaces"));
    std::vector<Halfspace> out;
    for (size_t i = 0; i < hs.size(); ++i) {
      std::string hp = at(at(path, "halfspaces"), i);
      Halfspace h{vec_from_json(member(hs[i], "normal", hp), field, at(hp, "normal")),
                  field_real_from_json(member(hs[i], "offset", hp), field, at(hp, "offset"))};
      if (h.normal.size() != dim) throw ParseError(at(hp, "normal"), "wrong dimension");
      out.push_back(std::move(h));
    }
    return ConvexPolytope::from_halfspaces(dim, out);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
}

Json lattice_point_to_json(const LatticePoint& g) { return Json(g.c); }

Json scheme_to_json(const Scheme& s) {
  int g = s.field()->degree();
  Json out = {{"name", s.name()},
              {"field", field_to_json(*s.field())},
              {"k", s.k()},
              {"d", s.d()},
              {"G", matrix_to_json(s.G(), g)},
              {"phys_basis", matrix_to_json(s.phys_basis(), g)},
              {"int_basis", matrix_to_json(s.int_basis(), g)},
              {"window", polytope_to_json(s.window(), g)},
              {"window_shift", vec_to_json(s.window_shift(), g)}};
  return out;
}

Scheme scheme_from_json(const Json& j) {
  const std::string root = "$";
  FieldPtr field = field_from_json(member(j, "field", root), at(root, "field"));
  int k = int_from_json(member(j, "k", root), at(root, "k"));
  int d = int_from_json(member(j, "d", root), at(root, "d"));
  if (d < 1 || k <= d) throw ParseError(root, "need 1 <= d < k");
  auto G = matrix_from_json(member(j, "G", root), field, at(root, "G"));
  auto P = matrix_from_json(member(j, "phys_basis", root), field, at(root, "phys_basis"));
  auto I = matrix_from_json(member(j, "int_basis", root), field, at(root, "int_basis"));
  size_t n = k - d;
  auto W = polytope_from_json(member(j, "window", root), field, n, at(root, "window"));
  Vec shift(n);
  if (j.contains("window_shift")) {
    shift = vec_from_json(j["window_shift"], field, at(root, "window_shift"));
    if (shift.size() != n) throw ParseError(at(root, "window_shift"), "wrong dimension");
  }
  std::string name = "scheme";
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError(at(root, "name"), "expected a string");
    name = j["name"].get<std::string>();
  }
  try {
    return Scheme::make(name, field, k, d, G, P, I, W, shift, field->irreducibility_trusted());
  } catch (const std::exception& e) {
    throw ParseError(root, e.what());
  }
}

Scheme scheme_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  return scheme_from_json(j);
}

Scheme load_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scheme_from_text(ss.str());
}

Json validation_to_json(const ValidationReport& r) {
  Json out = {{"ok", r.ok()},
              {"basis_invertible", r.basis_invertible},
              {"phys_injective", r.phys_injective},
              {"internal_dense", r.internal_dense},
              {"window_ok", r.window_ok},
              {"nonsingular", r.nonsingular},
              {"aperiodic", r.aperiodic},
              {"nonsingular_radius", rational_to_json(r.nonsingular_radius)},
              {"messages", r.messages}};
  out["singular_witness"] = r.singular_witness ? lattice_point_to_json(*r.singular_witness) : Json();
  out["singular_facet"] = r.singular_facet ? Json(*r.singular_facet) : Json();
  return out;
}

Json exponents_to_json(const Scheme& s, const ComplexityReport& r) {
  int g = s.field()->degree();
  Json hyper = Json::array();
  for (auto& hd : r.hyperplanes) {
    Json basis = Json::array();
    for (auto& row : hd.stab.basis) basis.push_back(int_vec_json(row));
    hyper.push_back({{"facet", hd.facet},
                     {"direction_class", hd.direction_class},
                     {"hyperplane", hyperplane_json(hd.H, g)},
                     {"rk", hd.rk},
                     {"beta", hd.beta},
                     {"stabilizer_basis", basis},
                     {"has_opposite", hd.opposite.has_value()}});
  }
  Json classes = Json::array();
  for (auto& c : r.classes)
    classes.push_back({{"normal", vec_to_json(c.normal, g)}, {"facets", c.facets}, {"rk", c.rk}, {"beta", c.beta}});
  Json fl = Json::array();
  for (auto& f : r.flags)
    fl.push_back({{"members", f.members}, {"alpha_f", f.alpha_f}, {"alpha_prime_f", f.alpha_prime_f}});
  return {{"scheme", s.name()},
          {"k", s.k()},
          {"d", s.d()},
          {"hyperplanes", hyper},
          {"direction_classes", classes},
          {"flags", fl},
          {"alpha", r.alpha},
          {"alpha_prime", r.alpha_prime},
          {"aperiodic", r.aperiodic},
          {"bounds_hold", r.bounds_hold},
          {"trust_irreducible", s.field()->irreducibility_trusted()}};
}

Json series_to_json(const ComplexityReport& r) {
  Json rows = Json::array();
  for (auto& row : r.series) {
    Json e = {{"r", rational_to_json(row.r)}, {"p_r", row.p}, {"C_r", row.cuts}, {"Cprime_r", row.cuts_slab}};
    if (row.bruteforce) e["bruteforce_p_r"] = *row.bruteforce;
    rows.push_back(e);
  }
  Json out = {{"series", rows}};
  out["slope_p"] = r.slope_fit ? Json(*r.slope_fit) : Json();
  return out;
}

void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& rows) {
  bool brute = !rows.empty() && rows.front().bruteforce.has_value();
  out << "r,p_r,C_r,Cprime_r" << (brute ? ",bruteforce_p_r" : "") << "\n";
  for (auto& row : rows) {
    out << row.r.get_str() << "," << row.p << "," << row.cuts << "," << row.cuts_slab;
    if (brute) out << "," << (row.bruteforce ? std::to_string(*row.bruteforce) : "");
    out << "\n";
  }
}

Json verdict_to_json(const Scheme& s, const ConditionVerdict& v) {
  int g = s.field()->degree();
  Json certs = Json::array();
  for (auto& c : v.certificate) {
    Json covers = Json::array();
    for (auto& lc : c.covers) {
      Json tr = Json::array();
      for (auto& x : lc.translates) tr.push_back(lattice_point_to_json(x));
      covers.push_back({{"z", vec_to_json(lc.z, g)},
                        {"eps", field_real_to_json(lc.eps, g)},
                        {"side", lc.side},
                        {"translates", tr}});
    }
    Json faces = Json::array();
    for (auto& x : c.face_translates) faces.push_back(lattice_point_to_json(x));
    certs.push_back({{"facet", c.facet},
                     {"period", c.period ? lattice_point_to_json(*c.period) : Json()},
                     {"discrete", c.discrete},
                     {"face_translates", faces},
                     {"covers", covers}});
  }
  Json tr = Json::array();
  for (auto& x : v.translates) tr.push_back(lattice_point_to_json(x));
  Json out = {{"kind", to_string(v.kind)},
              {"status", to_string(v.status)},
              {"certificate", certs},
              {"translates", tr},
              {"witness", opt_vec(v.witness, g)},
              {"uncovered_point", opt_vec(v.uncovered_point, g)},
              {"obstruction", v.obstruction},
              {"search_radius", rational_to_json(v.search_radius)},
              {"detail", v.detail}};
  out["witness_facet"] = v.witness_facet ? Json(*v.witness_facet) : Json();
  if (v.witness_facet) out["witness_hyperplane"] = hyperplane_json(facet_hyperplane(s, *v.witness_facet), g);
  return out;
}

Json demo_to_json(const Scheme& s, const RefinementDemo& d) {
  int g = s.field()->degree();
  Json dirs = Json::array();
  for (auto& a : d.directions) dirs.push_back(vec_to_json(a, g));
  Json radii = Json::array();
  for (auto& r : d.radii) {
    Json pts = Json::array();
    for (auto& p : r.points) pts.push_back(vec_to_json(p, g));
    radii.push_back({{"R", rational_to_json(r.R)},
                     {"eps", rational_to_json(r.eps)},
                     {"points", pts},
                     {"same_signature", r.same_signature},
                     {"distinct_regions", r.distinct_regions}});
  }
  return {{"scheme", s.name()},
          {"failure_found", d.failure_found},
          {"c", rational_to_json(d.c)},
          {"vertex", opt_vec(d.vertex, g)},
          {"directions", dirs},
          {"radii", radii},
          {"detail", d.detail}};
}

}  // namespace cps
