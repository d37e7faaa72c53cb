#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cps/complexity.hpp"
#include "cps/conditions.hpp"
#include "cps/scheme.hpp"

namespace cps {

using Json = nlohmann::json;

// Malformed input.  'where' names the offending JSON path or byte offset.
struct ParseError : std::runtime_error {
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(where) {}
  std::string where;
};

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path = "$");

// Coefficient array of length degree.
Json field_real_to_json(const FieldReal& x, int degree);
FieldReal field_real_from_json(const Json& j, const FieldPtr& field, const std::string& path = "$");

Json vec_to_json(const Vec& v, int degree);
Vec vec_from_json(const Json& j, const FieldPtr& field, const std::string& path = "$");
Json matrix_to_json(const FieldMatrix& m, int degree);
FieldMatrix matrix_from_json(const Json& j, const FieldPtr& field, const std::string& path = "$");

Json field_to_json(const NumberField& f);
FieldPtr field_from_json(const Json& j, const std::string& path = "$");

Json polytope_to_json(const ConvexPolytope& p, int degree);
ConvexPolytope polytope_from_json(const Json& j, const FieldPtr& field, size_t dim, const std::string& path = "$");

Json lattice_point_to_json(const LatticePoint& g);

Json scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const Json& j);
// Parses text; syntax errors report the byte offset.
Scheme scheme_from_text(const std::string& text);
Scheme load_scheme(const std::string& path);

Json validation_to_json(const ValidationReport& r);
Json exponents_to_json(const Scheme& s, const ComplexityReport& r);
Json series_to_json(const ComplexityReport& r);
void write_series_csv(std::ostream& out, const std::vector<SeriesRow>& rows);
Json verdict_to_json(const Scheme& s, const ConditionVerdict& v);
Json demo_to_json(const Scheme& s, const RefinementDemo& d);

}  // namespace cps
