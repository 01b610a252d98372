#include "padicg/serialize.hpp"

#include <sstream>

namespace padicg {

namespace {

json string_list(const std::vector<std::uint64_t>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(std::to_string(x));
  return out;
}

json rational_list(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

json to_json(const FieldDesc& field) {
  return {{"p", field.p()},
          {"r", field.r()},
          {"q", field.q()},
          {"f", field.modulus()},
          {"generator", field.generator().enc}};
}

json to_json(const PadicApprox& x) {
  return {{"p", x.p}, {"precision", x.M}, {"residue", std::to_string(x.residue)}};
}

json to_json(const ZqApprox& x) {
  return {{"precision", x.precision()}, {"coeffs", string_list(x.coeffs())}};
}

json to_json(const PiGraded& x) {
  return {{"grade", x.grade},
          {"unit_coeffs", string_list(x.unit.coeffs())},
          {"precision", x.unit.precision()}};
}

json to_json(const GSpec& spec) {
  return {{"a", rational_list(spec.a)},
          {"b", rational_list(spec.b)},
          {"t", spec.t.enc},
          {"p", spec.field->p()},
          {"r", spec.field->r()}};
}

json to_json(const ValuedZq& x) {
  json out{{"grade", x.grade},
           {"coeffs", string_list(x.unit.coeffs())},
           {"precision", x.absolute_precision()}};
  return out;
}

json to_json(const CountReport& rep) {
  json out{{"d", rep.d},
           {"p", rep.p},
           {"r", rep.r},
           {"lambda", rep.lambda},
           {"M", rep.M},
           {"N_affine", rep.n_affine},
           {"projective", rep.projective},
           {"theorem_residue", std::to_string(rep.theorem_value.residue)},
           {"conjecture_residue", nullptr},
           {"G_residue", std::to_string(rep.g_value.residue)},
           {"match_theorem", rep.match_theorem},
           {"match_conjecture", nullptr}};
  if (rep.conjecture_value) out["conjecture_residue"] = std::to_string(rep.conjecture_value->residue);
  if (rep.match_conjecture) out["match_conjecture"] = *rep.match_conjecture;
  return out;
}

json to_json(const CorollaryReport& rep) {
  json out{{"p", rep.p},         {"r", rep.r},
           {"lambda", rep.lambda}, {"M", rep.M},
           {"skipped", rep.skipped}};
  if (rep.skipped) {
    out["reason"] = rep.reason;
    return out;
  }
  out["lhs"] = to_json(*rep.lhs);
  out["rhs"] = to_json(*rep.rhs);
  out["curve_points"] = rep.curve_points;
  out["expected"] = rep.expected;
  out["match_sides"] = rep.match_sides;
  out["match_curve"] = rep.match_curve;
  return out;
}

json to_json(const IdentityReport& rep) {
  return {{"name", rep.name},   {"ranges", rep.ranges},     {"params", rep.params},
          {"cases", rep.cases}, {"failures", rep.failures}, {"pass", rep.pass()}};
}

json to_json(const SuiteResult& res) {
  json reports = json::array();
  for (const auto& r : res.reports) reports.push_back(to_json(r));
  json skipped = json::array();
  for (const auto& s : res.skipped)
    skipped.push_back({{"name", s.name}, {"ranges", s.ranges}, {"reason", s.reason}});
  return {{"reports", reports}, {"skipped", skipped}, {"pass", res.pass()}};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(Rational::parse(item.substr(b, e - b + 1)));
  }
  return out;
}

namespace {

std::vector<Rational> rationals_from(const json& v) {
  if (v.is_string()) return parse_rational_list(v.get<std::string>());
  std::vector<Rational> out;
  for (const auto& x : v) {
    if (x.is_number_integer())
      out.emplace_back(x.get<std::int64_t>());
    else
      out.push_back(Rational::parse(x.get<std::string>()));
  }
  return out;
}

}  // namespace

GSpec gspec_from_json(const json& doc, const FieldOptions& opts) {
  GSpec spec;
  spec.field = build_field(doc.at("p").get<std::uint32_t>(), doc.value("r", 1u), opts);
  spec.a = rationals_from(doc.at("a"));
  spec.b = rationals_from(doc.at("b"));
  spec.t = spec.field->from_encoding(doc.at("t").get<std::uint64_t>());
  spec.validate();
  return spec;
}

// ------------------------------------------------------------------- CSV

std::string csv_header(const CountReport&) {
  return "d,p,r,lambda,M,N_affine,projective,theorem_residue,conjecture_residue,G_residue,"
         "match_theorem,match_conjecture";
}

std::string csv_row(const CountReport& rep) {
  std::ostringstream s;
  s << rep.d << ',' << rep.p << ',' << rep.r << ',' << rep.lambda << ',' << rep.M << ','
    << rep.n_affine << ',' << rep.projective << ',' << rep.theorem_value.residue << ',';
  if (rep.conjecture_value) s << rep.conjecture_value->residue;
  s << ',' << rep.g_value.residue << ',' << (rep.match_theorem ? "true" : "false") << ',';
  if (rep.match_conjecture) s << (*rep.match_conjecture ? "true" : "false");
  return s.str();
}

std::string csv_header(const CorollaryReport&) {
  return "p,r,lambda,M,skipped,lhs_grade,lhs_coeffs,rhs_grade,rhs_coeffs,curve_points,"
         "expected,match_sides,match_curve";
}

namespace {

std::string joined(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

std::string csv_row(const CorollaryReport& rep) {
  std::ostringstream s;
  s << rep.p << ',' << rep.r << ',' << rep.lambda << ',' << rep.M << ','
    << (rep.skipped ? "true" : "false") << ',';
  if (rep.skipped) return s.str() + ",,,,,,,";
  s << rep.lhs->grade << ',' << joined(rep.lhs->unit.coeffs()) << ',' << rep.rhs->grade << ','
    << joined(rep.rhs->unit.coeffs()) << ',' << rep.curve_points << ',' << rep.expected << ','
    << (rep.match_sides ? "true" : "false") << ',' << (rep.match_curve ? "true" : "false");
  return s.str();
}

std::string csv_header(const IdentityReport&) { return "name,ranges,cases,failures,pass"; }

std::string csv_row(const IdentityReport& rep) {
  std::ostringstream s;
  s << rep.name << ",\"" << rep.ranges << "\"," << rep.cases << ',' << rep.failures.size()
    << ',' << (rep.pass() ? "true" : "false");
  return s.str();
}

// ------------------------------------------------------------------ text

std::string to_text(const ValuedZq& x) {
  std::ostringstream s;
  s << "(-p)^" << x.grade << " * " << x.unit.str() << "  [known mod p^"
    << x.absolute_precision() << "]";
  return s.str();
}

std::string to_text(const CountReport& rep) {
  std::ostringstream s;
  s << "d=" << rep.d << " q=" << rep.p << '^' << rep.r << " lambda=" << rep.lambda
    << " M=" << rep.M << ": #X=" << rep.projective << " (affine " << rep.n_affine
    << "), theorem " << rep.theorem_value.residue << " [" << yes_no(rep.match_theorem) << "]";
  if (rep.conjecture_value)
    s << ", conjecture " << rep.conjecture_value->residue << " ["
      << yes_no(*rep.match_conjecture) << "]";
  s << ", G " << rep.g_value.residue;
  return s.str();
}

std::string to_text(const CorollaryReport& rep) {
  std::ostringstream s;
  s << "q=" << rep.p << '^' << rep.r << " lambda=" << rep.lambda << " M=" << rep.M << ": ";
  if (rep.skipped) return s.str() + "skipped (" + rep.reason + ")";
  s << "curve points " << rep.curve_points << ", expected " << rep.expected << ", sides "
    << (rep.match_sides ? "agree" : "DIFFER") << ", curve "
    << (rep.match_curve ? "agrees" : "DIFFERS");
  return s.str();
}

std::string to_text(const IdentityReport& rep) {
  std::ostringstream s;
  s << (rep.pass() ? "ok   " : "FAIL ") << rep.name << " [" << rep.ranges << "] " << rep.cases
    << " cases";
  if (!rep.pass()) {
    s << ", " << rep.failures.size() << " failures, first (";
    for (std::size_t i = 0; i < rep.params.size(); ++i) s << (i ? ", " : "") << rep.params[i];
    s << ") =";
    for (auto v : rep.failures.front()) s << ' ' << v;
  }
  return s.str();
}

}  // namespace padicg
