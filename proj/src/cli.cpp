#include "padicg/cli.hpp"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"
#include "padicg/gamma_cache.hpp"
#include "padicg/serialize.hpp"

namespace padicg {

namespace {

struct Common {
  std::uint32_t p = 0;
  unsigned r = 1;
  unsigned d = 0;
  std::string lambda = "all";
  std::optional<int> precision;
  std::optional<int> slack;
  unsigned parallel = 1;
  std::string format = "json";
  std::string cache_dir;
  std::uint64_t budget = CountOptions{}.budget;
};

// A failure the user has to fix: bad flags or an instance outside the
// hypotheses. Reported on stderr with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c, bool need_d) {
  app->add_option("--p", c.p, "characteristic (odd prime)")->required();
  app->add_option("--r", c.r, "extension degree, q = p^r")->capture_default_str();
  auto* d = app->add_option("--d", c.d, "degree of the Dwork hypersurface (odd prime)");
  if (need_d) d->required();
  app->add_option("--lambda", c.lambda, "element encoding sum c_i p^i, or 'all'")
      ->capture_default_str();
  app->add_option("--precision", c.precision, "target precision M (modulus p^M)");
  app->add_option("--slack", c.slack, "grade slack added to the working precision");
  app->add_option("--parallel", c.parallel, "worker threads")->capture_default_str();
  app->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app->add_option("--cache-dir", c.cache_dir, "directory for persisted Gamma_p tables");
  app->add_option("--budget", c.budget, "maximum number of enumerated tuples")
      ->capture_default_str();
}

// Common flags for subcommands where --p is optional.
void add_common_optional_p(CLI::App* app, Common& c) {
  add_common(app, c, false);
  app->get_option("--p")->required(false);
}

FieldPtr make_field(const Common& c) {
  try {
    return build_field(c.p, c.r);
  } catch (const FieldError& e) {
    throw UsageError(e.what());
  }
}

std::vector<FqElem> lambdas(const Common& c, const FieldDesc& field, bool skip_zero = false) {
  std::vector<FqElem> out;
  if (c.lambda == "all") {
    for (std::uint32_t e = skip_zero ? 1 : 0; e < field.q(); ++e) out.push_back(FqElem{e});
    return out;
  }
  std::uint64_t enc = 0;
  try {
    std::size_t used = 0;
    enc = std::stoull(c.lambda, &used);
    if (used != c.lambda.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw UsageError("--lambda must be an element encoding or 'all', got '" + c.lambda + "'");
  }
  if (enc >= field.q())
    throw UsageError("--lambda " + c.lambda + " is not an element of F_" +
                     std::to_string(field.q()));
  out.push_back(FqElem{static_cast<std::uint32_t>(enc)});
  return out;
}

DworkInstance make_instance(unsigned d, const FieldPtr& field, FqElem lambda) {
  try {
    return DworkInstance::make(d, field, lambda);
  } catch (const InvalidInstance& e) {
    throw UsageError(e.what());
  }
}

class Session {
 public:
  Session(const Common& c, std::ostream& err)
      : cache_(c.cache_dir.empty() ? GammaCache()
                                   : GammaCache(c.cache_dir, [&err](const std::string& m) {
                                       err << "warning: " << m << '\n';
                                     })) {
    engine_.workers = std::max(1u, c.parallel);
    engine_.cache = &cache_;
    engine_.slack = c.slack;
    count_.workers = std::max(1u, c.parallel);
    count_.budget = c.budget;
  }

  const EngineOptions& engine() const { return engine_; }
  const CountOptions& count() const { return count_; }

 private:
  GammaCache cache_;
  EngineOptions engine_;
  CountOptions count_;
};

// Emits a list of records in the chosen format.
template <typename Report>
void emit(const std::vector<Report>& reps, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else if (format == "csv") {
    out << csv_header(Report{}) << '\n';
    for (const auto& r : reps) out << csv_row(r) << '\n';
  } else {
    for (const auto& r : reps) out << to_text(r) << '\n';
  }
}

// ----------------------------------------------------------------- count

int cmd_count(const Common& c, const std::string& method, std::ostream& out,
              std::ostream& err) {
  const FieldPtr field = make_field(c);
  const Session session(c, err);
  json arr = json::array();
  std::vector<std::string> rows;
  for (const FqElem l : lambdas(c, *field)) {
    const DworkInstance inst = make_instance(c.d, field, l);
    json rec{{"d", c.d}, {"p", field->p()}, {"r", field->r()}, {"lambda", l.enc}};
    std::string text = "d=" + std::to_string(c.d) + " q=" + std::to_string(field->q()) +
                       " lambda=" + std::to_string(l.enc) + ": ";
    if (method == "brute") {
      const std::uint64_t n = brute_count_affine(inst, session.count());
      rec["N_affine"] = n;
      rec["projective"] = projective_from_affine(n, field->q());
      text += "#X=" + std::to_string(rec["projective"].get<std::uint64_t>()) + " (affine " +
              std::to_string(n) + ")";
    } else {
      const int M = c.precision.value_or(default_precision(inst));
      if (method == "conjecture" && field->r() != 1)
        throw UsageError("the conjectured formula is stated over prime fields only (r = 1)");
      const PadicApprox v = method == "theorem" ? theorem_count(inst, M, session.engine())
                                                : conjecture_count(inst, M, session.engine());
      rec["M"] = M;
      rec[method + "_residue"] = std::to_string(v.residue);
      text += method + " count " + std::to_string(v.residue) + " mod " +
              std::to_string(field->p()) + "^" + std::to_string(M);
    }
    arr.push_back(rec);
    rows.push_back(text);
  }
  if (c.format == "json") {
    out << arr.dump(2) << '\n';
  } else if (c.format == "csv") {
    bool header = true;
    for (const auto& rec : arr) {
      if (header) {
        std::string h;
        for (auto it = rec.begin(); it != rec.end(); ++it) h += (h.empty() ? "" : ",") + it.key();
        out << h << '\n';
        header = false;
      }
      std::string row;
      bool first = true;
      for (const auto& v : rec) {
        row += (first ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
      out << row << '\n';
    }
  } else {
    for (const auto& t : rows) out << t << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ gfun

int cmd_gfun(const Common& c, const std::string& a, const std::string& b, std::uint64_t t,
             std::ostream& out, std::ostream& err) {
  GSpec spec;
  spec.field = make_field(c);
  try {
    spec.a = parse_rational_list(a);
    spec.b = parse_rational_list(b);
    spec.t = spec.field->from_encoding(t);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Session session(c, err);
  const int M = c.precision.value_or(4);
  const ValuedZq v = evaluate_G(spec, M, session.engine());
  std::optional<PadicApprox> residue;
  try {
    residue = v.to_padic(M);
  } catch (const NotIntegral&) {
  }
  if (c.format == "json") {
    json doc{{"spec", to_json(spec)}, {"M", M}, {"value", to_json(v)}, {"residue", nullptr}};
    if (residue) doc["residue"] = std::to_string(residue->residue);
    out << doc.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "p,r,t,M,grade,coeffs,residue\n";
    out << spec.field->p() << ',' << spec.field->r() << ',' << spec.t.enc << ',' << M << ','
        << v.grade << ',';
    for (std::size_t i = 0; i < v.unit.coeffs().size(); ++i)
      out << (i ? ";" : "") << v.unit.coeffs()[i];
    out << ',' << (residue ? std::to_string(residue->residue) : "") << '\n';
  } else {
    out << "G = " << to_text(v) << '\n';
    if (residue)
      out << "  = " << residue->residue << " mod " << spec.field->p() << "^" << M << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify_theorem(const Common& c, std::ostream& out, std::ostream& err) {
  const FieldPtr field = make_field(c);
  const Session session(c, err);
  std::vector<CountReport> reps;
  for (const FqElem l : lambdas(c, *field))
    reps.push_back(verify_theorem(make_instance(c.d, field, l), c.precision, session.engine(),
                                  session.count()));
  emit(reps, c.format, out);
  const bool ok = std::all_of(reps.begin(), reps.end(),
                              [](const CountReport& r) { return r.match_theorem; });
  return ok ? 0 : 1;
}

int cmd_verify_corollary(const Common& c, std::ostream& out, std::ostream& err) {
  const FieldPtr field = make_field(c);
  const Session session(c, err);
  const int M = c.precision.value_or(corollary_precision(field));
  std::vector<CorollaryReport> reps;
  std::optional<GContext> ctx;
  for (const FqElem l : lambdas(c, *field, true)) {
    if (corollary_precondition(*field, l)) {
      reps.push_back(verify_corollary(field, l, M, session.engine(), session.count()));
      continue;
    }
    if (!ctx) ctx.emplace(corollary_context(field, M, session.engine()));
    reps.push_back(verify_corollary(field, l, *ctx, session.count()));
  }
  emit(reps, c.format, out);
  const bool ok =
      std::all_of(reps.begin(), reps.end(), [](const CorollaryReport& r) { return r.ok(); });
  return ok ? 0 : 1;
}

int cmd_verify_identities(const Common& c, const std::string& gamma_t, std::ostream& out,
                          std::ostream& err) {
  const Session session(c, err);
  const int M = c.precision.value_or(6);
  SuiteResult res;
  if (c.p == 0) {
    res = run_standard_identities(M, session.engine(), session.count());
  } else {
    const FieldPtr field = make_field(c);
    std::vector<std::int64_t> ts;
    for (const auto& x : parse_rational_list(gamma_t)) {
      if (!x.is_integer() || x.num() < 1) throw UsageError("--gamma-t takes positive integers");
      ts.push_back(x.num());
    }
    std::optional<unsigned> d;
    if (c.d != 0) d = c.d;
    const auto ls = c.lambda == "all" ? std::vector<FqElem>{} : lambdas(c, *field);
    if (d && !ls.empty() && ls.front() == field->zero())
      throw UsageError("the A-sum check needs lambda != 0");
    res = run_field_identities(field, d, ls, ts, M, session.engine(), session.count());
  }
  if (c.format == "json") {
    out << to_json(res).dump(2) << '\n';
  } else if (c.format == "csv") {
    out << csv_header(IdentityReport{}) << '\n';
    for (const auto& r : res.reports) out << csv_row(r) << '\n';
  } else {
    for (const auto& r : res.reports) out << to_text(r) << '\n';
    for (const auto& s : res.skipped)
      out << "skip " << s.name << " [" << s.ranges << "] " << s.reason << '\n';
    out << (res.pass() ? "all identities hold" : "identity failures found") << '\n';
  }
  return res.pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic hypergeometric functions and Dwork hypersurface point counts", "padicg"};
  app.require_subcommand(1);

  Common count_c, gfun_c, thm_c, cor_c, id_c;
  std::string method = "theorem";
  auto* count = app.add_subcommand("count", "point counts by enumeration or by formula");
  add_common(count, count_c, true);
  count->add_option("--method", method, "brute, theorem or conjecture")
      ->check(CLI::IsMember({"brute", "theorem", "conjecture"}))
      ->capture_default_str();

  std::string a, b;
  std::uint64_t t = 1;
  auto* gfun = app.add_subcommand("gfun", "evaluate nGn[a; b | t]");
  add_common(gfun, gfun_c, false);
  gfun->add_option("--a", a, "upper parameters, e.g. 1/3,2/3")->required();
  gfun->add_option("--b", b, "lower parameters, e.g. 0,0")->required();
  gfun->add_option("--t", t, "argument as an element encoding")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check formulas against independent counts");
  verify->require_subcommand(1);
  auto* thm = verify->add_subcommand("theorem", "brute count against the G-function formula");
  add_common(thm, thm_c, true);
  auto* cor = verify->add_subcommand("corollary", "the 2G2 transformation and the cubic curve");
  add_common(cor, cor_c, false);
  std::string gamma_t = "2,3,6";
  auto* ids = verify->add_subcommand(
      "identities", "identity ladder; the standard campaign when --p is omitted");
  add_common_optional_p(ids, id_c);
  ids->add_option("--gamma-t", gamma_t, "t values for the Gamma_p product identities")
      ->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*count) return cmd_count(count_c, method, out, err);
    if (*gfun) return cmd_gfun(gfun_c, a, b, t, out, err);
    if (*thm) return cmd_verify_theorem(thm_c, out, err);
    if (*cor) return cmd_verify_corollary(cor_c, out, err);
    if (*ids) return cmd_verify_identities(id_c, gamma_t, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace padicg
