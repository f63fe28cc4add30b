#include "cmv/report.hpp"

#include "cmv/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cmv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    std::string item(text.substr(start, end - start));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

std::optional<Status> status_from_name(std::string_view s) {
  for (Status st : {Status::Holds, Status::Fits, Status::Refuted, Status::Trivial, Status::Skipped,
                    Status::Error}) {
    if (status_name(st) == s) return st;
  }
  return std::nullopt;
}

const char* deta_name(DetaConvention c) { return c == DetaConvention::Half ? "half" : "full"; }

class Recorder {
 public:
  Recorder(const Geometry& geo, std::vector<std::string> names)
      : names_(geo.spec.chart.names()), requested_(std::move(names)) {}

  bool wants(std::string_view name) const {
    return std::find(requested_.begin(), requested_.end(), name) != requested_.end();
  }

  std::string render(const ScalarExpr& e) const { return e.render(names_); }

  CheckRecord from_verdict(std::string name, const Verdict& v) const {
    CheckRecord r;
    r.name = std::move(name);
    r.status = v.status;
    r.witness = v.witness;
    r.notes = v.notes;
    return r;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> requested_;
};

CheckRecord skipped(std::string name, std::string why) {
  CheckRecord r;
  r.name = std::move(name);
  r.status = Status::Skipped;
  r.notes.push_back(std::move(why));
  return r;
}

const Verdict* find_axiom(const std::vector<NamedVerdict>& battery, std::string_view name) {
  for (const auto& a : battery) {
    if (a.name == name) return &a.verdict;
  }
  return nullptr;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i]);
  }
  return s;
}

}  // namespace

std::string_view engine_version() { return CMV_VERSION; }

const CheckRecord* ClassificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

OracleOptions parse_oracle_options(std::string_view text) {
  OracleOptions o;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("oracle option '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    auto bad = [&] { return ParseError("invalid value '" + value + "' for oracle option " + key); };
    try {
      std::size_t used = 0;
      if (key == "points") {
        const long long v = std::stoll(value, &used);
        if (v <= 0) throw bad();
        o.points = static_cast<std::size_t>(v);
      } else if (key == "seed") {
        o.seed = std::stoull(value, &used);
      } else if (key == "step") {
        o.step = std::stod(value, &used);
        if (!(o.step > 0)) throw bad();
      } else if (key == "tol") {
        o.tol = std::stod(value, &used);
        if (!(o.tol > 0)) throw bad();
      } else {
        throw ParseError("unknown oracle option '" + key + "'");
      }
      if (used != value.size()) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  return o;
}

std::vector<std::string> resolve_checks(const ManifoldSpec& spec, const RunOptions& options) {
  const auto& known = known_check_names();
  std::vector<std::string> wanted = options.checks.empty() ? spec.requested_checks : options.checks;
  if (wanted.empty()) {
    for (const auto& n : known) {
      if (n != "long-identity") wanted.push_back(n);
    }
  }
  for (const auto& w : wanted) {
    if (std::find(known.begin(), known.end(), w) == known.end()) {
      throw ValidationError("unknown check '" + w + "'");
    }
  }
  std::vector<std::string> ordered;
  for (const auto& n : known) {
    if (std::find(wanted.begin(), wanted.end(), n) != wanted.end()) ordered.push_back(n);
  }
  return ordered;
}

std::size_t run_self_tests(const Geometry& geo) {
  const std::vector<NamedVerdict> tests = {
      {"Jacobi identity", check_jacobi(geo.brackets, geo.frame)},
      {"metric compatibility", check_metric_compatibility(geo.connection, geo.metric, geo.frame)},
      {"torsion-free", check_torsion_free(geo.connection, geo.brackets)},
      {"curvature antisymmetry", check_curvature_antisymmetry(geo.curvature)},
      {"first Bianchi identity", check_first_bianchi(geo.curvature)},
      {"lowered curvature symmetries", check_lowered_symmetries(geo.curvature, geo.metric)},
      {"second Bianchi identity", check_second_bianchi(geo.curvature)},
  };
  const auto names = geo.spec.frame_names();
  for (const auto& t : tests) {
    if (!t.verdict.holds()) {
      std::string msg = "self-test failed: " + t.name;
      if (t.verdict.witness) {
        msg += " (" + t.verdict.witness->describe(names) + " = " +
               t.verdict.witness->value.render(geo.spec.chart) + ")";
      }
      throw InvariantViolation(msg);
    }
  }
  return tests.size();
}

ClassificationReport run_checks(const Geometry& geo, const RunOptions& options) {
  const ManifoldSpec& spec = geo.spec;
  ClassificationReport rep;
  rep.instance = spec.name;
  rep.dim = spec.dim;
  rep.deta = spec.deta;
  rep.coords = spec.chart.names();
  rep.frame_names = spec.frame_names();
  rep.excluded_locus = render_polynomial(excluded_locus(spec), rep.coords);
  rep.version = std::string(engine_version());
  rep.self_tests_passed = run_self_tests(geo);

  const Recorder rec(geo, resolve_checks(spec, options));
  const bool has_nabla = geo.curvature.nablaR.has_value();

  BatteryOptions battery_opts;
  battery_opts.long_identity = rec.wants("long-identity");
  const auto battery =
      axiom_battery(geo.frame, geo.metric, geo.contact, geo.h, geo.connection, geo.curvature, battery_opts);
  std::vector<std::string> failed_axioms;
  for (const auto& a : battery) {
    if (a.name != "long-identity" && !a.verdict.holds()) failed_axioms.push_back(a.name);
  }
  const bool contact_metric = failed_axioms.empty();
  const Verdict* phi_sq = find_axiom(battery, "phi-squared");
  const bool almost_contact = phi_sq != nullptr && phi_sq->holds();

  auto not_contact_note = [&] {
    return "the tensors do not form a contact metric structure (failing: " + [&] {
      std::string s;
      for (std::size_t i = 0; i < failed_axioms.size(); ++i) s += (i ? ", " : "") + failed_axioms[i];
      return s;
    }() + ")";
  };

  if (rec.wants("contact")) {
    const ContactConditionResult cc = contact_condition(geo.contact);
    CheckRecord r = rec.from_verdict("contact", cc.verdict);
    r.notes.push_back("eta ^ (d eta)^n on the frame = " + rec.render(cc.value));
    rep.checks.push_back(std::move(r));
  }

  if (rec.wants("axioms")) {
    CheckRecord r;
    r.name = "axioms";
    for (const auto& a : battery) {
      if (a.name == "long-identity" || a.verdict.holds()) continue;
      if (r.status != Status::Refuted) {
        r.status = Status::Refuted;
        r.witness = a.verdict.witness;
      }
      r.notes.push_back(a.name + " fails");
    }
    rep.checks.push_back(std::move(r));
  }

  if (rec.wants("long-identity")) {
    if (!contact_metric) {
      rep.checks.push_back(skipped("long-identity", not_contact_note()));
    } else if (spec.deta == DetaConvention::Full) {
      rep.checks.push_back(skipped("long-identity", "the identity is stated for the half convention"));
    } else {
      rep.checks.push_back(rec.from_verdict("long-identity", *find_axiom(battery, "long-identity")));
    }
  }

  std::optional<NullityResult> nullity;
  if (rec.wants("nullity") || rec.wants("sasakian")) {
    nullity = nullity_classify(geo.curvature, geo.contact, geo.metric, &geo.ricci);
  }
  if (rec.wants("nullity")) {
    CheckRecord r;
    r.name = "nullity";
    r.status = nullity->status;
    r.witness = nullity->witness;
    r.notes = nullity->notes;
    if (nullity->status == Status::Fits) r.k = nullity->k;
    if (!contact_metric) r.notes.push_back(not_contact_note());
    if (spec.claimed_k) {
      const ClaimedNullity claim = check_claimed_k(geo.curvature, geo.contact, *spec.claimed_k);
      const std::string k_text = rec.render(*spec.claimed_k);
      if (!claim.constant) {
        r.notes.push_back("claimed k = " + k_text + " is not constant");
      }
      if (claim.satisfies) {
        r.notes.push_back("claimed k = " + k_text + " satisfies R(X,Y)xi = k[eta(Y)X - eta(X)Y]");
      } else if (claim.witness) {
        r.notes.push_back("claimed k = " + k_text + " fails at " + claim.witness->describe(rep.frame_names) +
                          " = " + rec.render(claim.witness->value));
      }
    }
    rep.checks.push_back(std::move(r));
  }

  if (rec.wants("sasakian")) {
    if (!contact_metric) {
      rep.checks.push_back(skipped("sasakian", not_contact_note()));
    } else {
      CheckRecord r = rec.from_verdict("sasakian", sasakian_check(geo.curvature, geo.contact));
      const ScalarExpr c2 = geo.contact.scale() * geo.contact.scale();
      if (nullity->status == Status::Fits && nullity->k && *nullity->k == c2) {
        r.notes.push_back("consistent with the nullity fit k = " + rec.render(c2));
      }
      rep.checks.push_back(std::move(r));
    }
  }

  if (rec.wants("normality")) {
    if (!almost_contact) {
      rep.checks.push_back(skipped("normality", "phi^2 = -I + eta (x) xi fails"));
    } else {
      rep.checks.push_back(rec.from_verdict("normality", nijenhuis_check(geo.frame, geo.contact)));
    }
  }

  std::optional<Verdict> flat;
  if (rec.wants("flat") || rec.wants("constant-curvature")) flat = check_flat(geo.curvature);
  if (rec.wants("flat")) rep.checks.push_back(rec.from_verdict("flat", *flat));

  if (rec.wants("symmetric")) {
    CheckRecord r = rec.from_verdict("symmetric", check_locally_symmetric(geo.curvature));
    if (flat && flat->holds() && r.status == Status::Holds) r.status = Status::Trivial;
    rep.checks.push_back(std::move(r));
  }

  if (rec.wants("constant-curvature")) {
    const ConstantCurvatureResult cc = check_constant_curvature(geo.curvature, geo.metric);
    CheckRecord r = rec.from_verdict("constant-curvature", cc.verdict);
    if (cc.verdict.holds()) r.lambda = cc.lambda;
    r.notes.push_back("lambda under R(X,Y)Z = lambda(g(Y,Z)X - g(X,Z)Y)");
    if (cc.verdict.holds() && spec.dim > 3 && contact_metric) {
      r.notes.push_back(
          "known classification: a contact metric manifold of dimension > 3 with constant "
          "curvature has lambda = 1 and is Sasakian, unless flat");
    }
    rep.checks.push_back(std::move(r));
  }

  if (rec.wants("decomposition3d")) {
    try {
      rep.checks.push_back(rec.from_verdict(
          "decomposition3d", check_3d_decomposition(geo.curvature, geo.ricci, geo.metric)));
    } catch (const DimensionError& e) {
      CheckRecord r;
      r.name = "decomposition3d";
      r.status = Status::Error;
      r.notes.push_back(e.what());
      rep.checks.push_back(std::move(r));
    }
  }

  if (rec.wants("phi-symmetric")) {
    if (!almost_contact) {
      rep.checks.push_back(skipped("phi-symmetric", "phi^2 = -I + eta (x) xi fails"));
    } else if (!has_nabla) {
      rep.checks.push_back(skipped("phi-symmetric", "nabla R unavailable"));
    } else {
      rep.checks.push_back(rec.from_verdict("phi-symmetric", phi_symmetric_check(geo.curvature, geo.contact)));
    }
  }

  if (rec.wants("phi-recurrent")) {
    if (!almost_contact) {
      rep.checks.push_back(skipped("phi-recurrent", "phi^2 = -I + eta (x) xi fails"));
    } else if (!has_nabla) {
      rep.checks.push_back(skipped("phi-recurrent", "nabla R unavailable"));
    } else {
      const RecurrenceSolution sol = phi_recurrence_solve(geo.curvature, geo.contact);
      CheckRecord r;
      r.name = "phi-recurrent";
      switch (sol.status) {
        case RecurrenceStatus::Recurrent: r.status = Status::Holds; break;
        case RecurrenceStatus::Trivial: r.status = Status::Trivial; break;
        case RecurrenceStatus::ZeroOnly:
        case RecurrenceStatus::Refuted: r.status = Status::Refuted; break;
      }
      r.witness = sol.witness;
      r.recurrence_status = std::string(recurrence_status_name(sol.status));
      r.recurrence_A = sol.A;
      r.notes = sol.notes;
      rep.checks.push_back(std::move(r));
    }
  }

  if (options.oracle) {
    const OracleOptions& o = *options.oracle;
    const auto points = sample_points(spec, o.points, o.seed);
    rep.oracle.push_back({cross_validate_connection(spec, geo.connection, points, o.step, o.tol), o.seed});
    rep.oracle.push_back(
        {cross_validate_curvature(spec, geo.curvature, points, o.step, o.curvature_tol), o.seed});
  }
  return rep;
}

ClassificationReport run_checks(const std::filesystem::path& file, const RunOptions& options) {
  ParseOptions po;
  po.allow_trig = options.trig;
  ManifoldSpec spec = load_spec(file, po);
  if (options.deta) spec.deta = *options.deta;
  resolve_checks(spec, options);  // reject unknown names before the heavy work
  const Geometry geo = Geometry::compute(std::move(spec));
  return run_checks(geo, options);
}

std::string render_text(const ClassificationReport& report) {
  std::ostringstream os;
  os << "instance        " << report.instance << " (dim " << report.dim << ")\n";
  os << "coordinates     ";
  for (std::size_t i = 0; i < report.coords.size(); ++i) os << (i ? ", " : "") << report.coords[i];
  os << "\nframe           ";
  for (std::size_t i = 0; i < report.frame_names.size(); ++i) os << (i ? ", " : "") << report.frame_names[i];
  os << "\nconventions     d eta " << deta_name(report.deta)
     << "; R(X,Y)Z = lambda(g(Y,Z)X - g(X,Z)Y)\n";
  os << "excluded locus  " << (report.excluded_locus == "1" ? "none" : report.excluded_locus + " = 0") << "\n";
  os << "self-tests      " << report.self_tests_passed << " passed\n\n";

  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  os << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(10) << "status"
     << "detail\n";
  for (const auto& c : report.checks) {
    std::string detail;
    if (c.k) detail = "k = " + c.k->render(report.coords);
    if (c.lambda) detail = "lambda = " + c.lambda->render(report.coords);
    // Only zero-only differs from the status column.
    if (c.recurrence_status && *c.recurrence_status != status_name(c.status)) {
      detail = *c.recurrence_status;
      if (!c.recurrence_A.empty()) {
        detail += ", A = (";
        for (std::size_t i = 0; i < c.recurrence_A.size(); ++i) {
          detail += (i ? ", " : "") + c.recurrence_A[i].render(report.coords);
        }
        detail += ")";
      }
    }
    if (c.witness) {
      if (!detail.empty()) detail += "; ";
      detail += c.witness->describe(report.frame_names) + " = " + c.witness->value.render(report.coords);
    }
    os << std::setw(static_cast<int>(width) + 2) << c.name << std::setw(10) << status_name(c.status)
       << detail << "\n";
    for (const auto& n : c.notes) os << std::string(width + 12, ' ') << "- " << n << "\n";
  }
  if (!report.oracle.empty()) {
    os << "\noracle\n";
    for (const auto& s : report.oracle) {
      const NumericReport& o = s.report;
      os << "  " << std::setw(12) << o.tensor << (o.pass ? "pass" : "FAIL") << "  max rel dev "
         << format_double(o.max_rel_dev) << " (tol " << format_double(o.tolerance) << ") over "
         << o.points << " points, seed " << s.seed << ", step " << format_double(o.step);
      if (!o.pass) os << ", worst component (" << join_indices(o.worst_component) << ")";
      os << "\n";
    }
  }
  return os.str();
}

std::string render_json(const ClassificationReport& report) {
  ordered_json j;
  j["instance"] = report.instance;
  j["dim"] = report.dim;
  j["convention"] = {{"deta", deta_name(report.deta)},
                     {"curvature", "R(X,Y)Z = lambda(g(Y,Z)X - g(X,Z)Y)"},
                     {"nullity", "R(X,Y)xi = k(eta(Y)X - eta(X)Y)"}};
  j["excluded_locus"] = report.excluded_locus;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json r;
    r["name"] = c.name;
    r["status"] = std::string(status_name(c.status));
    if (c.witness) {
      r["witness"] = {{"indices", c.witness->indices},
                      {"expr", c.witness->value.render(report.coords)},
                      {"label", c.witness->describe(report.frame_names)}};
    } else {
      r["witness"] = nullptr;
    }
    r["constants"] = {{"k", c.k ? ordered_json(c.k->render(report.coords)) : ordered_json(nullptr)},
                      {"lambda", c.lambda ? ordered_json(c.lambda->render(report.coords)) : ordered_json(nullptr)}};
    if (c.recurrence_status) {
      ordered_json a = ordered_json::array();
      for (const auto& x : c.recurrence_A) a.push_back(x.render(report.coords));
      r["recurrence"] = {{"status", *c.recurrence_status}, {"A", a}};
    } else {
      r["recurrence"] = nullptr;
    }
    r["notes"] = c.notes;
    checks.push_back(std::move(r));
  }
  j["checks"] = std::move(checks);
  ordered_json oracle = ordered_json::array();
  for (const auto& s : report.oracle) {
    const NumericReport& o = s.report;
    oracle.push_back({{"tensor", o.tensor},
                      {"points", o.points},
                      {"seed", s.seed},
                      {"step", o.step},
                      {"tolerance", o.tolerance},
                      {"max_abs_dev", o.max_abs_dev},
                      {"max_rel_dev", o.max_rel_dev},
                      {"worst_component", o.worst_component},
                      {"pass", o.pass}});
  }
  j["oracle"] = std::move(oracle);
  j["version"] = report.version;
  return j.dump(2) + "\n";
}

std::string describe_tables(const Geometry& geo) {
  const auto names = geo.spec.frame_names();
  const auto coords = geo.spec.chart.names();
  const std::size_t n = geo.dim();
  std::ostringstream os;
  os << "brackets\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (geo.brackets(k, i, j).is_zero()) continue;
        os << "  [" << names[i] << "," << names[j] << "] along " << names[k] << " = "
           << geo.brackets(k, i, j).render(coords) << "\n";
      }
    }
  }
  os << "connection\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const ScalarExpr& g = geo.connection.gamma(k, i, j);
        if (g.is_zero()) continue;
        os << "  nabla_" << names[i] << " " << names[j] << " along " << names[k] << " = " << g.render(coords)
           << "\n";
      }
    }
  }
  os << "curvature\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const ScalarExpr& r = geo.curvature.R(l, i, j, k);
          if (r.is_zero()) continue;
          os << "  R(" << names[i] << "," << names[j] << ")" << names[k] << " along " << names[l] << " = "
             << r.render(coords) << "\n";
        }
      }
    }
  }
  return os.str();
}

std::vector<Expectation> parse_expectations(std::string_view text) {
  std::vector<Expectation> out;
  const auto& known = known_check_names();
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expectation '" + item + "' is not check=status");
    Expectation e;
    e.check = item.substr(0, eq);
    if (std::find(known.begin(), known.end(), e.check) == known.end()) {
      throw ParseError("unknown check '" + e.check + "' in expectation");
    }
    const auto st = status_from_name(item.substr(eq + 1));
    if (!st) throw ParseError("unknown status '" + item.substr(eq + 1) + "' in expectation");
    e.status = *st;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> expectation_mismatches(const ClassificationReport& report,
                                                const std::vector<Expectation>& expect) {
  std::vector<std::string> out;
  for (const auto& e : expect) {
    const CheckRecord* r = report.find(e.check);
    if (r == nullptr) {
      out.push_back(e.check + ": expected " + std::string(status_name(e.status)) + ", check was not run");
    } else if (r->status != e.status) {
      out.push_back(e.check + ": expected " + std::string(status_name(e.status)) + ", got " +
                    std::string(status_name(r->status)));
    }
  }
  return out;
}

Emitted emit_report(const ClassificationReport& report, ReportFormat format,
                    const std::vector<Expectation>& expect) {
  Emitted out;
  out.output = format == ReportFormat::Json ? render_json(report) : render_text(report);
  const auto mismatches = expectation_mismatches(report, expect);
  for (const auto& m : mismatches) out.diagnostics += "expectation mismatch: " + m + "\n";
  if (!mismatches.empty()) out.exit_code = 1;
  for (const auto& s : report.oracle) {
    if (s.report.pass) continue;
    out.diagnostics += "oracle disagreement on " + s.report.tensor + " at component (" +
                       join_indices(s.report.worst_component) + "), relative deviation " +
                       format_double(s.report.max_rel_dev) + "\n";
    out.exit_code = 3;
  }
  return out;
}

}  // namespace cmv
