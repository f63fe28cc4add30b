// One line per acceptance criterion; exits nonzero if any fails.
#include "cmv/errors.hpp"
#include "cmv/expr_parser.hpp"
#include "cmv/geometry.hpp"
#include "cmv/oracle.hpp"
#include "cmv/report.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Tolerances pinned for the oracle criterion.
constexpr double kConnectionTol = 1e-6;
constexpr double kCurvatureTol = 1e-4;
constexpr double kStep = 1e-5;
constexpr std::size_t kPoints = 10;
constexpr std::uint64_t kSeed = 7;

using cmv::ScalarExpr;
using cmv::Status;

std::string path(const std::string& name) { return std::string(CMV_TEST_DATA) + "/" + name + ".cm"; }

cmv::Geometry geometry(const std::string& name) {
  cmv::ParseOptions po;
  po.allow_trig = name == "flat_contact";
  return cmv::Geometry::compute(cmv::load_spec(path(name), po));
}

ScalarExpr expr(const std::string& text) {
  static const cmv::Chart chart({"x", "y", "z"});
  return cmv::parse_scalar(text, chart, false);
}

const std::vector<std::string> kCorpus3 = {"punctured",         "heisenberg",         "hyperbolic",
                                           "euclidean",         "flat_contact",       "darboux",
                                           "punctured_bad_phi", "heisenberg_bad_phi"};

bool battery_holds(const cmv::Geometry& g) {
  const auto b = cmv::axiom_battery(g.frame, g.metric, g.contact, g.h, g.connection, g.curvature);
  return std::all_of(b.begin(), b.end(), [](const auto& nv) { return nv.verdict.holds(); }) &&
         cmv::contact_condition(g.contact).verdict.holds();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct Run {
  int exit_code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string("\"") + CMVERIFY_EXE + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome connection_golden() {
  Outcome o;
  const auto g = geometry("punctured");
  const auto& G = g.connection.gamma;
  // gamma(k, i, j): nabla_{E_i} E_j along E_k.
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        ScalarExpr want;
        if (k == 1 && i == 0 && j == 0) want = expr("-2/x");
        if (k == 0 && i == 0 && j == 1) want = expr("2/x");
        if (k == 2 && i == 1 && j == 0) want = ScalarExpr(-2);
        if (k == 0 && i == 1 && j == 2) want = ScalarExpr(2);
        std::ostringstream w;
        w << "gamma(" << k + 1 << "," << i + 1 << "," << j + 1 << ")";
        o.require(G(k, i, j).same_form(want), w.str());
      }
    }
  }
  return o;
}

Outcome refutation() {
  Outcome o;
  const auto g = geometry("punctured");
  const auto e = [](std::size_t i) { return cmv::FrameVec::unit(3, i); };
  const cmv::FrameVec r = g.curvature.apply(e(0), e(1), e(2));
  o.require(r.c[0].is_zero() && r.c[1].same_form(expr("-4/x")) && r.c[2].is_zero(), "R(E1,E2)E3");
  const auto n = cmv::nullity_classify(g.curvature, g.contact, g.metric, &g.ricci);
  o.require(n.status == Status::Refuted, "nullity status");
  o.require(n.witness && n.witness->indices == std::vector<std::size_t>{1, 2, 2} &&
                n.witness->value.same_form(expr("-4/x")),
            "nullity witness");
  o.require(cli("verify \"" + path("punctured") + "\" --checks nullity --expect nullity=refuted").exit_code == 0,
            "--expect exit code");
  const auto rep = cmv::run_checks(path("punctured"), {});
  const auto* rec = rep.find("nullity");
  o.require(rec && std::count(rec->notes.begin(), rec->notes.end(), "claimed k = -4/x is not constant") == 1,
            "claimed k note");
  return o;
}

Outcome axiom_battery() {
  Outcome o;
  const auto g = geometry("punctured");
  o.require(battery_holds(g), "battery");
  const auto& h = g.h.h;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const ScalarExpr want = i != j ? ScalarExpr() : ScalarExpr(i == 0 ? -1 : i == 1 ? 1 : 0);
      o.require(h(i, j).same_form(want), "h entry");
    }
  }
  o.require(g.contact.convention == cmv::DetaConvention::Half, "half convention");
  const ScalarExpr g_e1_phi_e2 = g.metric.g.form(cmv::FrameVec::unit(3, 0), g.contact.phi.column(1));
  o.require(g.contact.deta(0, 1).same_form(ScalarExpr(-1)) && g_e1_phi_e2.same_form(ScalarExpr(-1)),
            "d eta(E1,E2)");
  return o;
}

Outcome decomposition() {
  Outcome o;
  for (const char* name : {"punctured", "heisenberg"}) {
    const auto g = geometry(name);
    o.require(cmv::check_3d_decomposition(g.curvature, g.ricci, g.metric).holds(), name);
  }
  std::size_t contact_metric = 0;
  for (const auto& name : kCorpus3) {
    const auto g = geometry(name);
    if (!battery_holds(g)) continue;
    ++contact_metric;
    for (std::size_t w = 0; w < 3; ++w) {
      o.require(cmv::nabla_eta(g.frame, g.connection, g.contact, cmv::FrameVec::unit(3, w), g.contact.xi)
                    .is_zero(),
                name + " (nabla eta)(xi)");
    }
  }
  o.require(contact_metric >= 3, "contact metric instances in corpus");
  return o;
}

Outcome sasakian_corpus() {
  Outcome o;
  const auto g = geometry("heisenberg");
  const auto n = cmv::nullity_classify(g.curvature, g.contact, g.metric, &g.ricci);
  o.require(n.status == Status::Fits && n.k && n.k->same_form(ScalarExpr(1)), "k = 1");
  o.require(cmv::sasakian_check(g.curvature, g.contact).status == Status::Holds, "sasakian");
  o.require(cmv::nijenhuis_check(g.frame, g.contact).status == Status::Holds, "normality");
  o.require(cmv::phi_symmetric_check(g.curvature, g.contact).status == Status::Holds, "phi-symmetric");
  o.require(cmv::phi_recurrence_solve(g.curvature, g.contact).status != cmv::RecurrenceStatus::Recurrent,
            "not recurrent");
  return o;
}

Outcome constant_curvature() {
  Outcome o;
  const auto g = geometry("hyperbolic");
  const auto cc = cmv::check_constant_curvature(g.curvature, g.metric);
  o.require(cc.verdict.status == Status::Holds && cc.lambda && cc.lambda->same_form(ScalarExpr(-1)),
            "lambda = -1");
  const auto nr = cmv::nabla_R(g.curvature, g.connection, g.frame);
  o.require(std::all_of(nr.data().begin(), nr.data().end(), [](const auto& v) { return v.is_zero(); }),
            "nabla R = 0");
  const auto rs = cmv::phi_recurrence_solve(g.curvature, g.contact);
  o.require(rs.status == cmv::RecurrenceStatus::ZeroOnly &&
                std::all_of(rs.A.begin(), rs.A.end(), [](const auto& a) { return a.is_zero(); }),
            "A = 0 only");
  for (const char* name : {"euclidean", "flat_contact"}) {
    const auto f = geometry(name);
    const auto fc = cmv::check_constant_curvature(f.curvature, f.metric);
    o.require(fc.verdict.holds() && fc.lambda && fc.lambda->is_zero(), std::string(name) + " lambda = 0");
    o.require(cmv::phi_recurrence_solve(f.curvature, f.contact).status == cmv::RecurrenceStatus::Trivial,
              std::string(name) + " trivial");
  }
  return o;
}

Outcome contrapositive() {
  Outcome o;
  for (const auto& name : kCorpus3) {
    const auto g = geometry(name);
    const bool axioms = battery_holds(g);
    const bool nk = cmv::nullity_classify(g.curvature, g.contact, g.metric, &g.ricci).status == Status::Fits;
    const auto rs = cmv::phi_recurrence_solve(g.curvature, g.contact);
    const bool recurrent = rs.status == cmv::RecurrenceStatus::Recurrent &&
                           std::any_of(rs.A.begin(), rs.A.end(), [](const auto& a) { return !a.is_zero(); });
    const bool flat = cmv::check_flat(g.curvature).status == Status::Holds;
    o.require(!(axioms && nk && recurrent && !flat), name);
  }
  o.require(kCorpus3.size() >= 6, "corpus size");
  return o;
}

Outcome riemannian_invariants() {
  Outcome o;
  std::vector<std::string> all = kCorpus3;
  all.push_back("heisenberg5");
  for (const auto& name : all) {
    const auto g = geometry(name);
    o.require(cmv::check_metric_compatibility(g.connection, g.metric, g.frame).holds(), name + " metric");
    o.require(cmv::check_torsion_free(g.connection, g.brackets).holds(), name + " torsion");
    o.require(cmv::check_curvature_antisymmetry(g.curvature).holds(), name + " antisymmetry");
    o.require(cmv::check_first_bianchi(g.curvature).holds(), name + " first Bianchi");
    o.require(cmv::check_second_bianchi(g.curvature).holds(), name + " second Bianchi");
  }
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  double worst_conn = 0, worst_curv = 0;
  for (const char* name : {"punctured", "heisenberg", "hyperbolic"}) {
    const auto g = geometry(name);
    const auto pts = cmv::sample_points(g.spec, kPoints, kSeed);
    const auto c = cmv::cross_validate_connection(g.spec, g.connection, pts, kStep, kConnectionTol);
    const auto r = cmv::cross_validate_curvature(g.spec, g.curvature, pts, kStep, kCurvatureTol);
    o.require(c.pass && c.points >= 10, std::string(name) + " connection");
    o.require(r.pass && r.points >= 10, std::string(name) + " curvature");
    worst_conn = std::max(worst_conn, c.max_rel_dev);
    worst_curv = std::max(worst_curv, r.max_rel_dev);
  }
  const auto g = geometry("punctured");
  const auto pts = cmv::sample_points(g.spec, kPoints, kSeed);
  cmv::ConnectionTable bad = g.connection;
  bad.gamma(2, 1, 1) += ScalarExpr(1);
  const auto c = cmv::cross_validate_connection(g.spec, bad, pts, kStep, kConnectionTol);
  o.require(!c.pass && c.worst_component == std::vector<std::size_t>{3, 2, 2}, "corruption detected");
  std::ostringstream s;
  s << "max rel dev connection " << worst_conn << ", curvature " << worst_curv;
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const char* name : {"punctured", "heisenberg", "hyperbolic"}) {
    const std::string args = "verify \"" + path(name) + "\" --json - --oracle points=10,seed=3";
    const Run a = cli(args), b = cli(args);
    o.require(a.exit_code == 0 && !a.out.empty() && a.out == b.out, std::string(name) + " JSON bytes");
  }
  const std::string ex = "verify \"" + path("punctured") + "\"";
  const std::string hy = "verify \"" + path("hyperbolic") + "\"";
  const std::vector<std::pair<std::string, int>> contracts = {
      {ex + " --expect nullity=refuted", 0},
      {ex + " --expect nullity=fits", 1},
      {"verify \"" + path("bad_expression") + "\"", 2},
      {"verify \"" + path("bad_singular") + "\"", 2},
      {"verify \"" + path("no_such_file") + "\"", 2},
      {ex + " --checks nonsense", 2},
      {ex + " --expect nullity=perhaps", 2},
      {hy + " --checks flat --oracle points=4,step=0.5", 3},
  };
  for (const auto& [args, code] : contracts) {
    const int got = cli(args).exit_code;
    o.require(got == code, "exit " + std::to_string(got) + " != " + std::to_string(code) + " for " + args);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"connection golden table", connection_golden},
      {"refutation of the nullity condition", refutation},
      {"axiom battery and h tensor", axiom_battery},
      {"3D decomposition and (nabla eta)(xi) = 0", decomposition},
      {"Sasakian corpus", sasakian_corpus},
      {"constant-curvature chain", constant_curvature},
      {"no non-flat recurrent N(k) instance", contrapositive},
      {"Riemannian invariants", riemannian_invariants},
      {"finite-difference oracle agreement", oracle_agreement},
      {"determinism and exit codes", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ": " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
