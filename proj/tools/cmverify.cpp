#include "cmv/errors.hpp"
#include "cmv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  return out;
}

int verify(const std::string& file, const std::string& checks, const std::string& json_out,
           const std::string& deta, const std::string& expect, const std::string& oracle, bool trig,
           bool describe) {
  cmv::RunOptions options;
  options.checks = split_list(checks);
  options.trig = trig;
  if (deta == "half") options.deta = cmv::DetaConvention::Half;
  if (deta == "full") options.deta = cmv::DetaConvention::Full;

  try {
    const auto expectations = cmv::parse_expectations(expect);
    if (!oracle.empty()) options.oracle = cmv::parse_oracle_options(oracle == "default" ? "" : oracle);

    cmv::ParseOptions po;
    po.allow_trig = trig;
    cmv::ManifoldSpec spec = cmv::load_spec(file, po);
    if (options.deta) spec.deta = *options.deta;
    cmv::resolve_checks(spec, options);
    const cmv::Geometry geo = cmv::Geometry::compute(std::move(spec));
    const cmv::ClassificationReport report = cmv::run_checks(geo, options);

    const bool json_stdout = json_out == "-";
    const cmv::Emitted text = cmv::emit_report(report, cmv::ReportFormat::Text, expectations);
    if (!json_stdout) std::cout << text.output;
    if (describe) std::cout << "\n" << cmv::describe_tables(geo);
    if (!json_out.empty()) {
      const std::string json = cmv::render_json(report);
      if (json_stdout) {
        std::cout << json;
      } else {
        std::ofstream os(json_out, std::ios::binary);
        if (!os || !(os << json)) {
          std::cerr << json_out << ": cannot write report\n";
          return 2;
        }
      }
    }
    std::cerr << text.diagnostics;
    return text.exit_code;
  } catch (const cmv::ParseError& e) {
    if (e.line() > 0) {
      std::cerr << file << ":" << e.line() << ":" << e.column() << ": error: " << e.bare_message() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  } catch (const cmv::InvariantViolation& e) {
    std::cerr << file << ": internal error: " << e.what() << "\n";
    return 3;
  } catch (const cmv::Error& e) {
    std::cerr << file << ": error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << file << ": error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for contact metric structures given on a global frame"};
  app.set_version_flag("--version", std::string(cmv::engine_version()));
  app.require_subcommand(1);

  auto* cmd = app.add_subcommand("verify", "Run checks on a spec file");
  std::string file, checks, json_out, deta, expect, oracle;
  bool trig = false;
  bool describe = false;
  cmd->add_option("file", file, "Spec file")->required();
  cmd->add_option("--checks", checks, "Comma-separated checks (overrides the file)");
  cmd->add_option("--json", json_out, "Write the JSON report to a file, or '-' for stdout");
  cmd->add_option("--deta", deta, "d eta convention")->check(CLI::IsMember({"half", "full"}));
  cmd->add_option("--expect", expect, "Assertions check=status,...");
  cmd->add_option("--oracle", oracle, "Finite-difference cross-check: points=N,seed=S,step=H,tol=T")
      ->expected(0, 1)
      ->default_str("default");
  cmd->add_flag("--trig-ext", trig, "Allow sin/cos of a coordinate");
  cmd->add_flag("--describe", describe, "Print brackets, connection and curvature tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return verify(file, checks, json_out, deta, expect, oracle, trig, describe);
}
