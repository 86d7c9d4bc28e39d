// endlab <command> --config <path> [--out <dir>] [--format json,csv] [--workers k]
//
// Exit codes: 0 success, 1 I/O or internal error, 2 validation failure,
// 3 budget truncation, 4 acceptance-check failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "endlab/commands.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTruncated = 3;
constexpr int kExitCheckFailed = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw endlab::Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_violations(const endlab::ValidationError& e) {
  std::cerr << "validation failed:\n";
  for (const auto& v : e.violations()) std::cerr << "  " << (v.location.empty() ? "/" : v.location) << ": " << v.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks, end boundaries and their dimensions"};
  std::string command, config_path, out_dir = ".", formats = "json,csv";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool quiet = false;
  app.add_option("command", command, "Pipeline to run")->required()->check(CLI::IsMember(endlab::command_names()));
  app.add_option("--config", config_path, "Experiment config (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", formats, "Comma-separated list of json, csv")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (results do not depend on this)")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_flag("--quiet", quiet, "Only print errors");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    const auto emit = endlab::parse_formats(formats);
    const auto config = endlab::parse_config(read_file(config_path));
    endlab::set_default_workers(workers);
    const auto report = endlab::run_command(config, command);
    const auto paths = endlab::emit_report(report, out_dir, emit);
    if (!quiet) {
      for (const auto& c : report.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      for (const auto& t : report.truncation) std::cout << "TRUNCATED " << t.stage << ": " << t.message << "\n";
      for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
    }
    if (report.truncated()) return kExitTruncated;
    if (!report.passed()) return kExitCheckFailed;
    return 0;
  } catch (const endlab::ValidationError& e) {
    print_violations(e);
    return kExitValidation;
  } catch (const endlab::PreconditionError& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
