#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "apfact/errors.hpp"
#include "apfact/pipeline.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw apfact::ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triangular almost-periodic symbol toolkit"};
  std::string input = "-";
  std::string command, output, nu;
  double tol = 0.0;
  bool apw = false;
  unsigned seed = 0;

  app.add_option("-i,--input", input, "job document (JSON), - for stdin");
  auto* cmd_opt = app.add_option(
      "-c,--command", command, "classify | solve | factorize | verify | suite");
  auto* tol_opt =
      app.add_option("--tol", tol, "numeric tolerance (default 1e-10)");
  auto* apw_opt = app.add_flag(
      "--apw", apw, "treat coefficient data as absolutely summable");
  auto* nu_opt = app.add_option("--nu", nu, "offset override, NUM/DEN");
  auto* out_opt = app.add_option("-o,--output", output, "json | text | csv");
  auto* seed_opt = app.add_option("--seed", seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    apfact::JobSpec job;
    // `--command suite` runs self-contained; only then may input be absent
    const bool bare_suite = cmd_opt->count() > 0 && command == "suite" &&
                            app.count("--input") == 0;
    if (bare_suite) {
      job.command = apfact::Command::Suite;
    } else {
      job = apfact::parse_input(slurp(input));
    }
    if (cmd_opt->count() > 0) job.command = apfact::command_from_name(command);
    if (tol_opt->count() > 0) {
      if (!(tol > 0)) {
        throw apfact::ValidationError("tolerance must be positive");
      }
      job.options.tol = tol;
    }
    if (apw_opt->count() > 0) job.options.apw_flag = apw;
    if (nu_opt->count() > 0) {
      job.options.nu_override = apfact::Frequency::parse(nu);
    }
    if (out_opt->count() > 0) {
      job.options.output = apfact::format_from_name(output);
    }
    if (seed_opt->count() > 0) job.options.seed = seed;

    const apfact::RunResult res = apfact::run(job);
    const std::string text = apfact::emit_report(res.report, job.options.output);
    std::fwrite(text.data(), 1, text.size(), stdout);
    return res.exit_code;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
