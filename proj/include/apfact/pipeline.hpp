#pragma once

#include <optional>
#include <string>

#include "apfact/json_io.hpp"

namespace apfact {

enum class Command { Classify, Solve, Factorize, Verify, Suite };
enum class OutputFormat { Json, Text, Csv };

const char* to_string(Command c);
const char* to_string(OutputFormat f);
Command command_from_name(const std::string& name);
OutputFormat format_from_name(const std::string& name);

struct JobOptions {
  double tol = 1e-10;
  bool apw_flag = false;
  std::optional<Frequency> nu_override;
  OutputFormat output = OutputFormat::Json;
  unsigned seed = 12345;
};

struct JobSpec {
  Command command = Command::Classify;
  TriangularSymbol symbol;
  std::optional<Factorization> provided;  // verify re-checks this
  JobOptions options;
};

// Parses one job document. The symbol sits inline ("lambda", "g",
// "declared_gaps") or under "symbol"; "command", "factorization" and
// "options" {tol, apw, nu, output, seed} are optional, except that verify
// needs a factorization and only suite may omit the symbol. Emitted
// factorize reports parse back directly as verify jobs.
JobSpec parse_input(const std::string& text);

struct RunResult {
  Json report;
  int exit_code = 0;  // 0 decided, 2 undecided; errors throw (CLI maps to 1)
};

RunResult run(const JobSpec& job);

// json: the report verbatim; text: human summary naming verdict, index,
// case tag and fired rules; csv: "x,abs_g_minus,abs_g_plus,residual"
// sample traces rebuilt from the report's embedded symbol/factors.
std::string emit_report(const Json& report, OutputFormat format);

}  // namespace apfact
