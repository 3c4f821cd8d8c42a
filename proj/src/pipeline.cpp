#include "apfact/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <variant>

#include "apfact/errors.hpp"
#include "apfact/suite.hpp"

namespace apfact {

const char* to_string(Command c) {
  switch (c) {
    case Command::Classify:
      return "classify";
    case Command::Solve:
      return "solve";
    case Command::Factorize:
      return "factorize";
    case Command::Verify:
      return "verify";
    case Command::Suite:
      return "suite";
  }
  return "?";
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Text:
      return "text";
    case OutputFormat::Csv:
      return "csv";
  }
  return "?";
}

Command command_from_name(const std::string& name) {
  if (name == "classify") return Command::Classify;
  if (name == "solve") return Command::Solve;
  if (name == "factorize") return Command::Factorize;
  if (name == "verify") return Command::Verify;
  if (name == "suite") return Command::Suite;
  throw ParseError("unknown command \"" + name + "\"");
}

OutputFormat format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  throw ParseError("unknown output format \"" + name + "\"");
}

namespace {

// Moves the representation offset; every derived field follows.
ClassMembership rebind_offset(const ClassMembership& mem,
                              const Frequency& nu) {
  if (nu < mem.nu_min || mem.nu_max < nu) {
    throw NuOutOfRange("offset " + nu.str() + " outside [" +
                       mem.nu_min.str() + ", " + mem.nu_max.str() + "]");
  }
  ClassMembership out = mem;
  const APPoly gp = mem.g_plus();
  const APPoly gm = mem.g_minus();
  out.chosen_nu = nu;
  out.beta = mem.lambda / Frequency(mem.N) - nu;
  out.a_plus = shift(gp, -nu);
  out.a_minus = shift(gm, out.beta);
  if (mem.N > 1) {
    const Frequency n1{mem.N - 1};
    out.b_plus = shift(out.a_minus, out.beta / n1);
    out.b_minus = shift(out.a_plus, -(nu / n1));
  }
  return out;
}

struct SolveOutcome {
  std::optional<RHSolution> solution;
  std::optional<ClassMembership> membership;
  std::string note;
};

// Shared construction dispatch: one-sided forms for zero-frequency input,
// the structured formula for class members (N = 1 reproduces the big-gap
// solution exactly), the bare big-gap formula for a zero off-diagonal.
SolveOutcome build_solution(const TriangularSymbol& sym,
                            const JobOptions& opt) {
  SolveOutcome out;
  const GapData gap = decompose(sym);
  if (gap.has_zero_frequency) {
    if (auto sol = solve_one_sided(sym)) {
      out.solution = *sol;
    } else {
      out.note =
          "zero-frequency term present but neither one-sided form applies";
    }
    return out;
  }
  if (sym.g.is_zero()) {
    out.solution = solve_biggap(gap, sym.lambda,
                                opt.nu_override.value_or(Frequency(0)));
    return out;
  }
  ClassifyResult cr = classify(sym);
  if (const auto* nc = std::get_if<NotInClass>(&cr)) {
    out.note = "outside the structured class: " + nc->violated;
    return out;
  }
  ClassMembership mem = std::get<ClassMembership>(cr);
  if (opt.nu_override) mem = rebind_offset(mem, *opt.nu_override);
  out.membership = mem;
  out.solution = solve_structured(mem, sym.lambda);
  return out;
}

RunResult run_classify(const JobSpec& job) {
  RunResult res;
  res.report["command"] = "classify";
  res.report["symbol"] = to_json(job.symbol);
  const GapData gap = decompose(job.symbol);
  res.report["gap"] = to_json(gap);
  if (gap.has_zero_frequency) {
    res.report["not_in_class"] = "zero-frequency term present";
    return res;
  }
  ClassifyResult cr = classify(job.symbol);
  if (const auto* nc = std::get_if<NotInClass>(&cr)) {
    res.report["not_in_class"] = nc->violated;
    return res;
  }
  ClassMembership mem = std::get<ClassMembership>(cr);
  if (job.options.nu_override) {
    mem = rebind_offset(mem, *job.options.nu_override);
  }
  res.report["membership"] = to_json(mem);
  return res;
}

RunResult run_solve(const JobSpec& job) {
  RunResult res;
  res.report["command"] = "solve";
  res.report["symbol"] = to_json(job.symbol);
  const SolveOutcome out = build_solution(job.symbol, job.options);
  if (!out.solution) {
    res.report["note"] = out.note;
    res.exit_code = 2;
    return res;
  }
  if (out.membership) res.report["membership"] = to_json(*out.membership);
  res.report["solution"] = to_json(*out.solution);
  const VerificationReport rep = verify_solution(job.symbol, *out.solution);
  res.report["verification"] = to_json(rep);
  res.exit_code = rep.all_passed() ? 0 : 1;
  return res;
}

RunResult run_factorize(const JobSpec& job) {
  RunResult res;
  const TriangularSymbol& sym = job.symbol;
  res.report["command"] = "factorize";
  res.report["symbol"] = to_json(sym);

  const ToeplitzVerdict verdict = classify_toeplitz(sym, job.options.apw_flag);
  res.report["verdict"] = to_json(verdict);
  res.exit_code = verdict.verdict == OperatorClass::Unknown ? 2 : 0;

  const GapData gap = decompose(sym);
  std::optional<IndexResult> idx;
  if (!gap.has_zero_frequency) {
    std::optional<int> blocks;
    if (!sym.g.is_zero()) {
      ClassifyResult cr = classify(sym);
      if (const auto* mem = std::get_if<ClassMembership>(&cr)) {
        blocks = mem->N;
      }
    } else {
      blocks = 1;
    }
    if (blocks && *blocks == 1) {
      idx = indices_biggap(gap, sym.lambda);
    } else if (blocks) {
      idx = indices_structured(gap, sym.lambda, *blocks,
                               strip_condition(gap.g_minus, gap.g_plus));
    }
  }

  const SolveOutcome out = build_solution(sym, job.options);
  if (gap.has_zero_frequency && out.solution) {
    IndexResult one;
    one.status = IndexStatus::Canonical;
    one.case_tag = "one-sided";
    idx = one;
  }
  if (idx) res.report["index"] = to_json(*idx);

  const bool factorable =
      idx && (idx->status == IndexStatus::Canonical ||
              idx->status == IndexStatus::NonCanonical);
  if (factorable && out.solution) {
    try {
      const Factorization fac =
          construct_factorization(sym, *out.solution, job.options.tol);
      res.report["factorization"] = to_json(fac);
      res.report["verification"] =
          to_json(grid_residual(sym, fac, 100, job.options.seed));
    } catch (const CoronaUnsupported& e) {
      res.report["construction_error"] = e.what();
    }
  } else if (!out.note.empty()) {
    res.report["note"] = out.note;
  }
  return res;
}

RunResult run_verify(const JobSpec& job) {
  if (!job.provided) {
    throw ValidationError("verify needs a factorization in the job document");
  }
  RunResult res;
  const TriangularSymbol& sym = job.symbol;
  const Factorization& fac = *job.provided;
  res.report["command"] = "verify";
  res.report["symbol"] = to_json(sym);
  res.report["factorization"] = to_json(fac);

  VerificationReport rep = grid_residual(sym, fac, 200, job.options.seed);
  const double allowed =
      std::max(job.options.tol, 10 * fac.truncation_residual);
  rep.add("residual-bound", rep.max_residual <= allowed,
          "max residual " + std::to_string(rep.max_residual) +
              " against bound " + std::to_string(allowed));

  const auto audit = [&rep](const char* name, const Mat2& factor,
                            HalfPlane side) {
    const VerificationReport a = spectrum_sign_audit(factor, side);
    std::string detail;
    for (const auto& c : a.checks) {
      if (!c.pass) detail += (detail.empty() ? "" : "; ") + c.detail;
    }
    rep.add(name, a.all_passed(), detail);
  };
  audit("minus-factor-spectra", fac.G_minus, HalfPlane::Minus);
  audit("plus-factor-spectra", fac.G_plus, HalfPlane::Plus);

  for (const auto& [name, factor] :
       {std::pair<const char*, const Mat2&>{"minus-factor-determinant",
                                            fac.G_minus},
        std::pair<const char*, const Mat2&>{"plus-factor-determinant",
                                            fac.G_plus}}) {
    const APPoly d = det(factor);
    const Complex c = mean_value(d);
    const bool constant =
        max_coeff_distance(d, APPoly{c}) <= std::max(1e-10, allowed);
    const bool nonzero = std::abs(c) > 1e-13;
    rep.add(name, constant && nonzero,
            constant ? (nonzero ? "" : "determinant vanishes")
                     : "determinant is not constant");
  }
  const Frequency sum = fac.D_exponents.first + fac.D_exponents.second;
  rep.add("mean-motion-balance", sum.is_zero(),
          sum.is_zero() ? "" : "middle exponents sum to " + sum.str());
  rep.add("index-order",
          fac.D_exponents.first.sign() <= 0 &&
              fac.D_exponents.second.sign() >= 0,
          "");

  res.report["verification"] = to_json(rep);
  res.report["pass"] = rep.all_passed();
  res.exit_code = rep.all_passed() ? 0 : 1;
  return res;
}

RunResult run_suite() {
  RunResult res;
  res.report["command"] = "suite";
  Json arr = Json::array();
  bool all = true;
  for (const CriterionResult& c : run_acceptance_suite()) {
    arr.push_back(Json{{"number", c.number},
                       {"name", c.name},
                       {"pass", c.pass},
                       {"detail", c.detail}});
    all = all && c.pass;
  }
  res.report["criteria"] = arr;
  res.report["all_pass"] = all;
  res.exit_code = all ? 0 : 1;
  return res;
}

std::string join(const Json& arr) {
  std::string out;
  for (const Json& v : arr) {
    if (!out.empty()) out += ", ";
    out += v.get<std::string>();
  }
  return out;
}

std::string render_poly(const Json& j) {
  return to_string(appoly_from_json(j));
}

void render_matrix(std::ostringstream& os, const char* name, const Json& m) {
  os << name << ":\n";
  os << "  [ " << render_poly(m["e11"]) << " | " << render_poly(m["e12"])
     << " ]\n";
  os << "  [ " << render_poly(m["e21"]) << " | " << render_poly(m["e22"])
     << " ]\n";
}

std::string emit_text(const Json& report) {
  std::ostringstream os;
  os << "command: " << report.value("command", "?") << "\n";
  if (report.contains("symbol")) {
    const Json& s = report["symbol"];
    os << "symbol: lambda = " << s["lambda"].get<std::string>()
       << ", g = " << render_poly(s["g"]) << "\n";
  }
  if (report.contains("membership")) {
    const Json& m = report["membership"];
    os << "membership: N = " << m["n"].get<int>() << ", offset window ["
       << m["nu_min"].get<std::string>() << ", "
       << m["nu_max"].get<std::string>() << "], chosen "
       << m["chosen_nu"].get<std::string>() << "\n";
    os << "  a_minus = " << render_poly(m["a_minus"])
       << ", a_plus = " << render_poly(m["a_plus"]) << "\n";
  }
  if (report.contains("not_in_class")) {
    os << "not in class: " << report["not_in_class"].get<std::string>()
       << "\n";
  }
  if (report.contains("verdict")) {
    const Json& v = report["verdict"];
    const std::string verdict = v["verdict"].get<std::string>();
    os << "verdict: " << verdict;
    if (v.contains("mu")) os << ", mu = " << v["mu"].get<std::string>();
    if (v["not_semi_fredholm"].get<bool>()) os << ", not semi-Fredholm";
    if (verdict != "unknown" && v["only_if"].get<bool>()) os << " (exact)";
    os << "\n";
    if (!v["rules"].empty()) os << "rules: " << join(v["rules"]) << "\n";
    if (!v["conditions"].empty()) {
      os << "conditions: " << join(v["conditions"]) << "\n";
    }
    const std::string detail = v.value("detail", "");
    if (!detail.empty()) os << "detail: " << detail << "\n";
  }
  if (report.contains("index")) {
    const Json& i = report["index"];
    const std::string status = i["status"].get<std::string>();
    os << "index: " << status;
    if (status == "canonical" || status == "non-canonical") {
      os << ", mu = " << i["mu"].get<std::string>() << ", partial indices ("
         << i["delta1"].get<std::string>() << ", "
         << i["delta2"].get<std::string>() << ")";
    }
    os << "\n";
    os << "case: " << i["case_tag"].get<std::string>() << "\n";
  }
  if (report.contains("solution")) {
    const Json& s = report["solution"];
    os << "solution (" << s["provenance"].get<std::string>() << ", offset "
       << s["used_nu"].get<std::string>() << "):\n";
    os << "  phi_plus  = (" << render_poly(s["phi1_plus"]) << ", "
       << render_poly(s["phi2_plus"]) << ")\n";
    os << "  phi_minus = (" << render_poly(s["phi1_minus"]) << ", "
       << render_poly(s["phi2_minus"]) << ")\n";
  }
  if (report.contains("factorization")) {
    const Json& f = report["factorization"];
    render_matrix(os, "minus factor", f["g_minus"]);
    render_matrix(os, "plus factor", f["g_plus"]);
    os << "middle exponents: (" << f["d_exponents"][0].get<std::string>()
       << ", " << f["d_exponents"][1].get<std::string>() << ")\n";
    const double trunc = f.value("truncation_residual", 0.0);
    if (trunc > 0) os << "truncation residual: " << trunc << "\n";
  }
  if (report.contains("verification")) {
    const Json& v = report["verification"];
    os << "verification: max residual " << v["max_residual"].get<double>()
       << " over " << v["sample_count"].get<int>() << " samples\n";
    for (const Json& c : v["checks"]) {
      if (!c["pass"].get<bool>()) {
        os << "  FAILED " << c["name"].get<std::string>() << ": "
           << c["detail"].get<std::string>() << "\n";
      }
    }
  }
  if (report.contains("criteria")) {
    for (const Json& c : report["criteria"]) {
      char line[512];
      std::snprintf(line, sizeof line, "criterion %2d %-28s %s  %s",
                    c["number"].get<int>(),
                    c["name"].get<std::string>().c_str(),
                    c["pass"].get<bool>() ? "PASS" : "FAIL",
                    c["detail"].get<std::string>().c_str());
      os << line << "\n";
    }
    os << (report["all_pass"].get<bool>() ? "all criteria passed"
                                          : "CRITERIA FAILED")
       << "\n";
  }
  for (const char* key : {"note", "construction_error"}) {
    if (report.contains(key)) {
      os << key << ": " << report[key].get<std::string>() << "\n";
    }
  }
  return os.str();
}

double residual_at(const Mat2& G, const Factorization& fac, double x) {
  const Complex z{x, 0.0};
  const CMat2 gp = eval(fac.G_plus, z);
  const Complex detp = gp[0][0] * gp[1][1] - gp[0][1] * gp[1][0];
  if (std::abs(detp) < 1e-13) {
    throw SingularFactor("plus factor singular at x = " + std::to_string(x));
  }
  const CMat2 gm = eval(fac.G_minus, z);
  const Complex f1 =
      std::exp(Complex(0.0, fac.D_exponents.first.to_double() * x));
  const Complex f2 =
      std::exp(Complex(0.0, fac.D_exponents.second.to_double() * x));
  const Complex i11 = gp[1][1] / detp, i12 = -gp[0][1] / detp;
  const Complex i21 = -gp[1][0] / detp, i22 = gp[0][0] / detp;
  const Complex a11 = gm[0][0] * f1, a12 = gm[0][1] * f2;
  const Complex a21 = gm[1][0] * f1, a22 = gm[1][1] * f2;
  const CMat2 g = eval(G, z);
  return std::max({std::abs(g[0][0] - (a11 * i11 + a12 * i21)),
                   std::abs(g[0][1] - (a11 * i12 + a12 * i22)),
                   std::abs(g[1][0] - (a21 * i11 + a22 * i21)),
                   std::abs(g[1][1] - (a21 * i12 + a22 * i22))});
}

std::string emit_csv(const Json& report) {
  std::ostringstream os;
  os << "x,abs_g_minus,abs_g_plus,residual\n";
  if (!report.contains("symbol")) return os.str();
  const TriangularSymbol sym = symbol_from_json(report["symbol"]);
  const GapData gap = decompose(sym);
  std::optional<Factorization> fac;
  if (report.contains("factorization")) {
    fac = factorization_from_json(report["factorization"]);
  }
  const Mat2 G = symbol_matrix(sym);
  char line[160];
  for (int i = 0; i <= 200; ++i) {
    const double x = -50.0 + 0.5 * i;
    const double gm = std::abs(eval(gap.g_minus, Complex(x, 0.0)));
    const double gp = std::abs(eval(gap.g_plus, Complex(x, 0.0)));
    const double r = fac ? residual_at(G, *fac, x) : 0.0;
    std::snprintf(line, sizeof line, "%.6f,%.12g,%.12g,%.12g\n", x, gm, gp,
                  r);
    os << line;
  }
  return os.str();
}

}  // namespace

JobSpec parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("job document must be an object");

  JobSpec job;
  if (j.contains("command")) {
    job.command = command_from_name(j["command"].get<std::string>());
  }
  const Json& sym_src = j.contains("symbol") ? j["symbol"] : j;
  if (sym_src.contains("lambda")) {
    job.symbol = symbol_from_json(sym_src);
  } else if (job.command != Command::Suite) {
    throw ParseError("missing field \"lambda\"");
  }
  if (j.contains("factorization")) {
    job.provided = factorization_from_json(j["factorization"]);
  }
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (o.contains("tol")) job.options.tol = o["tol"].get<double>();
    if (o.contains("apw")) job.options.apw_flag = o["apw"].get<bool>();
    if (o.contains("nu")) {
      job.options.nu_override = frequency_from_json(o["nu"]);
    }
    if (o.contains("output")) {
      job.options.output = format_from_name(o["output"].get<std::string>());
    }
    if (o.contains("seed")) job.options.seed = o["seed"].get<unsigned>();
  }
  if (job.options.tol <= 0) {
    throw ValidationError("tolerance must be positive");
  }
  return job;
}

RunResult run(const JobSpec& job) {
  switch (job.command) {
    case Command::Classify:
      return run_classify(job);
    case Command::Solve:
      return run_solve(job);
    case Command::Factorize:
      return run_factorize(job);
    case Command::Verify:
      return run_verify(job);
    case Command::Suite:
      return run_suite();
  }
  throw ValidationError("unhandled command");
}

std::string emit_report(const Json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return report.dump(2) + "\n";
    case OutputFormat::Text:
      return emit_text(report);
    case OutputFormat::Csv:
      return emit_csv(report);
  }
  throw ValidationError("unhandled output format");
}

}  // namespace apfact
