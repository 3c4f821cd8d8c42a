#include <algorithm>

#include "doctest.h"

#include "apfact/errors.hpp"
#include "apfact/pipeline.hpp"

using namespace apfact;

namespace {

const char* kTwoBlock = R"({
  "command": "classify",
  "lambda": "4/1",
  "g": [
    {"freq": "-1/1", "re": 1.0, "im": 0.0},
    {"freq": "1/1", "re": 1.0, "im": 0.0}
  ]
})";

std::string factorize_job(const char* lambda, const char* freq) {
  Json j;
  j["command"] = "factorize";
  j["lambda"] = lambda;
  j["g"] = Json::array({Json{{"freq", std::string("-") + freq}, {"re", 1.0},
                             {"im", 0.0}},
                        Json{{"freq", freq}, {"re", 1.0}, {"im", 0.0}}});
  return j.dump();
}

}  // namespace

TEST_CASE("command and format names") {
  CHECK(command_from_name("classify") == Command::Classify);
  CHECK(command_from_name("suite") == Command::Suite);
  CHECK(format_from_name("csv") == OutputFormat::Csv);
  CHECK(to_string(Command::Factorize) == std::string("factorize"));
  CHECK(to_string(OutputFormat::Text) == std::string("text"));
  CHECK_THROWS_AS(command_from_name("transmogrify"), ParseError);
  CHECK_THROWS_AS(format_from_name("xml"), ParseError);
}

TEST_CASE("job parsing") {
  SUBCASE("inline symbol") {
    const JobSpec job = parse_input(kTwoBlock);
    CHECK(job.command == Command::Classify);
    CHECK(job.symbol.lambda == Frequency(4));
    CHECK(job.symbol.g.term_count() == 2);
    CHECK(job.options.tol == doctest::Approx(1e-10));
  }
  SUBCASE("nested symbol with options") {
    const JobSpec job = parse_input(R"({
      "command": "solve",
      "symbol": {"lambda": "2/1",
                 "g": [{"freq": "1/1", "re": 1.0, "im": 0.0}]},
      "options": {"tol": 1e-6, "apw": true, "nu": "1/1",
                  "output": "text", "seed": 99}
    })");
    CHECK(job.command == Command::Solve);
    CHECK(job.options.tol == doctest::Approx(1e-6));
    CHECK(job.options.apw_flag);
    CHECK(job.options.nu_override == Frequency(1));
    CHECK(job.options.output == OutputFormat::Text);
    CHECK(job.options.seed == 99u);
  }
  SUBCASE("unreduced numbers normalize") {
    const JobSpec job = parse_input(
        R"({"lambda": "4/2", "g": [{"freq": "2/4", "re": 1.0, "im": 0.0}]})");
    CHECK(job.symbol.lambda == Frequency(2));
    CHECK(job.symbol.g.terms()[0].freq == Frequency(1, 2));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(parse_input("not json"), ParseError);
    CHECK_THROWS_AS(parse_input("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_input(R"({"command": "classify"})"), ParseError);
    CHECK_THROWS_AS(
        parse_input(R"({"lambda": "0/1", "g": []})"), ValidationError);
    CHECK_THROWS_AS(
        parse_input(
            R"({"lambda": "2/1", "g": [], "options": {"tol": -1.0}})"),
        ValidationError);
  }
  SUBCASE("suite needs no symbol") {
    const JobSpec job = parse_input(R"({"command": "suite"})");
    CHECK(job.command == Command::Suite);
  }
}

TEST_CASE("classification run") {
  const RunResult res = run(parse_input(kTwoBlock));
  CHECK(res.exit_code == 0);
  CHECK(res.report["command"] == "classify");
  CHECK(res.report["membership"]["n"] == 2);
  CHECK(res.report["gap"]["eta1_plus"]["value"] == "1/1");
}

TEST_CASE("solve run verifies its own identities") {
  JobSpec job = parse_input(kTwoBlock);
  job.command = Command::Solve;
  const RunResult res = run(job);
  CHECK(res.exit_code == 0);
  CHECK(res.report["solution"]["provenance"] == "structured");
  CHECK(res.report["verification"]["checks"].is_array());

  SUBCASE("offset overrides outside the window are refused") {
    job.options.nu_override = Frequency(1, 2);
    CHECK_THROWS_AS(run(job), NuOutOfRange);
  }
  SUBCASE("unsolvable zero-frequency input exits undecided") {
    JobSpec stuck = parse_input(R"({
      "command": "solve",
      "lambda": "2/1",
      "g": [{"freq": "-1/1", "re": 1.0, "im": 0.0},
            {"freq": "0/1", "re": 1.0, "im": 0.0},
            {"freq": "1/1", "re": 1.0, "im": 0.0}]
    })");
    const RunResult r = run(stuck);
    CHECK(r.exit_code == 2);
    CHECK(r.report.contains("note"));
  }
}

TEST_CASE("factorize run emits a verifiable document") {
  const RunResult res = run(parse_input(factorize_job("2/1", "1/1")));
  CHECK(res.exit_code == 0);
  CHECK(res.report["verdict"]["verdict"] == "invertible");
  CHECK(res.report["index"]["status"] == "canonical");
  CHECK(res.report.contains("factorization"));
  CHECK(res.report["verification"]["max_residual"].get<double>() < 1e-12);

  SUBCASE("the emitted report parses straight back as a verify job") {
    Json doc = res.report;
    doc["command"] = "verify";
    const JobSpec vjob = parse_input(doc.dump());
    CHECK(vjob.provided.has_value());
    const RunResult vres = run(vjob);
    CHECK(vres.exit_code == 0);
    CHECK(vres.report["pass"] == true);
  }
  SUBCASE("verify without a factorization is invalid") {
    JobSpec vjob = parse_input(kTwoBlock);
    vjob.command = Command::Verify;
    CHECK_THROWS_AS(run(vjob), ValidationError);
  }
  SUBCASE("a corrupted factor fails verification") {
    Json doc = res.report;
    doc["command"] = "verify";
    doc["factorization"]["g_plus"]["e11"][0]["re"] = 1.5;
    const RunResult vres = run(parse_input(doc.dump()));
    CHECK(vres.exit_code == 1);
    CHECK(vres.report["pass"] == false);
  }
}

TEST_CASE("noncanonical factorize reports the index pair") {
  const RunResult res = run(parse_input(factorize_job("3/1", "2/1")));
  CHECK(res.exit_code == 0);
  CHECK(res.report["verdict"]["verdict"] == "factorable-non-canonical");
  CHECK(res.report["verdict"]["not_semi_fredholm"] == true);
  CHECK(res.report["index"]["mu"] == "1/1");
  CHECK(res.report["factorization"]["d_exponents"][0] == "-1/1");
}

TEST_CASE("undecided verdicts exit with code two") {
  const RunResult res = run(parse_input(R"({
    "command": "factorize",
    "lambda": "4/1",
    "g": [{"freq": "-2/1", "re": 1.0, "im": 0.0},
          {"freq": "-1/1", "re": 1.0, "im": 0.0},
          {"freq": "1/1", "re": 1.0, "im": 0.0},
          {"freq": "3/2", "re": 1.0, "im": 0.0},
          {"freq": "2/1", "re": 1.0, "im": 0.0}]
  })"));
  CHECK(res.exit_code == 2);
  CHECK(res.report["verdict"]["verdict"] == "unknown");
}

TEST_CASE("rendering") {
  const RunResult res = run(parse_input(factorize_job("3/1", "2/1")));
  SUBCASE("json output is the report verbatim") {
    const std::string out = emit_report(res.report, OutputFormat::Json);
    CHECK(Json::parse(out) == res.report);
  }
  SUBCASE("text output names the index and the case") {
    const std::string out = emit_report(res.report, OutputFormat::Text);
    CHECK(out.find("mu = 1/1") != std::string::npos);
    CHECK(out.find("case: gap-minimum") != std::string::npos);
    CHECK(out.find("factorable-non-canonical") != std::string::npos);
  }
  SUBCASE("csv output samples the reconstruction") {
    const std::string out = emit_report(res.report, OutputFormat::Csv);
    CHECK(out.rfind("x,abs_g_minus,abs_g_plus,residual\n", 0) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 202);
  }
}

TEST_CASE("self-check command") {
  JobSpec job;
  job.command = Command::Suite;
  const RunResult res = run(job);
  CHECK(res.report["criteria"].is_array());
  CHECK(res.report["criteria"].size() == 10);
  const std::string text = emit_report(res.report, OutputFormat::Text);
  CHECK(text.find("criterion") != std::string::npos);
}
