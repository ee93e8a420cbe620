#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "loccwit/fixtures.hpp"
#include "problem_file.hpp"
#include "report_file.hpp"

namespace loccwit::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (fs::path(LOCCWIT_FIXTURE_DIR) / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("loccwit_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kMinimal = R"({
  "layout": {"A": 2, "B": 2},
  "states": [{"name": "x", "amplitudes": [[1,0],[0,0],[0,0],[0,0]]}]
})";

TEST(ProblemFile, ErrorsCarryFieldPath) {
  auto message = [](const std::string& text) {
    try {
      parse_problem(text, "t.json");
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"layout": {"A": 2, "B": 0}, "states": []})").find("/layout/B"), std::string::npos);
  EXPECT_NE(message(R"({"layout": {"A": 2}, "states": [{"amplitudes": [[1,0]]}]})").find("/states/0/amplitudes"),
            std::string::npos);
  EXPECT_NE(message(R"({"layout": {"A": 2}, "states": [{"amplitudes": [[1,0],[0,"x"]]}]})")
                .find("/states/0/amplitudes/1"),
            std::string::npos);
  EXPECT_NE(message(R"({"states": []})").find("/layout"), std::string::npos);
  // Syntax errors report a position instead.
  EXPECT_NE(message("{\"layout\": ").find("t.json"), std::string::npos);
}

TEST(ProblemFile, RoundTripPreservesStates) {
  const auto p = problem_from_witness(
      WitnessProblem(fixtures::set_S_prime(), {fixtures::bell_states("C", "D")[0], fixtures::bell_states("C", "D")[1],
                                               fixtures::bell_states("C", "D")[2]},
                     {0.16, 0.16, 0.68}),
      "round trip");
  const auto back = parse_problem(write_problem(p));
  ASSERT_EQ(back.states.size(), 3u);
  ASSERT_TRUE(back.detectors.has_value());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.states[i].name, p.states[i].name);
    EXPECT_LE(max_abs_difference(back.states[i].state, p.states[i].state), 1e-15);
    EXPECT_LE(max_abs_difference(back.detectors->states[i].state, p.detectors->states[i].state), 1e-15);
  }
  EXPECT_EQ(back.detectors->probs, p.detectors->probs);
  EXPECT_EQ(back.comment, "round trip");
}

TEST(ProblemFile, ProbabilitiesRescaledOnlyWithinFileTolerance) {
  auto text = [](const std::string& probs) {
    return std::string(R"({"layout": {"A": 2, "B": 2}, "states": [
      {"amplitudes": [[1,0],[0,0],[0,0],[0,0]]}, {"amplitudes": [[0,0],[0,0],[0,0],[1,0]]}],
      "detectors": {"layout": {"C": 2, "D": 2}, "states": [
      {"amplitudes": [[1,0],[0,0],[0,0],[0,0]]}, {"amplitudes": [[0,0],[0,0],[0,0],[1,0]]}],
      "probs": )") + probs + "}}";
  };
  const auto ok = parse_problem(text("[0.5, 0.500000001]")).witness_problem(1e-9);
  EXPECT_NEAR(ok.probs()[0] + ok.probs()[1], 1.0, 1e-15);
  EXPECT_THROW(parse_problem(text("[0.5, 0.6]")).witness_problem(1e-9), ParseError);
}

TEST(Report, RoundTrip) {
  Report r;
  r.command = "check";
  r.seed = 7;
  r.absorb(check_witness(full_basis_problem(fixtures::bell_states())));
  r.warnings = {"w"};
  const Report back = parse_report(write_report(r));
  EXPECT_EQ(back.command, "check");
  EXPECT_EQ(back.seed, 7u);
  EXPECT_EQ(back.verdict, "CERTIFIED_INDISTINGUISHABLE");
  ASSERT_TRUE(back.margin.has_value());
  EXPECT_NEAR(*back.margin, 0.5, 1e-12);
  EXPECT_EQ(back.source_schmidt, r.source_schmidt);
  EXPECT_EQ(back.warnings, r.warnings);
}

TEST(Report, RejectsUnknownVerdict) {
  Report r;
  r.command = "check";
  r.verdict = "CERTIFIED_INDISTINGUISHABLE";
  std::string text = write_report(r);
  text.replace(text.find("CERTIFIED_INDISTINGUISHABLE"), 27, "PROBABLY_FINE");
  EXPECT_THROW(parse_report(text), ParseError);
}

TEST(Cli, SchmidtOutputs) {
  auto r = run({"schmidt", fixture("bell.json"), "--cut", "AC:BD"});
  EXPECT_EQ(r.code, kPositive);
  EXPECT_EQ(r.out, "1, 0, 0, 0\n");

  r = run({"schmidt", fixture("bell.json"), "--cut", "A:B", "--state", "phi_plus"});
  EXPECT_EQ(r.out, "0.5, 0.5\n");

  r = run({"schmidt", fixture("computational_2x2.json"), "--cut", "A:B", "--state", "psi2"});
  EXPECT_EQ(r.code, kPositive) << r.err;
  EXPECT_EQ(r.out, "1, 0\n");
}

TEST(Cli, InputErrorsExitWithTwo) {
  const auto dir = scratch_dir("errors");
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << R"({"layout": {"A": 2, "B": 2}, "states": [{"amplitudes": [[1,0]]}]})";

  auto r = run({"check", bad});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("/states/0/amplitudes"), std::string::npos);

  EXPECT_EQ(run({"check", (dir / "missing.json").string()}).code, kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kInputError);
  EXPECT_EQ(run({"schmidt", fixture("bell.json")}).code, kInputError);  // --cut is required

  // check without detectors
  const auto plain = (dir / "plain.json").string();
  std::ofstream(plain) << kMinimal;
  EXPECT_EQ(run({"check", plain}).code, kInputError);
  EXPECT_EQ(run({"schmidt", plain, "--cut", "A:Q"}).code, kInputError);
  EXPECT_EQ(run({"search", plain, "--detector-dims", "2"}).code, kInputError);
  EXPECT_EQ(run({"search", plain, "--mode", "SIDEWAYS"}).code, kInputError);
}

TEST(Cli, CheckWritesParseableReport) {
  const auto dir = scratch_dir("report");
  const auto out = (dir / "r.json").string();
  auto r = run({"check", fixture("s_prime_witness.json"), "--out", out});
  EXPECT_EQ(r.code, kPositive);
  const Report rep = parse_report(slurp(out));
  EXPECT_EQ(rep.verdict, "CERTIFIED_INDISTINGUISHABLE");
  ASSERT_TRUE(rep.margin.has_value());
  EXPECT_NEAR(*rep.margin, 0.0099324231757557, 1e-9);
  EXPECT_FALSE(rep.input.empty());
}

TEST(Cli, NormalizationWarningReported) {
  const auto dir = scratch_dir("norm");
  const auto in = (dir / "n.json").string();
  std::ofstream(in) << R"({"layout": {"A": 2, "B": 2},
    "states": [{"name": "loose", "amplitudes": [[2,0],[0,0],[0,0],[0,0]]}],
    "detectors": {"layout": {"C": 2, "D": 2}, "states": [{"amplitudes": [[1,0],[0,0],[0,0],[0,0]]}],
                  "probs": [1]}})";
  const auto out = (dir / "r.json").string();
  auto r = run({"check", in, "--out", out});
  EXPECT_EQ(r.code, kNegative);
  EXPECT_NE(r.out.find("warning: input state 'loose'"), std::string::npos);
  EXPECT_FALSE(parse_report(slurp(out)).warnings.empty());
}

TEST(Cli, SearchDumpRechecks) {
  const auto dir = scratch_dir("dump");
  const auto dump = (dir / "best.json").string();
  auto r = run({"search", fixture("s_prime.json"), "--dump", dump});
  ASSERT_EQ(r.code, kPositive) << r.out << r.err;
  auto again = run({"check", dump});
  EXPECT_EQ(again.code, kPositive);
  EXPECT_NE(again.out.find("verdict: CERTIFIED_INDISTINGUISHABLE"), std::string::npos);
}

TEST(Cli, RandomBasisIsReproducible) {
  const auto a = run({"random-basis", "--dims", "2,3", "--seed", "5"});
  const auto b = run({"random-basis", "--dims", "2,3", "--seed", "5"});
  ASSERT_EQ(a.code, kPositive);
  EXPECT_EQ(a.out, b.out);
  const auto f = parse_problem(a.out);
  EXPECT_EQ(f.states.size(), 6u);
  EXPECT_TRUE(validate_state_set(f.pure_states()).complete);
}

TEST(Cli, WrittenFixturesMatchBundledOnes) {
  const auto dir = scratch_dir("fixtures");
  for (const auto& name : write_fixtures(dir.string()))
    EXPECT_EQ(slurp((dir / name).string()), slurp(fixture(name))) << name;
}

TEST(Cli, BundledFixturesReproduceExpectedVerdicts) {
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(LOCCWIT_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const auto f = read_problem(entry.path().string());
    if (!f.expect) continue;
    const auto dir = scratch_dir("expect");
    const auto report = (dir / "r.json").string();
    std::vector<std::string> args = {f.expect->command, entry.path().string(), "--out", report};
    for (const auto& a : f.expect->args)
      args.push_back(a.ends_with(".json") ? fixture(a) : a);
    const auto r = run(args);
    EXPECT_NE(r.code, kInputError) << entry.path() << "\n" << r.err;
    EXPECT_EQ(parse_report(slurp(report)).verdict, f.expect->verdict) << entry.path();
    ++checked;
  }
  EXPECT_GE(checked, 12);
}

}  // namespace
}  // namespace loccwit::cli
