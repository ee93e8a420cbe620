#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "loccwit/fixtures.hpp"
#include "loccwit/schmidt.hpp"
#include "loccwit/search.hpp"
#include "loccwit/witness.hpp"
#include "problem_file.hpp"
#include "report_file.hpp"

namespace loccwit::cli {

namespace {

constexpr double kDefaultTol = 1e-9;

std::string format_number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

std::string format_vector(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ParseError(path + ": cannot open for writing");
  f << text;
}

void print_witness(std::ostream& out, const Report& r, const std::string& cut) {
  out << "verdict: " << r.verdict << "\n";
  if (r.margin) out << "margin: " << format_number(*r.margin) << "\n";
  out << "source schmidt (" << cut << "): " << SchmidtVector(r.source_schmidt).to_string() << "\n";
  out << "target average: " << SchmidtVector(r.target_average).to_string() << "\n";
  out << "partial sums (source): " << format_vector(r.source_partial_sums) << "\n";
  out << "partial sums (average): " << format_vector(r.average_partial_sums) << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
}

void finish_report(Report& r, const ProblemFile& f, const std::string& out_path) {
  r.input = to_json(f);
  for (const auto& s : f.states)
    if (s.state.normalization_warning())
      r.warnings.push_back("input state '" + s.name + "' had norm " + format_number(s.state.input_norm()) +
                           " and was normalized");
  if (f.detectors)
    for (const auto& s : f.detectors->states)
      if (s.state.normalization_warning())
        r.warnings.push_back("input detector '" + s.name + "' had norm " + format_number(s.state.input_norm()) +
                             " and was normalized");
  std::sort(r.warnings.begin(), r.warnings.end());
  r.warnings.erase(std::unique(r.warnings.begin(), r.warnings.end()), r.warnings.end());
  if (!out_path.empty()) write_text(out_path, write_report(r));
}

struct Common {
  std::string input;
  std::string out_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;

  double resolve_tol(const ProblemFile& f) const { return tol.value_or(f.tol.value_or(kDefaultTol)); }
  std::uint64_t resolve_seed(const ProblemFile& f) const { return seed.value_or(f.seed.value_or(0)); }
};

int cmd_schmidt(const Common& c, const std::string& cut_text, const std::string& state_name, std::ostream& out) {
  const ProblemFile f = read_problem(c.input);
  const Bipartition cut = Bipartition::parse(cut_text);
  bool on_states = true;
  for (const auto* side : {&cut.left(), &cut.right()})
    for (const auto& l : *side) on_states &= f.layout.contains(l);

  if (on_states) {
    bool printed = false;
    for (const auto& s : f.states) {
      if (!state_name.empty() && s.name != state_name) continue;
      const auto v = schmidt(s.state, cut);
      if (state_name.empty() && f.states.size() > 1) out << s.name << ": ";
      out << v.to_string() << "\n";
      printed = true;
    }
    if (!printed) throw ParseError("no state named '" + state_name + "'");
    return kPositive;
  }
  if (!f.detectors) throw ParseError("cut " + cut.to_string() + " does not match layout " + f.layout.to_string());
  const WitnessProblem p = f.witness_problem(c.resolve_tol(f));
  out << schmidt(build_joint_state(p), cut).to_string() << "\n";
  return kPositive;
}

int cmd_check(const Common& c, std::ostream& out) {
  const ProblemFile f = read_problem(c.input);
  if (!f.detectors) throw ParseError(c.input + ": check needs a detectors block");
  const double tol = c.resolve_tol(f);
  const WitnessProblem p = f.witness_problem(tol);
  Report r;
  r.command = "check";
  r.seed = c.resolve_seed(f);
  r.absorb(check_witness(p, tol));
  finish_report(r, f, c.out_path);
  print_witness(out, r, p.witness_cut().to_string());
  return r.verdict == "CERTIFIED_INDISTINGUISHABLE" ? kPositive : kNegative;
}

struct SearchFlags {
  int restarts = 64;
  int max_iters = 2000;
  unsigned threads = 0;
  std::string detector_dims = "2,2";
  std::string mode = "FIXED_BELL_ENUMERATION";
  std::string dump_path;
};

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    const auto a = std::stoul(text.substr(0, comma));
    const auto b = std::stoul(text.substr(comma + 1));
    if (a == 0 || b == 0) throw std::invalid_argument("");
    return {a, b};
  } catch (const std::exception&) {
    throw ParseError("expected two positive integers like 2,2, got '" + text + "'");
  }
}

int cmd_search(const Common& c, const SearchFlags& s, std::ostream& out) {
  const ProblemFile f = read_problem(c.input);
  SearchConfig cfg;
  std::tie(cfg.detector_dim_c, cfg.detector_dim_d) = parse_dims(s.detector_dims);
  cfg.restarts = s.restarts;
  cfg.max_iters = s.max_iters;
  cfg.threads = s.threads;
  cfg.seed = c.resolve_seed(f);
  cfg.tol = c.resolve_tol(f);
  cfg.mode = parse_search_mode(s.mode);
  const SearchResult result = search(f.pure_states(), cfg);

  Report r;
  r.command = "search";
  r.seed = cfg.seed;
  r.absorb(result.best_report);
  r.details = {{"found", result.found},
               {"restart_index", result.restart_index},
               {"iterations_used", result.iterations_used},
               {"restarts", cfg.restarts},
               {"max_iters", cfg.max_iters},
               {"mode", std::string(to_string(cfg.mode))},
               {"detector_dims", {cfg.detector_dim_c, cfg.detector_dim_d}},
               {"best_problem", to_json(problem_from_witness(*result.best_problem))}};
  finish_report(r, f, c.out_path);

  out << "found: " << (result.found ? "true" : "false") << " (restart " << result.restart_index << ", "
      << result.iterations_used << " iterations)\n";
  out << "probabilities: " << format_vector(result.best_problem->probs()) << "\n";
  print_witness(out, r, result.best_problem->witness_cut().to_string());

  if (!s.dump_path.empty()) {
    ProblemFile dump = problem_from_witness(*result.best_problem, "best witness found by loccwit search (seed " +
                                                                      std::to_string(cfg.seed) + ")");
    dump.layout = f.layout;
    for (std::size_t i = 0; i < dump.states.size(); ++i) dump.states[i].name = f.states[i].name;
    dump.tol = cfg.tol;
    dump.seed = cfg.seed;
    write_text(s.dump_path, write_problem(dump));
  }
  return result.found ? kPositive : kNegative;
}

int cmd_full_basis(const Common& c, std::ostream& out) {
  const ProblemFile f = read_problem(c.input);
  const double tol = c.resolve_tol(f);
  const FullBasisReport fb = classify_full_basis(f.pure_states(), tol);

  Report r;
  r.command = "full-basis";
  r.seed = c.resolve_seed(f);
  r.absorb(fb.witness);
  r.verdict = std::string(to_string(fb.classification));
  r.details = {{"witness_verdict", std::string(to_string(fb.witness.verdict))},
               {"cross_check_ok", fb.cross_check_ok},
               {"identity_deviation", fb.identity_deviation},
               {"largest_schmidt", fb.largest_schmidt},
               {"entangled_indices", fb.entangled_indices}};
  finish_report(r, f, c.out_path);

  out << "classification: " << r.verdict << "\n";
  out << "entangled vectors: " << fb.entangled_indices.size() << " of " << f.states.size() << "\n";
  out << "witness (conjugate detectors, uniform weights): " << to_string(fb.witness.verdict)
      << ", margin " << format_number(fb.witness.margin) << "\n";
  out << "cross-check: " << (fb.cross_check_ok ? "ok" : "FAILED") << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  if (!fb.cross_check_ok) return kInputError;
  return fb.classification == BasisClass::kContainsEntangledLoccIndistinguishable ? kPositive : kNegative;
}

int cmd_protocol(const Common& c, const std::string& measurement_path, std::ostream& out) {
  const ProblemFile f = read_problem(c.input);
  const ProblemFile m = read_problem(measurement_path);
  if (m.layout.size() != 1) throw ParseError(measurement_path + ": measurement basis must be on a single part");
  const std::string label = m.layout.parts().front().label;
  if (!f.layout.contains(label))
    throw ParseError("measured part '" + label + "' is not in layout " + f.layout.to_string());
  const double tol = c.resolve_tol(f);
  const bool ok = verify_one_way_protocol(f.pure_states(), m.pure_states(), tol, label);

  Report r;
  r.command = "protocol-verify";
  r.seed = c.resolve_seed(f);
  r.tol = tol;
  r.verdict = ok ? "PROTOCOL_DISTINGUISHES" : "PROTOCOL_FAILS";
  r.details = {{"measured_part", label}, {"measurement", to_json(m)}};
  finish_report(r, f, c.out_path);
  out << "verdict: " << r.verdict << "\n";
  out << "measured part: " << label << " (" << m.states.size() << " outcomes)\n";
  return ok ? kPositive : kNegative;
}

int cmd_random_basis(const std::string& dims_text, const std::string& labels_text, std::uint64_t seed,
                     const std::string& out_path, std::ostream& out) {
  const auto [m, n] = parse_dims(dims_text);
  const auto cut = Bipartition::parse(labels_text);
  if (cut.left().size() != 1 || cut.right().size() != 1) throw ParseError("labels must look like A:B");
  const auto basis = random_orthonormal_basis(SubsystemLayout({{cut.left()[0], m}, {cut.right()[0], n}}), seed);
  ProblemFile f = problem_from_states(basis, "random orthonormal basis, seed " + std::to_string(seed));
  f.seed = seed;
  const std::string text = write_problem(f);
  if (out_path.empty()) out << text;
  else write_text(out_path, text);
  return kPositive;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify LOCC indistinguishability of orthogonal bipartite pure states", "loccwit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LOCCWIT_VERSION));

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("input", common.input, "problem file (JSON)")->required();
    sub->add_option("--tol", common.tol, "tolerance (default 1e-9)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "master seed (default 0)");
    if (with_out) sub->add_option("--out", common.out_path, "write a machine-readable report here");
  };

  std::string cut_text, state_name;
  auto* schmidt_cmd = app.add_subcommand("schmidt", "print the Schmidt vector across a cut");
  add_common(schmidt_cmd, false);
  schmidt_cmd->add_option("--cut", cut_text, "cut such as A:B or AC:BD")->required();
  schmidt_cmd->add_option("--state", state_name, "only this named state");

  auto* check_cmd = app.add_subcommand("check", "test a detector witness");
  add_common(check_cmd, true);

  SearchFlags sflags;
  auto* search_cmd = app.add_subcommand("search", "search for a certifying witness");
  add_common(search_cmd, true);
  search_cmd->add_option("--restarts", sflags.restarts, "number of restarts")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-iters", sflags.max_iters, "iterations per restart")->check(CLI::PositiveNumber);
  search_cmd->add_option("--threads", sflags.threads, "worker threads (0 = all cores)");
  search_cmd->add_option("--detector-dims", sflags.detector_dims, "detector dimensions dC,dD");
  search_cmd->add_option("--mode", sflags.mode, "FIXED_BELL_ENUMERATION or FREE_DETECTORS");
  search_cmd->add_option("--dump", sflags.dump_path, "write the best problem here");

  auto* full_cmd = app.add_subcommand("full-basis", "classify a complete orthonormal basis");
  add_common(full_cmd, true);

  std::string measurement_path;
  auto* proto_cmd = app.add_subcommand("protocol-verify", "verify a one-way measurement protocol");
  add_common(proto_cmd, true);
  proto_cmd->add_option("--measurement", measurement_path, "measurement basis file")->required();

  std::string dims_text = "3,3", labels_text = "A:B", rb_out;
  std::uint64_t rb_seed = 0;
  auto* rb_cmd = app.add_subcommand("random-basis", "write a random orthonormal basis problem file");
  rb_cmd->add_option("--dims", dims_text, "local dimensions m,n");
  rb_cmd->add_option("--labels", labels_text, "part labels, e.g. A:B");
  rb_cmd->add_option("--seed", rb_seed, "seed");
  rb_cmd->add_option("--out", rb_out, "output path (default stdout)");

  std::string fixture_dir;
  auto* fx_cmd = app.add_subcommand("fixtures", "write the bundled fixture files");
  fx_cmd->add_option("--dir", fixture_dir, "target directory")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*schmidt_cmd) return cmd_schmidt(common, cut_text, state_name, out);
    if (*check_cmd) return cmd_check(common, out);
    if (*search_cmd) return cmd_search(common, sflags, out);
    if (*full_cmd) return cmd_full_basis(common, out);
    if (*proto_cmd) return cmd_protocol(common, measurement_path, out);
    if (*rb_cmd) return cmd_random_basis(dims_text, labels_text, rb_seed, rb_out, out);
    if (*fx_cmd) {
      for (const auto& name : write_fixtures(fixture_dir)) out << name << "\n";
      return kPositive;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

std::vector<std::string> write_fixtures(const std::string& dir) {
  namespace fx = fixtures;
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto save = [&](const std::string& name, ProblemFile f, std::optional<Expectation> expect) {
    f.expect = std::move(expect);
    write_text((std::filesystem::path(dir) / name).string(), write_problem(f));
    written.push_back(name);
  };
  auto expect = [](std::string command, std::string verdict, std::vector<std::string> args = {}) {
    return Expectation{std::move(command), std::move(args), std::move(verdict)};
  };
  const std::vector<double> witness_probs = {0.16, 0.16, 0.68};
  auto bell_cd = fx::bell_states("C", "D");
  const std::vector<PureState> three_bell = {bell_cd[0], bell_cd[1], bell_cd[2]};

  auto named = [](ProblemFile f, std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size() && i < f.states.size(); ++i) f.states[i].name = names[i];
    if (f.detectors)
      for (std::size_t i = 0; i < f.detectors->states.size() && i < names.size(); ++i)
        f.detectors->states[i].name = "B_" + names[i];
    return f;
  };
  const std::vector<std::string> bell_names = {"phi_plus", "phi_minus", "psi_plus", "psi_minus"};

  const WitnessProblem bell(fx::bell_states(), bell_cd, {0.25, 0.25, 0.25, 0.25});
  save("bell.json",
       named(problem_from_witness(bell, "Four Bell states with Bell detectors, uniform weights. "
                                        "full-basis -> CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE; "
                                        "schmidt --cut AC:BD -> 1, 0, 0, 0"),
             bell_names),
       expect("full-basis", "CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE"));
  save("bell_witness.json",
       named(problem_from_witness(bell, "Bell witness: check -> CERTIFIED_INDISTINGUISHABLE, margin 0.5"),
             bell_names),
       expect("check", "CERTIFIED_INDISTINGUISHABLE"));

  save("s.json",
       problem_from_states(fx::set_S(), "Set S (three maximally entangled 3x3 states). "
                                        "protocol-verify with omega_basis.json -> PROTOCOL_DISTINGUISHES"),
       expect("protocol-verify", "PROTOCOL_DISTINGUISHES", {"--measurement", "omega_basis.json"}));
  save("s_witness.json",
       problem_from_witness(WitnessProblem(fx::set_S(), three_bell, witness_probs),
                            "Set S with detectors (Phi+, Phi-, Psi+), p = (.16, .16, .68): check -> INCONCLUSIVE"),
       expect("check", "INCONCLUSIVE"));
  save("s_prime.json",
       problem_from_states(fx::set_S_prime(), "Set S' (third state replaced by |01>): search -> CERTIFIED_INDISTINGUISHABLE"),
       expect("search", "CERTIFIED_INDISTINGUISHABLE"));
  save("s_prime_witness.json",
       problem_from_witness(WitnessProblem(fx::set_S_prime(), three_bell, witness_probs),
                            "Set S' with detectors (Phi+, Phi-, Psi+), p = (.16, .16, .68): check -> "
                            "CERTIFIED_INDISTINGUISHABLE"),
       expect("check", "CERTIFIED_INDISTINGUISHABLE"));

  save("omega_basis.json",
       problem_from_states(fx::omega_basis("A"), "Measurement basis on A for protocol-verify (used with s.json)", "e"),
       std::nullopt);
  save("measurement_computational_2.json",
       problem_from_states(computational_basis(SubsystemLayout({{"A", 2}})), "Computational measurement on A", "e"),
       std::nullopt);
  save("bell_protocol.json",
       named(problem_from_states(fx::bell_states(), "Bell basis measured computationally on A: protocol-verify -> "
                                                    "PROTOCOL_FAILS"),
             bell_names),
       expect("protocol-verify", "PROTOCOL_FAILS", {"--measurement", "measurement_computational_2.json"}));
  save("computational_2x2_protocol.json",
       problem_from_states(computational_basis(fx::qubit_pair()),
                           "Computational basis of 2x2 measured computationally: protocol-verify -> "
                           "PROTOCOL_DISTINGUISHES"),
       expect("protocol-verify", "PROTOCOL_DISTINGUISHES", {"--measurement", "measurement_computational_2.json"}));

  save("domino_basis.json",
       problem_from_states(fx::domino_basis(), "Domino-type orthogonal product basis of 3x3: full-basis -> "
                                               "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"),
       expect("full-basis", "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"));
  save("computational_2x2.json",
       problem_from_states(computational_basis(fx::qubit_pair()),
                           "Computational basis of 2x2: full-basis -> ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"),
       expect("full-basis", "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"));
  save("computational_3x3.json",
       problem_from_states(computational_basis(fx::qutrit_pair()),
                           "Computational basis of 3x3: full-basis -> ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"),
       expect("full-basis", "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"));
  save("computational_2x2_search.json",
       problem_from_states(computational_basis(fx::qubit_pair()),
                           "Computational basis of 2x2: search -> INCONCLUSIVE (no witness can exist)"),
       expect("search", "INCONCLUSIVE", {"--restarts", "8"}));

  const auto random42 = random_orthonormal_basis(fx::qutrit_pair(), 42);
  save("random_3x3_seed42.json",
       problem_from_states(random42, "Random orthonormal basis of 3x3 (seed 42): full-basis -> "
                                     "CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE"),
       expect("full-basis", "CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE"));
  save("two_states.json",
       problem_from_states({random42[0], random42[1]}, "Two orthogonal 3x3 states: search -> INCONCLUSIVE "
                                                       "(any two orthogonal states are LOCC-distinguishable)"),
       expect("search", "INCONCLUSIVE", {"--restarts", "16"}));
  return written;
}

}  // namespace loccwit::cli
