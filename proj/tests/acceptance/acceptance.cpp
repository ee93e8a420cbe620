// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "loccwit/fixtures.hpp"
#include "loccwit/majorization.hpp"
#include "loccwit/schmidt.hpp"
#include "loccwit/search.hpp"
#include "loccwit/witness.hpp"
#include "problem_file.hpp"
#include "random_states.hpp"
#include "report_file.hpp"

using namespace loccwit;
namespace fx = loccwit::fixtures;

namespace {

// Reference margin for S' with detectors (Phi+, Phi-, Psi+) and p = (.16, .16, .68),
// evaluated independently at 40 significant digits.
constexpr double kSPrimeMargin = 0.0099324231757557264700647;
const std::vector<double> kWitnessProbs = {0.16, 0.16, 0.68};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// All ordered choices of three distinct Bell detectors.
std::vector<std::vector<PureState>> bell_assignments() {
  const auto bell = fx::bell_states("C", "D");
  std::vector<std::vector<PureState>> out;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        if (a != b && b != c && a != c) out.push_back({bell[a], bell[b], bell[c]});
  return out;
}

Outcome bell_regrouping() {
  const WitnessProblem p(fx::bell_states(), fx::bell_states("C", "D"), {0.25, 0.25, 0.25, 0.25});
  const auto joint = build_joint_state(p);
  const auto regrouped = permute_parts(joint, {"A", "C", "B", "D"});
  const double err = max_abs_difference(regrouped, tensor(fx::bell_states("A", "C")[0], fx::bell_states("B", "D")[0]));
  const auto v = schmidt(joint, Bipartition::parse("AC:BD")).padded(4);
  const std::vector<double> want = {1, 0, 0, 0};
  double verr = 0.0;
  for (std::size_t i = 0; i < 4; ++i) verr = std::max(verr, std::abs(v[i] - want[i]));
  return {err <= 1e-12 && verr <= 1e-10, "regroup err " + fmt(err) + ", schmidt err " + fmt(verr)};
}

Outcome bell_witness() {
  std::ostringstream out, err;
  const auto dir = std::filesystem::temp_directory_path() / "loccwit_acceptance";
  std::filesystem::create_directories(dir);
  const auto report = (dir / "bell.json").string();
  const int code =
      cli::run_cli({"check", std::string(LOCCWIT_FIXTURE_DIR) + "/bell_witness.json", "--out", report}, out, err);
  std::ifstream f(report);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto r = cli::parse_report(ss.str());
  const double m = r.margin.value_or(NAN);
  return {code == cli::kPositive && r.verdict == "CERTIFIED_INDISTINGUISHABLE" && std::abs(m - 0.5) <= 1e-9,
          r.verdict + ", margin " + fmt(m, 12)};
}

Outcome s_prime_witness() {
  int certified = 0;
  double worst = 0.0, first = NAN;
  for (const auto& det : bell_assignments()) {
    const WitnessProblem p(fx::set_S_prime(), det, kWitnessProbs);
    const double oracle = witness_margin(p, SpectrumMethod::kPartialTrace);
    const auto r = check_witness(p);
    worst = std::max(worst, std::abs(r.margin - oracle));
    if (std::isnan(first)) first = oracle;
    certified += r.certified();
  }
  const bool ok = certified > 0 && worst <= 1e-9 && std::abs(first - kSPrimeMargin) <= 1e-9;
  return {ok, std::to_string(certified) + "/24 assignments certified, (Phi+,Phi-,Psi+) oracle margin " +
                  fmt(first, 15) + ", max main-vs-oracle diff " + fmt(worst)};
}

Outcome s_soundness() {
  int certified = 0;
  double worst = -INFINITY;
  for (const auto& det : bell_assignments()) {
    const auto r = check_witness(WitnessProblem(fx::set_S(), det, kWitnessProbs));
    certified += r.verdict != Verdict::kInconclusive;
    worst = std::max(worst, r.margin);
  }
  const bool protocol = verify_one_way_protocol(fx::set_S(), fx::omega_basis("A"), kDefaultTolerance, "A");
  return {certified == 0 && protocol, std::to_string(certified) + "/24 not inconclusive, largest margin " + fmt(worst) +
                                          ", protocol " + (protocol ? "distinguishes" : "fails")};
}

Outcome proposition_suite() {
  int failures = 0, entangled = 0, total = 0;
  auto expect = [&](const std::vector<PureState>& basis) {
    const auto fb = classify_full_basis(basis);
    bool any = false;
    for (double l : fb.largest_schmidt) any |= l < 1.0 - 1e-9;
    const bool ok = any ? fb.classification == BasisClass::kContainsEntangledLoccIndistinguishable &&
                              fb.witness.certified() && fb.cross_check_ok
                        : fb.classification == BasisClass::kAllProductProbabilisticallyDistinguishable;
    failures += !ok;
    entangled += any;
    ++total;
    return any;
  };
  const std::pair<std::size_t, std::size_t> dims[] = {{2, 2}, {2, 3}, {3, 3}};
  std::uint64_t seed = 0;
  for (auto [m, n] : dims)
    for (int i = 0; i < 200; ++i)
      expect(random_orthonormal_basis(SubsystemLayout({{"A", m}, {"B", n}}), derive_seed(5, seed++)));
  int product_failures = 0;
  for (auto [m, n] : dims) product_failures += expect(computational_basis(SubsystemLayout({{"A", m}, {"B", n}})));
  product_failures += expect(fx::domino_basis());
  return {failures == 0 && product_failures == 0,
          std::to_string(total) + " bases, " + std::to_string(entangled) + " entangled, " +
              std::to_string(failures) + " counterexamples"};
}

Outcome two_state_soundness() {
  std::mt19937_64 rng(6);
  int certified = 0, searches_found = 0;
  for (int i = 0; i < 500; ++i) {
    const SubsystemLayout layout({{"A", 2 + rng() % 2}, {"B", 2 + rng() % 2}});
    const auto basis = random_orthonormal_basis(layout, rng());
    const std::vector<PureState> pair = {basis[0], basis[1]};
    const SubsystemLayout det_layout({{"C", 2 + rng() % 2}, {"D", 2 + rng() % 2}});
    const std::vector<PureState> det = {testing::random_state(det_layout, rng), testing::random_state(det_layout, rng)};
    certified += check_witness(WitnessProblem(pair, det, simplex_sample(2, rng()))).certified();

    SearchConfig cfg;
    cfg.restarts = 16;
    cfg.seed = static_cast<std::uint64_t>(i);
    searches_found += search(pair, cfg).found;
  }
  return {certified == 0 && searches_found == 0, std::to_string(certified) + " random checks certified, " +
                                                     std::to_string(searches_found) + " searches found, of 500"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  std::size_t largest = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto layout = testing::random_layout(rng, 36);
    const auto cut = testing::random_cut(layout, rng);
    const auto s = testing::random_state(layout, rng);
    const auto a = schmidt(s, cut), b = reduced_density_spectrum(s, cut);
    const std::size_t n = std::max(a.size(), b.size());
    const auto pa = a.padded(n), pb = b.padded(n);
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(pa[k] - pb[k]));
    largest = std::max(largest, layout.total_dim());
  }
  return {worst <= 1e-9, "max diff " + fmt(worst) + ", largest dimension " + std::to_string(largest)};
}

SchmidtVector random_vector(std::mt19937_64& rng, std::size_t n) {
  auto v = simplex_sample(n, rng());
  if (n > 1 && rng() % 3 == 0) {  // sparse entries exercise ties at zero
    v[rng() % n] = 0.0;
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= s;
  }
  return SchmidtVector(v);
}

// A random convex combination of permutations applied to x: a doubly
// stochastic image, which x always majorizes.
SchmidtVector mix(const SchmidtVector& x, std::mt19937_64& rng) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  const auto w = simplex_sample(3, rng());
  for (double wk : w) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) out[i] += wk * x[perm[i]];
  }
  return SchmidtVector(out);
}

Outcome majorization_laws() {
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const auto x = random_vector(rng, n), y = random_vector(rng, n);

    failures += !majorizes(x, x);

    const auto my = mix(x, rng), mz = mix(my, rng);
    failures += !(majorizes(x, my) && majorizes(my, mz) && majorizes(x, mz));

    std::vector<double> top(n, 0.0), flat(n, 1.0 / static_cast<double>(n));
    top[0] = 1.0;
    failures += !(majorizes(SchmidtVector(top), x) && majorizes(x, SchmidtVector(flat)));

    const std::size_t m = n + rng() % 5;
    failures += majorizes(x.padded(m), y.padded(m)) != majorizes(x, y);

    const bool jp = jp_transition_allowed(x, SchmidtEnsemble({{1.0, y}})).allowed;
    failures += jp != nielsen_transition_allowed(x, y) || jp != majorizes(y, x);
  }
  return {failures == 0, std::to_string(failures) + " failures over 10000 cases"};
}

Outcome search_reproduction() {
  const auto dir = std::filesystem::temp_directory_path() / "loccwit_acceptance";
  std::filesystem::create_directories(dir);
  const auto dump = (dir / "s_prime_best.json").string();
  std::ostringstream out, err;
  const auto start = std::chrono::steady_clock::now();
  const int code =
      cli::run_cli({"search", std::string(LOCCWIT_FIXTURE_DIR) + "/s_prime.json", "--seed", "0", "--dump", dump}, out,
                   err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream out2, err2;
  const int recheck = cli::run_cli({"check", dump}, out2, err2);
  const bool certified = out2.str().find("verdict: CERTIFIED_INDISTINGUISHABLE") != std::string::npos;
  return {code == cli::kPositive && secs < 60.0 && recheck == cli::kPositive && certified,
          std::string("found ") + (code == cli::kPositive ? "true" : "false") + " in " + fmt(secs) +
              " s, dump re-check " + (certified ? "CERTIFIED" : "not certified")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Bell regrouping identity", bell_regrouping},
      {"Bell witness", bell_witness},
      {"S' witness", s_prime_witness},
      {"S soundness", s_soundness},
      {"full-basis property suite", proposition_suite},
      {"two-state soundness", two_state_soundness},
      {"oracle equivalence", oracle_equivalence},
      {"majorization laws", majorization_laws},
      {"search reproduction", search_reproduction},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
