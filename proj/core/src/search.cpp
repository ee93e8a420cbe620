#include "loccwit/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "loccwit/fixtures.hpp"
#include "loccwit/nelder_mead.hpp"
#include "loccwit/schmidt.hpp"

namespace loccwit {

std::string_view to_string(SearchMode m) {
  return m == SearchMode::kFixedBellEnumeration ? "FIXED_BELL_ENUMERATION" : "FREE_DETECTORS";
}

SearchMode parse_search_mode(std::string_view text) {
  if (text == "FIXED_BELL_ENUMERATION") return SearchMode::kFixedBellEnumeration;
  if (text == "FREE_DETECTORS") return SearchMode::kFreeDetectors;
  throw std::invalid_argument("unknown search mode '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over master + golden-ratio increments.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> simplex_sample(std::size_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("simplex_sample needs k >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> out(k);
  double total = 0.0;
  for (double& x : out) total += (x = expo(rng));
  for (double& x : out) x /= total;
  return out;
}

namespace {

struct Candidate {
  double margin = -std::numeric_limits<double>::infinity();
  std::optional<WitnessProblem> problem;
  int iterations = 0;
};

std::vector<double> softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += (p[i] = std::exp(logits[i] - top));
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> logits_from(const std::vector<double>& probs) {
  std::vector<double> out;
  for (double p : probs) out.push_back(std::log(std::max(p, 1e-12)));
  return out;
}

/// Largest partial-sum excess over all but the last index, where both sums
/// reach 1. Agrees with the margin whenever the margin is positive, and stays
/// informative (negative) inside the allowed region.
double violation_score(const WitnessProblem& p) {
  const SchmidtVector source = schmidt(build_joint_state(p), p.witness_cut());
  const auto labels = p.detector_layout().labels();
  const Bipartition cd({labels[0]}, {labels[1]});
  std::vector<EnsembleItem> items;
  for (std::size_t i = 0; i < p.size(); ++i)
    items.push_back({p.probs()[i], schmidt(p.detectors()[i], cd).padded(source.size())});
  const auto trace = jp_transition_allowed(source, SchmidtEnsemble(std::move(items)));
  // Targets have Schmidt rank at most r, so their average partial sums reach 1
  // at index r - 1 and nothing past it can be violated. Including those
  // indices lets the optimizer drift toward a rank-deficient source at margin 0.
  const std::size_t r = std::min(p.detector_layout().dim_of(labels[0]), p.detector_layout().dim_of(labels[1]));
  const std::size_t n = std::min(trace.source_partial_sums.size(), r);
  if (n < 2) return trace.margin;
  double score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; ++k)
    score = std::max(score, trace.source_partial_sums[k] - trace.average_partial_sums[k]);
  return score;
}

std::string free_label(const SubsystemLayout& taken, std::initializer_list<const char*> candidates) {
  for (const char* c : candidates)
    if (!taken.contains(c)) return c;
  throw std::invalid_argument("no free label for detector parts");
}

std::uint64_t permutation_count(std::size_t n, std::size_t k) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / (n - i)) return 0;  // overflow
    count *= n - i;
  }
  return count;
}

/// The `rank`-th ordered selection of k distinct items from n, lexicographic.
std::vector<std::size_t> unrank_selection(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<std::size_t> available(n);
  for (std::size_t i = 0; i < n; ++i) available[i] = i;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t block = permutation_count(n - j - 1, k - j - 1);
    const auto digit = static_cast<std::size_t>(rank / block);
    rank %= block;
    out.push_back(available[digit]);
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

class Searcher {
 public:
  Searcher(const std::vector<PureState>& states, const SearchConfig& cfg) : states_(states), cfg_(cfg) {
    if (states_.empty()) throw std::invalid_argument("search needs at least one state");
    if (cfg_.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (!(cfg_.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (cfg_.detector_dim_c == 0 || cfg_.detector_dim_d == 0) throw std::invalid_argument("detector dims must be positive");
    if (states_.front().layout().size() != 2) throw std::invalid_argument("states must live on a two-part layout");
    if (!validate_state_set(states_, cfg_.tol).orthonormal) throw std::invalid_argument("states are not orthonormal");

    const auto& layout = states_.front().layout();
    labels_ = {free_label(layout, {"C", "C'", "C_"}), free_label(layout, {"D", "D'", "D_"})};
    detector_layout_ = SubsystemLayout({{labels_[0], cfg_.detector_dim_c}, {labels_[1], cfg_.detector_dim_d}});

    if (cfg_.mode == SearchMode::kFixedBellEnumeration) {
      if (cfg_.detector_dim_c != cfg_.detector_dim_d)
        throw std::invalid_argument("Bell enumeration needs equal detector dimensions");
      const std::size_t pool = cfg_.detector_dim_c * cfg_.detector_dim_d;
      if (states_.size() > pool)
        throw std::invalid_argument("detector space " + std::to_string(cfg_.detector_dim_c) + "x" +
                                    std::to_string(cfg_.detector_dim_d) + " holds only " + std::to_string(pool) +
                                    " distinct Bell-type detectors, need " + std::to_string(states_.size()));
      bell_pool_ = fixtures::bell_type_basis(cfg_.detector_dim_c, labels_[0], labels_[1]);
      assignment_count_ = permutation_count(pool, states_.size());
    }
  }

  Candidate run(int restart) const {
    const std::uint64_t seed = derive_seed(cfg_.seed, static_cast<std::uint64_t>(restart));
    NelderMeadOptions opts;
    opts.max_iters = cfg_.max_iters;
    return cfg_.mode == SearchMode::kFixedBellEnumeration ? run_bell(restart, seed, opts) : run_free(seed, opts);
  }

 private:
  Candidate finish(WitnessProblem problem, int iterations) const {
    Candidate c;
    c.margin = witness_margin(problem);
    c.problem = std::move(problem);
    c.iterations = iterations;
    return c;
  }

  Candidate run_bell(int restart, std::uint64_t seed, const NelderMeadOptions& opts) const {
    const std::size_t k = states_.size();
    std::uint64_t rank;
    if (assignment_count_ != 0 && assignment_count_ <= static_cast<std::uint64_t>(cfg_.restarts)) {
      rank = static_cast<std::uint64_t>(restart) % assignment_count_;
    } else {
      std::mt19937_64 rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
      rank = assignment_count_ == 0 ? rng() : rng() % assignment_count_;
    }
    std::vector<PureState> detectors;
    if (assignment_count_ != 0) {
      for (std::size_t idx : unrank_selection(rank, bell_pool_.size(), k)) detectors.push_back(bell_pool_[idx]);
    } else {
      std::vector<std::size_t> order(bell_pool_.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::mt19937_64 rng(rank);
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i = 0; i < k; ++i) detectors.push_back(bell_pool_[order[i]]);
    }

    auto objective = [&](const std::vector<double>& x) {
      return -violation_score(WitnessProblem(states_, detectors, softmax(x), cfg_.tol));
    };
    const auto best = nelder_mead(objective, logits_from(simplex_sample(k, seed)), opts);
    return finish(WitnessProblem(states_, detectors, softmax(best.x), cfg_.tol), best.iterations);
  }

  std::vector<PureState> decode_detectors(std::span<const double> x) const {
    const std::size_t dim = detector_layout_.total_dim();
    std::vector<PureState> out;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      Amplitudes amps(static_cast<Eigen::Index>(dim));
      for (std::size_t j = 0; j < dim; ++j)
        amps[static_cast<Eigen::Index>(j)] = Complex(x[2 * (i * dim + j)], x[2 * (i * dim + j) + 1]);
      if (amps.norm() < 1e-150) amps[0] = 1.0;
      out.emplace_back(detector_layout_, std::move(amps));
    }
    return out;
  }

  Candidate run_free(std::uint64_t seed, const NelderMeadOptions& opts) const {
    const std::size_t k = states_.size();
    const std::size_t amp_params = 2 * k * detector_layout_.total_dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x0(amp_params);
    for (double& v : x0) v = gauss(rng);
    const auto logits = logits_from(simplex_sample(k, seed ^ 0x5851F42D4C957F2DULL));
    x0.insert(x0.end(), logits.begin(), logits.end());

    auto make = [&](const std::vector<double>& x) {
      const std::span<const double> all(x);
      return WitnessProblem(states_, decode_detectors(all.first(amp_params)), softmax(all.subspan(amp_params)),
                            cfg_.tol);
    };
    const auto best = nelder_mead([&](const std::vector<double>& x) { return -violation_score(make(x)); }, x0, opts);
    return finish(make(best.x), best.iterations);
  }

  const std::vector<PureState>& states_;
  const SearchConfig& cfg_;
  std::vector<std::string> labels_;
  SubsystemLayout detector_layout_;
  std::vector<PureState> bell_pool_;
  std::uint64_t assignment_count_ = 0;
};

}  // namespace

SearchResult search(const std::vector<PureState>& states, const SearchConfig& cfg) {
  const Searcher searcher(states, cfg);
  const unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

  SearchResult result;
  Candidate best;
  int best_index = -1;
  // Restarts execute in batches; results are scanned in index order so the
  // outcome matches a sequential run with early exit.
  for (int start = 0; start < cfg.restarts; start += static_cast<int>(threads)) {
    const int stop = std::min(cfg.restarts, start + static_cast<int>(threads));
    std::vector<Candidate> batch;
    if (threads == 1) {
      batch.push_back(searcher.run(start));
    } else {
      std::vector<std::future<Candidate>> futures;
      for (int r = start; r < stop; ++r)
        futures.push_back(std::async(std::launch::async, [&searcher, r] { return searcher.run(r); }));
      for (auto& f : futures) batch.push_back(f.get());
    }
    bool done = false;
    for (int r = start; r < stop && !done; ++r) {
      Candidate& c = batch[static_cast<std::size_t>(r - start)];
      if (best_index < 0 || c.margin > best.margin) {
        best = std::move(c);
        best_index = r;
      }
      done = best.margin > cfg.tol;
    }
    if (done) break;
  }

  result.best_problem = best.problem;
  result.best_report = check_witness(*best.problem, cfg.tol);
  result.found = result.best_report.certified();
  result.iterations_used = best.iterations;
  result.restart_index = best_index;
  return result;
}

}  // namespace loccwit
