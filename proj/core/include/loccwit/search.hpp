#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "loccwit/pure_state.hpp"
#include "loccwit/witness.hpp"

namespace loccwit {

enum class SearchMode { kFixedBellEnumeration, kFreeDetectors };

std::string_view to_string(SearchMode m);
SearchMode parse_search_mode(std::string_view text);

struct SearchConfig {
  std::size_t detector_dim_c = 2;
  std::size_t detector_dim_d = 2;
  int restarts = 64;
  int max_iters = 2000;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  SearchMode mode = SearchMode::kFixedBellEnumeration;
  /// Worker threads for restarts; 0 picks hardware concurrency. Output does
  /// not depend on this value.
  unsigned threads = 0;
};

struct SearchResult {
  bool found = false;
  WitnessReport best_report;
  std::optional<WitnessProblem> best_problem;
  int iterations_used = 0;
  int restart_index = -1;
};

/// Maximizes the witness margin over detectors and probabilities. Restarts
/// run in index order semantically: the lowest-index restart that certifies
/// wins; otherwise the best margin (ties to the lower index) is reported.
SearchResult search(const std::vector<PureState>& states, const SearchConfig& cfg);

/// Uniform sample from the probability simplex, deterministic in seed.
std::vector<double> simplex_sample(std::size_t k, std::uint64_t seed);

/// Per-restart seed derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace loccwit
