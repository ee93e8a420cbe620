#pragma once

#include <utility>
#include <vector>

#include "loccwit/schmidt_vector.hpp"

namespace loccwit {

struct EnsembleItem {
  double probability = 0.0;
  SchmidtVector lambda;
};

/// Probability-weighted Schmidt vectors. Probabilities are nonnegative and
/// sum to 1 within 1e-10.
class SchmidtEnsemble {
 public:
  explicit SchmidtEnsemble(std::vector<EnsembleItem> items);

  const std::vector<EnsembleItem>& items() const { return items_; }
  std::size_t max_length() const;

 private:
  std::vector<EnsembleItem> items_;
};

/// x majorizes y: every descending partial sum of x is >= that of y, minus tol.
/// The shorter vector is zero-padded.
bool majorizes(const SchmidtVector& x, const SchmidtVector& y, double tol = 1e-9);

SchmidtVector ensemble_average(const SchmidtEnsemble& e);

struct TransitionCheck {
  bool allowed = false;
  /// max_k (sum_{j<=k} source_j - sum_{j<=k} average_j); allowed <=> margin <= tol.
  double margin = 0.0;
  std::vector<double> source_partial_sums;
  std::vector<double> average_partial_sums;
};

/// Pure state -> ensemble of pure states under LOCC: possible iff the
/// averaged target vector majorizes the source.
TransitionCheck jp_transition_allowed(const SchmidtVector& source, const SchmidtEnsemble& targets,
                                      double tol = 1e-9);

bool nielsen_transition_allowed(const SchmidtVector& source, const SchmidtVector& target,
                                double tol = 1e-9);

}  // namespace loccwit
