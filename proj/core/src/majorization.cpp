#include "loccwit/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace loccwit {

SchmidtEnsemble::SchmidtEnsemble(std::vector<EnsembleItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("empty ensemble");
  double total = 0.0;
  for (const auto& item : items_) {
    if (!(item.probability >= 0.0)) throw std::invalid_argument("negative ensemble probability");
    total += item.probability;
  }
  if (std::abs(total - 1.0) > SchmidtVector::kSumTolerance)
    throw std::invalid_argument("ensemble probabilities sum to " + std::to_string(total) + ", expected 1");
}

std::size_t SchmidtEnsemble::max_length() const {
  std::size_t n = 0;
  for (const auto& item : items_) n = std::max(n, item.lambda.size());
  return n;
}

bool majorizes(const SchmidtVector& x, const SchmidtVector& y, double tol) {
  const std::size_t n = std::max(x.size(), y.size());
  const auto px = x.partial_sums(n);
  const auto py = y.partial_sums(n);
  for (std::size_t k = 0; k < n; ++k)
    if (px[k] < py[k] - tol) return false;
  return true;
}

SchmidtVector ensemble_average(const SchmidtEnsemble& e) {
  std::vector<double> avg(e.max_length(), 0.0);
  for (const auto& item : e.items())
    for (std::size_t i = 0; i < item.lambda.size(); ++i) avg[i] += item.probability * item.lambda[i];
  return SchmidtVector(std::move(avg));
}

TransitionCheck jp_transition_allowed(const SchmidtVector& source, const SchmidtEnsemble& targets, double tol) {
  const SchmidtVector average = ensemble_average(targets);
  const std::size_t n = std::max(source.size(), average.size());
  TransitionCheck out;
  out.source_partial_sums = source.partial_sums(n);
  out.average_partial_sums = average.partial_sums(n);
  out.margin = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k)
    out.margin = std::max(out.margin, out.source_partial_sums[k] - out.average_partial_sums[k]);
  // Same comparison as majorizes(average, source, tol), written on the margin.
  out.allowed = out.margin <= tol;
  return out;
}

bool nielsen_transition_allowed(const SchmidtVector& source, const SchmidtVector& target, double tol) {
  return jp_transition_allowed(source, SchmidtEnsemble({{1.0, target}}), tol).allowed;
}

}  // namespace loccwit
