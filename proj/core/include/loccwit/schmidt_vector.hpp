#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace loccwit {

/// Descending, nonnegative coefficients summing to 1 (squared Schmidt
/// coefficients of a bipartite pure state).
class SchmidtVector {
 public:
  static constexpr double kSumTolerance = 1e-10;

  SchmidtVector() = default;
  /// Sorts descending. Entries in (-1e-12, 0) are clamped to zero; anything
  /// more negative, or a sum off by more than kSumTolerance, throws
  /// std::invalid_argument.
  explicit SchmidtVector(std::vector<double> entries);
  SchmidtVector(std::initializer_list<double> entries);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double largest() const { return entries_.empty() ? 0.0 : entries_.front(); }

  /// Zero-padded to `n` entries; never truncates.
  SchmidtVector padded(std::size_t n) const;

  /// Cumulative sums of the entries zero-padded to `n`.
  std::vector<double> partial_sums(std::size_t n) const;

  std::string to_string(int precision = 12) const;

 private:
  std::vector<double> entries_;
};

}  // namespace loccwit
