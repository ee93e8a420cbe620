#include "loccwit/schmidt_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace loccwit {

namespace {
constexpr double kNegativeClamp = 1e-12;
}

SchmidtVector::SchmidtVector(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double& x : entries_) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite Schmidt coefficient");
    if (x < 0.0) {
      if (x < -kNegativeClamp) throw std::invalid_argument("negative Schmidt coefficient");
      x = 0.0;
    }
  }
  std::sort(entries_.begin(), entries_.end(), std::greater<>());
  const double sum = std::accumulate(entries_.begin(), entries_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("Schmidt coefficients sum to " + std::to_string(sum) + ", expected 1");
}

SchmidtVector::SchmidtVector(std::initializer_list<double> entries) : SchmidtVector(std::vector<double>(entries)) {}

SchmidtVector SchmidtVector::padded(std::size_t n) const {
  SchmidtVector out = *this;
  if (n > out.entries_.size()) out.entries_.resize(n, 0.0);
  return out;
}

std::vector<double> SchmidtVector::partial_sums(std::size_t n) const {
  std::vector<double> out(std::max(n, entries_.size()), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < entries_.size()) acc += entries_[i];
    out[i] = acc;
  }
  return out;
}

std::string SchmidtVector::to_string(int precision) const {
  // Values are rounded to `precision` decimals first so float dust prints as 0.
  const double scale = std::pow(10.0, precision);
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    double v = std::round(entries_[i] * scale) / scale;
    if (v == 0.0) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (i) out += ", ";
    out += buf;
  }
  return out;
}

}  // namespace loccwit
