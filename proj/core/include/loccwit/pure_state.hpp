#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "loccwit/layout.hpp"

namespace loccwit {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Normalized pure state over a labeled layout. Construction normalizes the
/// input and keeps the original norm so callers can flag unnormalized input.
class PureState {
 public:
  PureState(SubsystemLayout layout, Amplitudes amplitudes);
  PureState(SubsystemLayout layout, std::span<const Complex> amplitudes);

  /// Computational basis state |i1 i2 ...>, one index per part.
  static PureState basis(SubsystemLayout layout, std::span<const std::size_t> indices);
  static PureState basis(SubsystemLayout layout, std::initializer_list<std::size_t> indices);

  const SubsystemLayout& layout() const { return layout_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }
  std::size_t dim() const { return layout_.total_dim(); }

  /// Norm of the amplitudes as supplied, before normalization.
  double input_norm() const { return input_norm_; }
  /// True when the supplied norm differed from 1 by more than `threshold`.
  bool normalization_warning(double threshold = 1e-6) const;

  /// Same amplitudes under new labels (dimensions must match part by part).
  PureState relabeled(const std::vector<std::string>& labels) const;

 private:
  friend PureState permute_parts(const PureState&, const std::vector<std::string>&);
  friend PureState conjugate(const PureState&);

  struct Exact {};
  // Reindexed or conjugated amplitudes of an already normalized state.
  PureState(Exact, SubsystemLayout layout, Amplitudes amplitudes)
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {}

  SubsystemLayout layout_;
  Amplitudes amplitudes_;
  double input_norm_ = 1.0;
};

Complex inner_product(const PureState& a, const PureState& b);

PureState tensor(const PureState& a, const PureState& b);

/// Reorders the parts of `s` without changing the physical state.
PureState permute_parts(const PureState& s, const std::vector<std::string>& new_order);

PureState conjugate(const PureState& s);

/// Applies a global phase exp(i*phase).
PureState with_global_phase(const PureState& s, double phase);

/// Max componentwise modulus of a - b; layouts must match.
double max_abs_difference(const PureState& a, const PureState& b);

struct StateSetReport {
  bool orthonormal = false;
  bool complete = false;
  double max_overlap = 0.0;       // max |<psi_i|psi_j>|, i != j
  double max_norm_error = 0.0;    // max | ||psi_i|| - 1 |
  std::vector<std::vector<Complex>> gram;
  std::vector<std::size_t> normalization_warnings;  // indices with input norm far from 1

  bool passes() const { return orthonormal; }
};

/// Pairwise overlaps and completeness of a state set. Throws
/// std::invalid_argument on an empty set or mixed layouts.
StateSetReport validate_state_set(std::span<const PureState> states, double tol = 1e-9);

/// Columns of a Haar-like random unitary applied to the computational basis.
/// Deterministic in `seed`.
std::vector<PureState> random_orthonormal_basis(const SubsystemLayout& layout, std::uint64_t seed);

/// Computational basis in lexicographic order.
std::vector<PureState> computational_basis(const SubsystemLayout& layout);

}  // namespace loccwit
