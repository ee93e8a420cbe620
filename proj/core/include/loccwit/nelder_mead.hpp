#pragma once

#include <functional>
#include <vector>

namespace loccwit {

struct NelderMeadOptions {
  int max_iters = 2000;
  double initial_step = 1.0;
  /// Stop when the spread of simplex values falls below this.
  double f_tol = 1e-13;
  /// Stop when the simplex diameter falls below this.
  double x_tol = 1e-10;
  /// Dimension-dependent expansion/contraction/shrink coefficients, which
  /// hold up better than the fixed (1, 2, 0.5, 0.5) set beyond a few
  /// parameters.
  bool adaptive = true;
  /// After convergence, rebuild the simplex around the best point this many
  /// times; stops early when a rebuild brings no improvement.
  int rebuilds = 0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
};

/// Downhill simplex minimization (reflect, expand, contract, shrink).
/// `iterations` in the result counts all iterations across rebuilds.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

}  // namespace loccwit
