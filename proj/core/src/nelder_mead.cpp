#include "loccwit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace loccwit {

namespace {

struct Coefficients {
  double reflect, expand, contract, shrink;
};

Coefficients coefficients(std::size_t n, bool adaptive) {
  if (!adaptive || n < 2) return {1.0, 2.0, 0.5, 0.5};
  const double d = static_cast<double>(n);
  return {1.0, 1.0 + 2.0 / d, 0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d};
}

std::vector<double> affine(const std::vector<double>& base, const std::vector<double>& toward, double t) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + t * (toward[i] - base[i]);
  return out;
}

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one parameter");
  const Coefficients c = coefficients(n, opts.adaptive);

  auto eval = [&](std::vector<double> x) {
    double v = f(x);
    if (std::isnan(v)) v = INFINITY;
    return Vertex{std::move(x), v};
  };
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  int iter = 0;
  Vertex best = eval(std::move(x0));
  for (int round = 0; round <= opts.rebuilds && iter < opts.max_iters; ++round) {
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      auto x = best.x;
      x[i] += opts.initial_step;
      simplex.push_back(eval(std::move(x)));
    }

    for (; iter < opts.max_iters; ++iter) {
      std::stable_sort(simplex.begin(), simplex.end(), by_value);
      const double spread = simplex.back().f - simplex.front().f;
      double diameter = 0.0;
      for (std::size_t v = 1; v <= n; ++v)
        for (std::size_t i = 0; i < n; ++i)
          diameter = std::max(diameter, std::abs(simplex[v].x[i] - simplex[0].x[i]));
      if (spread <= opts.f_tol && diameter <= opts.x_tol) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

      Vertex& worst = simplex.back();
      Vertex reflected = eval(affine(centroid, worst.x, -c.reflect));
      if (reflected.f < simplex.front().f) {
        Vertex expanded = eval(affine(centroid, worst.x, -c.reflect * c.expand));
        worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
        continue;
      }
      if (reflected.f < simplex[n - 1].f) {
        worst = std::move(reflected);
        continue;
      }
      // Outside contraction toward the reflected point, inside toward the worst.
      const bool outside = reflected.f < worst.f;
      Vertex contracted = outside ? eval(affine(centroid, reflected.x, c.contract))
                                  : eval(affine(centroid, worst.x, c.contract));
      if (contracted.f < (outside ? reflected.f : worst.f)) {
        worst = std::move(contracted);
        continue;
      }
      for (std::size_t v = 1; v <= n; ++v) simplex[v] = eval(affine(simplex[0].x, simplex[v].x, c.shrink));
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    const bool improved = simplex.front().f < best.f;
    if (improved || round == 0) best = simplex.front();
    if (!improved && round > 0) break;
  }
  return {best.x, best.f, iter};
}

}  // namespace loccwit
