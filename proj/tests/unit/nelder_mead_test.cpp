#include <gtest/gtest.h>

#include <cmath>

#include "loccwit/nelder_mead.hpp"

namespace loccwit {
namespace {

TEST(NelderMead, MinimizesQuadratic) {
  auto f = [](const std::vector<double>& x) { return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0); };
  auto r = nelder_mead(f, {0.0, 0.0});
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -2.0, 1e-5);
  EXPECT_LT(r.f, 1e-10);
  EXPECT_LT(r.iterations, 2000);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opts;
  opts.max_iters = 5000;
  auto r = nelder_mead(f, {-1.2, 1.0}, opts);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, HandlesNaNAsWorst) {
  auto f = [](const std::vector<double>& x) { return x[0] < -0.5 ? NAN : (x[0] - 0.3) * (x[0] - 0.3); };
  auto r = nelder_mead(f, {0.0});
  EXPECT_NEAR(r.x[0], 0.3, 1e-5);
}

TEST(NelderMead, RespectsIterationCap) {
  auto f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
  NelderMeadOptions opts;
  opts.max_iters = 3;
  EXPECT_LE(nelder_mead(f, {5.0, 5.0}, opts).iterations, 3);
  EXPECT_THROW(nelder_mead(f, {}), std::invalid_argument);
}

TEST(NelderMead, RebuildsNeverWorsenAndCountIterations) {
  // Ill-conditioned 12-dimensional quadratic.
  auto f = [](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(10.0, static_cast<double>(i) / 4.0) * x[i] * x[i];
    return s;
  };
  const std::vector<double> x0(12, 1.0);
  NelderMeadOptions opts;
  opts.max_iters = 20000;
  const auto once = nelder_mead(f, x0, opts);
  opts.rebuilds = 5;
  const auto again = nelder_mead(f, x0, opts);
  EXPECT_LE(again.f, once.f);
  EXPECT_GE(again.iterations, once.iterations);
  EXPECT_LE(again.iterations, opts.max_iters);
  EXPECT_LT(again.f, 1e-8);
}

}  // namespace
}  // namespace loccwit
