#include "loccwit/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loccwit::fixtures {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

PureState from_terms(const SubsystemLayout& layout, std::initializer_list<std::pair<std::size_t, Complex>> terms) {
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (const auto& [index, value] : terms) amps[static_cast<Eigen::Index>(index)] += value;
  return PureState(layout, std::move(amps));
}

}  // namespace

Complex omega() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

SubsystemLayout qubit_pair(const std::string& left, const std::string& right) {
  return SubsystemLayout({{left, 2}, {right, 2}});
}

SubsystemLayout qutrit_pair(const std::string& left, const std::string& right) {
  return SubsystemLayout({{left, 3}, {right, 3}});
}

std::vector<PureState> bell_states(const std::string& left, const std::string& right) {
  const auto layout = qubit_pair(left, right);
  const double h = kInvSqrt2;
  return {
      from_terms(layout, {{0, h}, {3, h}}),   // Phi+
      from_terms(layout, {{0, h}, {3, -h}}),  // Phi-
      from_terms(layout, {{1, h}, {2, h}}),   // Psi+
      from_terms(layout, {{1, h}, {2, -h}}),  // Psi-
  };
}

std::vector<PureState> bell_type_basis(std::size_t d, const std::string& left, const std::string& right) {
  if (d < 2) throw std::invalid_argument("Bell-type basis needs local dimension >= 2");
  if (d == 2) return bell_states(left, right);
  const SubsystemLayout layout({{left, d}, {right, d}});
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<PureState> out;
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a = 0; a < d; ++a) {
      Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(d * d));
      for (std::size_t j = 0; j < d; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * j) % d) / static_cast<double>(d);
        amps[static_cast<Eigen::Index>(j * d + (j + b) % d)] = std::polar(norm, angle);
      }
      out.emplace_back(layout, std::move(amps));
    }
  return out;
}

PureState max_entangled(std::size_t d, const std::string& left, const std::string& right) {
  const SubsystemLayout layout({{left, d}, {right, d}});
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(d * d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) amps[static_cast<Eigen::Index>(j * d + j)] = norm;
  return PureState(layout, std::move(amps));
}

std::vector<PureState> set_S() {
  const auto layout = qutrit_pair();
  const Complex w = omega();
  const Complex w2 = w * w;
  return {
      from_terms(layout, {{0, 1.0}, {4, w}, {8, w2}}),
      from_terms(layout, {{0, 1.0}, {4, w2}, {8, w}}),
      from_terms(layout, {{1, 1.0}, {5, 1.0}, {6, 1.0}}),  // |01> + |12> + |20>
  };
}

std::vector<PureState> set_S_prime() {
  auto s = set_S();
  s[2] = PureState::basis(qutrit_pair(), {0, 1});
  return s;
}

std::vector<PureState> omega_basis(const std::string& label) {
  const SubsystemLayout layout({{label, 3}});
  const Complex w = omega();
  std::vector<PureState> out;
  for (int k = 0; k < 3; ++k) {
    const Complex wk = std::pow(w, k);
    out.push_back(from_terms(layout, {{0, 1.0}, {1, wk}, {2, wk * wk}}));
  }
  return out;
}

std::vector<PureState> domino_basis() {
  const auto layout = qutrit_pair();
  const double h = kInvSqrt2;
  auto idx = [](std::size_t a, std::size_t b) { return a * 3 + b; };
  return {
      from_terms(layout, {{idx(1, 1), 1.0}}),
      from_terms(layout, {{idx(0, 0), h}, {idx(0, 1), h}}),
      from_terms(layout, {{idx(0, 0), h}, {idx(0, 1), -h}}),
      from_terms(layout, {{idx(2, 1), h}, {idx(2, 2), h}}),
      from_terms(layout, {{idx(2, 1), h}, {idx(2, 2), -h}}),
      from_terms(layout, {{idx(1, 0), h}, {idx(2, 0), h}}),
      from_terms(layout, {{idx(1, 0), h}, {idx(2, 0), -h}}),
      from_terms(layout, {{idx(0, 2), h}, {idx(1, 2), h}}),
      from_terms(layout, {{idx(0, 2), h}, {idx(1, 2), -h}}),
  };
}

}  // namespace loccwit::fixtures
