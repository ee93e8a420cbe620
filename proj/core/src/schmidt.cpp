#include "loccwit/schmidt.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace loccwit {

namespace {

std::size_t side_dim(const SubsystemLayout& layout, const std::vector<std::string>& side) {
  std::size_t d = 1;
  for (const auto& l : side) d *= layout.dim_of(l);
  return d;
}

SchmidtVector finish(std::vector<double> values, std::size_t keep) {
  std::sort(values.begin(), values.end(), std::greater<>());
  values.resize(keep, 0.0);
  for (double& v : values) v = std::max(v, 0.0);
  return SchmidtVector(std::move(values));
}

}  // namespace

SchmidtVector schmidt(const PureState& s, const Bipartition& cut) {
  const Bipartition c = cut.canonical(s.layout());
  std::vector<std::string> order = c.left();
  order.insert(order.end(), c.right().begin(), c.right().end());
  const PureState grouped = permute_parts(s, order);

  const auto rows = static_cast<Eigen::Index>(side_dim(s.layout(), c.left()));
  const auto cols = static_cast<Eigen::Index>(side_dim(s.layout(), c.right()));
  // Row-major (rows x cols) data viewed column-major is the transpose; same
  // singular values.
  const Eigen::Map<const Eigen::MatrixXcd> m(grouped.amplitudes().data(), cols, rows);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> values(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) values[static_cast<std::size_t>(i)] = sv[i] * sv[i];
  return finish(std::move(values), static_cast<std::size_t>(std::min(rows, cols)));
}

SchmidtVector reduced_density_spectrum(const PureState& s, const Bipartition& cut) {
  cut.check_against(s.layout());
  const auto& layout = s.layout();
  const auto strides = layout.strides();

  // Map every flat amplitude index to (left index, right index) by reading the
  // digits of each part directly, without regrouping the amplitude vector.
  std::vector<bool> on_left(layout.size(), false);
  for (const auto& l : cut.left()) on_left[layout.index_of(l)] = true;

  const std::size_t n = layout.total_dim();
  std::vector<std::size_t> left_index(n), right_index(n);
  std::size_t dl = 1, dr = 1;
  for (std::size_t p = 0; p < layout.size(); ++p) (on_left[p] ? dl : dr) *= layout.parts()[p].dim;
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t li = 0, ri = 0;
    for (std::size_t p = 0; p < layout.size(); ++p) {
      const std::size_t d = layout.parts()[p].dim;
      const std::size_t digit = (flat / strides[p]) % d;
      if (on_left[p]) li = li * d + digit;
      else ri = ri * d + digit;
    }
    left_index[flat] = li;
    right_index[flat] = ri;
  }

  // rho_L(i, i') = sum_j psi(i, j) conj(psi(i', j)).
  const auto dL = static_cast<Eigen::Index>(dl);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dL, dL);
  std::vector<std::vector<std::size_t>> by_right(dr);
  for (std::size_t flat = 0; flat < n; ++flat) by_right[right_index[flat]].push_back(flat);
  for (const auto& group : by_right)
    for (std::size_t a : group)
      for (std::size_t b : group)
        rho(static_cast<Eigen::Index>(left_index[a]), static_cast<Eigen::Index>(left_index[b])) +=
            s.amplitude(a) * std::conj(s.amplitude(b));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("reduced density eigendecomposition failed");
  const auto& ev = eig.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  return finish(std::move(values), std::min(dl, dr));
}

bool is_product(const PureState& s, const Bipartition& cut, double tol) {
  return schmidt(s, cut).largest() >= 1.0 - tol;
}

bool is_fully_product(const PureState& s, double tol) {
  const auto labels = s.layout().labels();
  if (labels.size() < 2) return true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<std::string> rest;
    for (std::size_t j = 0; j < labels.size(); ++j)
      if (j != i) rest.push_back(labels[j]);
    if (!is_product(s, Bipartition({labels[i]}, rest), tol)) return false;
  }
  return true;
}

}  // namespace loccwit
