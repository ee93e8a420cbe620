#include "loccwit/pure_state.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>

namespace loccwit {

PureState::PureState(SubsystemLayout layout, Amplitudes amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim())
    throw std::invalid_argument("expected " + std::to_string(layout_.total_dim()) + " amplitudes for layout " +
                                layout_.to_string() + ", got " + std::to_string(amplitudes_.size()));
  input_norm_ = amplitudes_.norm();
  if (!std::isfinite(input_norm_) || input_norm_ == 0.0)
    throw std::invalid_argument("state has zero or non-finite norm");
  amplitudes_ /= input_norm_;
}

PureState::PureState(SubsystemLayout layout, std::span<const Complex> amplitudes)
    : PureState(std::move(layout),
                Amplitudes(Eigen::Map<const Amplitudes>(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size())))) {}

PureState PureState::basis(SubsystemLayout layout, std::span<const std::size_t> indices) {
  if (indices.size() != layout.size()) throw std::invalid_argument("basis state needs one index per part");
  const auto strides = layout.strides();
  std::size_t flat = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= layout.parts()[i].dim) throw std::invalid_argument("basis index out of range");
    flat += indices[i] * strides[i];
  }
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  amps[static_cast<Eigen::Index>(flat)] = 1.0;
  return PureState(std::move(layout), std::move(amps));
}

PureState PureState::basis(SubsystemLayout layout, std::initializer_list<std::size_t> indices) {
  return basis(std::move(layout), std::span<const std::size_t>(indices.begin(), indices.size()));
}

bool PureState::normalization_warning(double threshold) const { return std::abs(input_norm_ - 1.0) > threshold; }

PureState PureState::relabeled(const std::vector<std::string>& labels) const {
  if (labels.size() != layout_.size()) throw std::invalid_argument("relabel needs one label per part");
  std::vector<Part> parts;
  for (std::size_t i = 0; i < labels.size(); ++i) parts.push_back({labels[i], layout_.parts()[i].dim});
  PureState out = *this;
  out.layout_ = SubsystemLayout(std::move(parts));
  return out;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (!(a.layout() == b.layout()))
    throw std::invalid_argument("inner product of states on different layouts " + a.layout().to_string() + " and " +
                                b.layout().to_string());
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left operand
}

PureState tensor(const PureState& a, const PureState& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Amplitudes amps(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  return PureState(std::move(layout), std::move(amps));
}

PureState permute_parts(const PureState& s, const std::vector<std::string>& new_order) {
  const auto& old_layout = s.layout();
  if (new_order.size() != old_layout.size())
    throw std::invalid_argument("new order must list every part exactly once");
  std::vector<Part> parts;
  std::vector<std::size_t> source_pos;
  for (const auto& label : new_order) {
    const std::size_t pos = old_layout.index_of(label);
    source_pos.push_back(pos);
    parts.push_back(old_layout.parts()[pos]);
  }
  SubsystemLayout new_layout(std::move(parts));  // rejects repeated labels

  const auto old_strides = old_layout.strides();
  const auto new_strides = new_layout.strides();
  const std::size_t n = old_layout.total_dim();
  Amplitudes amps(static_cast<Eigen::Index>(n));
  for (std::size_t old_index = 0; old_index < n; ++old_index) {
    std::size_t new_index = 0;
    for (std::size_t k = 0; k < new_order.size(); ++k) {
      const std::size_t p = source_pos[k];
      const std::size_t digit = (old_index / old_strides[p]) % old_layout.parts()[p].dim;
      new_index += digit * new_strides[k];
    }
    amps[static_cast<Eigen::Index>(new_index)] = s.amplitudes()[static_cast<Eigen::Index>(old_index)];
  }
  return PureState(PureState::Exact{}, std::move(new_layout), std::move(amps));
}

PureState conjugate(const PureState& s) {
  return PureState(PureState::Exact{}, s.layout(), Amplitudes(s.amplitudes().conjugate()));
}

PureState with_global_phase(const PureState& s, double phase) {
  return PureState(s.layout(), Amplitudes(s.amplitudes() * std::polar(1.0, phase)));
}

double max_abs_difference(const PureState& a, const PureState& b) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("cannot compare states on different layouts");
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

StateSetReport validate_state_set(std::span<const PureState> states, double tol) {
  if (states.empty()) throw std::invalid_argument("empty state set");
  const auto& layout = states.front().layout();
  for (const auto& s : states)
    if (!(s.layout() == layout))
      throw std::invalid_argument("state set mixes layouts " + layout.to_string() + " and " + s.layout().to_string());

  StateSetReport r;
  const std::size_t k = states.size();
  r.gram.assign(k, std::vector<Complex>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      r.gram[i][j] = inner_product(states[i], states[j]);
      if (i != j) r.max_overlap = std::max(r.max_overlap, std::abs(r.gram[i][j]));
    }
    r.max_norm_error = std::max(r.max_norm_error, std::abs(std::sqrt(std::abs(r.gram[i][i])) - 1.0));
    if (states[i].normalization_warning()) r.normalization_warnings.push_back(i);
  }
  r.orthonormal = r.max_overlap <= tol && r.max_norm_error <= tol;
  r.complete = k == layout.total_dim();
  return r;
}

std::vector<PureState> random_orthonormal_basis(const SubsystemLayout& layout, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    // Fix the phase ambiguity of QR so the distribution is Haar.
    const Complex d = r(j, j);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
    out.emplace_back(layout, Amplitudes(q.col(j) * phase));
  }
  return out;
}

std::vector<PureState> computational_basis(const SubsystemLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(layout, Amplitudes(Amplitudes::Unit(n, i)));
  return out;
}

}  // namespace loccwit
