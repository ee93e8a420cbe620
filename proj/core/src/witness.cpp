#include "loccwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/LU>

#include "loccwit/fixtures.hpp"
#include "loccwit/schmidt.hpp"

namespace loccwit {

namespace {

constexpr double kProbSumTolerance = 1e-10;
constexpr double kIdentityTolerance = 1e-10;

SchmidtVector spectrum(const PureState& s, const Bipartition& cut, SpectrumMethod method) {
  return method == SpectrumMethod::kSvd ? schmidt(s, cut) : reduced_density_spectrum(s, cut);
}

void require_two_parts(const SubsystemLayout& layout, const char* what) {
  if (layout.size() != 2)
    throw std::invalid_argument(std::string(what) + " must live on a two-part layout, got " + layout.to_string());
}

SchmidtEnsemble target_ensemble(const WitnessProblem& p, std::size_t length, SpectrumMethod method) {
  const auto labels = p.detector_layout().labels();
  const Bipartition cd({labels[0]}, {labels[1]});
  std::vector<EnsembleItem> items;
  items.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    items.push_back({p.probs()[i], spectrum(p.detectors()[i], cd, method).padded(length)});
  return SchmidtEnsemble(std::move(items));
}

std::size_t detector_rank(const WitnessProblem& p) {
  std::vector<Eigen::Index> used;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.probs()[i] > 0.0) used.push_back(static_cast<Eigen::Index>(i));
  if (used.empty()) return 0;
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(p.detector_layout().total_dim()), static_cast<Eigen::Index>(used.size()));
  for (std::size_t c = 0; c < used.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = p.detectors()[static_cast<std::size_t>(used[c])].amplitudes();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

/// Deviation of the conjugate-detector joint state from the product of
/// maximally entangled AC and BD states.
double conjugate_identity_deviation(const WitnessProblem& p) {
  const auto ab = p.state_layout().parts();
  const auto cd = p.detector_layout().parts();
  const PureState joint = build_joint_state(p);
  const PureState regrouped = permute_parts(joint, {ab[0].label, cd[0].label, ab[1].label, cd[1].label});
  const PureState expected = tensor(fixtures::max_entangled(ab[0].dim, ab[0].label, cd[0].label),
                                    fixtures::max_entangled(ab[1].dim, ab[1].label, cd[1].label));
  return max_abs_difference(regrouped, expected);
}

std::string fresh_label(const SubsystemLayout& taken, std::initializer_list<const char*> candidates) {
  for (const char* c : candidates)
    if (!taken.contains(c)) return c;
  throw std::invalid_argument("no free label for detector parts");
}

}  // namespace

WitnessProblem::WitnessProblem(std::vector<PureState> states, std::vector<PureState> detectors,
                               std::vector<double> probs, double tol)
    : states_(std::move(states)), detectors_(std::move(detectors)), probs_(std::move(probs)) {
  if (states_.empty()) throw std::invalid_argument("witness problem needs at least one state");
  if (detectors_.size() != states_.size() || probs_.size() != states_.size())
    throw std::invalid_argument("witness problem needs one detector and one probability per state (got " +
                                std::to_string(states_.size()) + " states, " + std::to_string(detectors_.size()) +
                                " detectors, " + std::to_string(probs_.size()) + " probabilities)");
  require_two_parts(state_layout(), "states");
  require_two_parts(detector_layout(), "detectors");
  const auto report = validate_state_set(states_, tol);
  if (!report.orthonormal)
    throw std::invalid_argument("states are not orthonormal (max overlap " + std::to_string(report.max_overlap) + ")");
  for (const auto& d : detectors_)
    if (!(d.layout() == detector_layout())) throw std::invalid_argument("detectors mix layouts");
  for (const auto& label : detector_layout().labels())
    if (state_layout().contains(label))
      throw std::invalid_argument("detector label '" + label + "' collides with a state label");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbSumTolerance)
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", expected 1");
}

Bipartition WitnessProblem::witness_cut() const {
  const auto ab = state_layout().labels();
  const auto cd = detector_layout().labels();
  return Bipartition({ab[0], cd[0]}, {ab[1], cd[1]});
}

SubsystemLayout WitnessProblem::joint_layout() const { return state_layout().concat(detector_layout()); }

std::string_view to_string(Verdict v) {
  return v == Verdict::kCertifiedIndistinguishable ? "CERTIFIED_INDISTINGUISHABLE" : "INCONCLUSIVE";
}

std::string_view to_string(BasisClass c) {
  return c == BasisClass::kAllProductProbabilisticallyDistinguishable ? "ALL_PRODUCT_PROBABILISTICALLY_DISTINGUISHABLE"
                                                                      : "CONTAINS_ENTANGLED_LOCC_INDISTINGUISHABLE";
}

PureState build_joint_state(const WitnessProblem& p) {
  const auto nd = static_cast<Eigen::Index>(p.detector_layout().total_dim());
  const auto ns = static_cast<Eigen::Index>(p.state_layout().total_dim());
  Amplitudes amps = Amplitudes::Zero(ns * nd);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.probs()[i] == 0.0) continue;
    const double w = std::sqrt(p.probs()[i]);
    const auto& psi = p.states()[i].amplitudes();
    const auto& phi = p.detectors()[i].amplitudes();
    for (Eigen::Index a = 0; a < ns; ++a) amps.segment(a * nd, nd) += (w * psi[a]) * phi;
  }
  return PureState(p.joint_layout(), std::move(amps));
}

double witness_margin(const WitnessProblem& p, SpectrumMethod method) {
  const SchmidtVector source = spectrum(build_joint_state(p), p.witness_cut(), method);
  return jp_transition_allowed(source, target_ensemble(p, source.size(), method)).margin;
}

WitnessReport check_witness(const WitnessProblem& p, double tol, SpectrumMethod method) {
  WitnessReport r;
  r.tol = tol;
  r.source_schmidt = spectrum(build_joint_state(p), p.witness_cut(), method);
  const SchmidtEnsemble targets = target_ensemble(p, r.source_schmidt.size(), method);
  r.target_average = ensemble_average(targets);
  r.trace = jp_transition_allowed(r.source_schmidt, targets, tol);
  r.margin = r.trace.margin;
  r.verdict = r.margin > tol ? Verdict::kCertifiedIndistinguishable : Verdict::kInconclusive;

  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.states()[i].normalization_warning())
      r.warnings.push_back("state " + std::to_string(i) + " was normalized from norm " +
                           std::to_string(p.states()[i].input_norm()));
    if (p.detectors()[i].normalization_warning())
      r.warnings.push_back("detector " + std::to_string(i) + " was normalized from norm " +
                           std::to_string(p.detectors()[i].input_norm()));
  }
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.probs()[i] == 0.0) zero.push_back(i);
  if (!zero.empty()) {
    std::string list;
    for (std::size_t i : zero) list += (list.empty() ? "" : ", ") + std::to_string(i);
    r.warnings.push_back("states with zero probability (" + list +
                         ") are unconstrained; a certificate covers only the remaining states");
  }
  const std::size_t nonzero = p.size() - zero.size();
  if (detector_rank(p) < nonzero) r.warnings.push_back("detectors are linearly dependent");
  r.problem = p;
  return r;
}

WitnessProblem full_basis_problem(const std::vector<PureState>& basis) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  require_two_parts(basis.front().layout(), "basis");
  const auto report = validate_state_set(basis);
  if (!report.orthonormal) throw std::invalid_argument("basis is not orthonormal");
  if (!report.complete)
    throw std::invalid_argument("basis is incomplete: " + std::to_string(basis.size()) + " of " +
                                std::to_string(basis.front().layout().total_dim()) + " vectors");

  const auto& layout = basis.front().layout();
  const std::vector<std::string> labels = {fresh_label(layout, {"C", "C'", "C_"}),
                                           fresh_label(layout, {"D", "D'", "D_"})};
  std::vector<PureState> detectors;
  detectors.reserve(basis.size());
  for (const auto& b : basis) detectors.push_back(conjugate(b).relabeled(labels));
  std::vector<double> probs(basis.size(), 1.0 / static_cast<double>(basis.size()));
  WitnessProblem problem(basis, std::move(detectors), std::move(probs));

  const double deviation = conjugate_identity_deviation(problem);
  if (!(deviation <= kIdentityTolerance))
    throw std::logic_error("conjugate-detector joint state deviates from the maximally entangled product by " +
                           std::to_string(deviation));
  return problem;
}

FullBasisReport classify_full_basis(const std::vector<PureState>& basis, double tol) {
  const WitnessProblem problem = full_basis_problem(basis);
  const auto labels = basis.front().layout().labels();
  const Bipartition cut({labels[0]}, {labels[1]});

  FullBasisReport r;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double top = schmidt(basis[i], cut).largest();
    r.largest_schmidt.push_back(top);
    if (top < 1.0 - tol) r.entangled_indices.push_back(i);
  }
  r.classification = r.entangled_indices.empty() ? BasisClass::kAllProductProbabilisticallyDistinguishable
                                                 : BasisClass::kContainsEntangledLoccIndistinguishable;
  r.identity_deviation = conjugate_identity_deviation(problem);
  r.witness = check_witness(problem, tol);
  r.cross_check_ok = r.entangled_indices.empty() || r.witness.certified();
  return r;
}

bool multipartite_product_check(const std::vector<PureState>& states, double tol) {
  if (states.empty()) throw std::invalid_argument("empty state set");
  const auto report = validate_state_set(states, tol);
  if (!report.orthonormal) throw std::invalid_argument("state set is not orthonormal");
  if (!report.complete) throw std::invalid_argument("state set is incomplete");
  return std::all_of(states.begin(), states.end(), [&](const PureState& s) { return is_fully_product(s, tol); });
}

namespace {

std::string merged_label(const std::vector<std::string>& side) {
  const bool single = std::all_of(side.begin(), side.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < side.size(); ++i) out += (i && !single ? "," : "") + side[i];
  return out;
}

}  // namespace

std::string CutReduction::implication() const {
  return "regrouped across " + cut.to_string() + ": indistinguishability of the two-party set implies "
         "indistinguishability of the original set on " + original_layout.to_string();
}

std::vector<PureState> CutReduction::restore() const {
  std::vector<Part> parts;
  for (const auto* side : {&cut.left(), &cut.right()})
    for (const auto& l : *side) parts.push_back({l, original_layout.dim_of(l)});
  const SubsystemLayout grouped(std::move(parts));
  std::vector<PureState> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(permute_parts(PureState(grouped, s.amplitudes()), original_layout.labels()));
  return out;
}

CutReduction bipartite_cut_reduction(const std::vector<PureState>& states, const Bipartition& cut) {
  if (states.empty()) throw std::invalid_argument("empty state set");
  const auto& layout = states.front().layout();
  for (const auto& s : states)
    if (!(s.layout() == layout)) throw std::invalid_argument("state set mixes layouts");
  CutReduction r{layout, cut.canonical(layout), {}};

  std::vector<std::string> order = r.cut.left();
  order.insert(order.end(), r.cut.right().begin(), r.cut.right().end());
  std::size_t dl = 1, dr = 1;
  for (const auto& l : r.cut.left()) dl *= layout.dim_of(l);
  for (const auto& l : r.cut.right()) dr *= layout.dim_of(l);
  const SubsystemLayout merged({{merged_label(r.cut.left()), dl}, {merged_label(r.cut.right()), dr}});
  for (const auto& s : states) r.states.emplace_back(merged, permute_parts(s, order).amplitudes());
  return r;
}

WitnessReport check_reduced_witness(const CutReduction& reduction, std::vector<PureState> detectors,
                                    std::vector<double> probs, double tol) {
  WitnessReport r = check_witness(WitnessProblem(reduction.states, std::move(detectors), std::move(probs), tol), tol);
  r.notes.push_back(reduction.implication());
  return r;
}

bool verify_one_way_protocol(const std::vector<PureState>& states, const std::vector<PureState>& measurement_basis,
                             double tol, std::string measured_label) {
  if (states.empty()) throw std::invalid_argument("empty state set");
  const auto& layout = states.front().layout();
  for (const auto& s : states)
    if (!(s.layout() == layout)) throw std::invalid_argument("state set mixes layouts");
  if (measured_label.empty()) measured_label = layout.parts().front().label;
  const std::size_t dim = layout.dim_of(measured_label);

  if (measurement_basis.size() != dim)
    throw std::invalid_argument("measurement basis has " + std::to_string(measurement_basis.size()) +
                                " vectors, part '" + measured_label + "' has dimension " + std::to_string(dim));
  for (const auto& m : measurement_basis)
    if (m.layout().size() != 1 || m.dim() != dim)
      throw std::invalid_argument("measurement vectors must live on a single part of dimension " + std::to_string(dim));
  if (!validate_state_set(measurement_basis, tol).orthonormal)
    throw std::invalid_argument("measurement basis is not orthonormal");

  std::vector<std::string> order{measured_label};
  for (const auto& l : layout.labels())
    if (l != measured_label) order.push_back(l);
  const auto rest = static_cast<Eigen::Index>(layout.total_dim() / dim);

  std::vector<Amplitudes> grouped;
  for (const auto& s : states) grouped.push_back(permute_parts(s, order).amplitudes());

  for (const auto& outcome : measurement_basis) {
    std::vector<Amplitudes> residuals;
    for (const auto& amps : grouped) {
      Amplitudes r = Amplitudes::Zero(rest);
      for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(dim); ++x)
        r += std::conj(outcome.amplitudes()[x]) * amps.segment(x * rest, rest);
      if (r.squaredNorm() > tol) residuals.push_back(r.normalized());
    }
    for (std::size_t i = 0; i < residuals.size(); ++i)
      for (std::size_t j = i + 1; j < residuals.size(); ++j)
        if (std::abs(residuals[i].dot(residuals[j])) > tol) return false;
  }
  return true;
}

}  // namespace loccwit
