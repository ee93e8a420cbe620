#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loccwit/layout.hpp"
#include "loccwit/majorization.hpp"
#include "loccwit/pure_state.hpp"
#include "loccwit/schmidt_vector.hpp"

namespace loccwit {

inline constexpr double kDefaultTolerance = 1e-9;

/// States to distinguish on a two-part AB layout, one detector per state on a
/// two-part CD layout, and the superposition weights.
///
/// Detectors need not be orthogonal: the orthogonality of the states already
/// makes the joint superposition normalized.
class WitnessProblem {
 public:
  WitnessProblem(std::vector<PureState> states, std::vector<PureState> detectors,
                 std::vector<double> probs, double tol = kDefaultTolerance);

  const std::vector<PureState>& states() const { return states_; }
  const std::vector<PureState>& detectors() const { return detectors_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return states_.size(); }

  const SubsystemLayout& state_layout() const { return states_.front().layout(); }
  const SubsystemLayout& detector_layout() const { return detectors_.front().layout(); }

  /// Cut AC:BD: first state part with first detector part versus the rest.
  Bipartition witness_cut() const;
  /// Layout of the joint state: state parts followed by detector parts.
  SubsystemLayout joint_layout() const;

 private:
  std::vector<PureState> states_;
  std::vector<PureState> detectors_;
  std::vector<double> probs_;
};

enum class Verdict { kCertifiedIndistinguishable, kInconclusive };

std::string_view to_string(Verdict v);

enum class SpectrumMethod { kSvd, kPartialTrace };

struct WitnessReport {
  Verdict verdict = Verdict::kInconclusive;
  double margin = 0.0;
  double tol = kDefaultTolerance;
  SchmidtVector source_schmidt;   // joint state across AC:BD
  SchmidtVector target_average;   // sum_i p_i lambda(phi_i), padded to source length
  TransitionCheck trace;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  std::optional<WitnessProblem> problem;

  bool certified() const { return verdict == Verdict::kCertifiedIndistinguishable; }
};

/// sum_i sqrt(p_i) |psi_i>_AB |phi_i>_CD in (A, B, C, D) order.
PureState build_joint_state(const WitnessProblem& p);

/// Runs the majorization test across AC:BD. CERTIFIED only when the
/// violation margin exceeds tol.
WitnessReport check_witness(const WitnessProblem& p, double tol = kDefaultTolerance,
                            SpectrumMethod method = SpectrumMethod::kSvd);

/// Violation margin only; skips report assembly. Used in search inner loops.
double witness_margin(const WitnessProblem& p, SpectrumMethod method = SpectrumMethod::kSvd);

/// Detectors are the complex conjugates of a complete orthonormal basis,
/// uniform weights. Verifies numerically that the joint state equals the
/// product of maximally entangled AC and BD states; throws std::logic_error
/// if that identity fails and std::invalid_argument for a bad basis.
WitnessProblem full_basis_problem(const std::vector<PureState>& basis);

enum class BasisClass { kAllProductProbabilisticallyDistinguishable, kContainsEntangledLoccIndistinguishable };

std::string_view to_string(BasisClass c);

struct FullBasisReport {
  BasisClass classification = BasisClass::kAllProductProbabilisticallyDistinguishable;
  std::vector<double> largest_schmidt;        // per basis vector, across the state cut
  std::vector<std::size_t> entangled_indices;
  double identity_deviation = 0.0;            // joint state vs product of maximally entangled states
  WitnessReport witness;
  /// Holds unless the basis is entangled but the witness did not certify.
  bool cross_check_ok = true;
};

FullBasisReport classify_full_basis(const std::vector<PureState>& basis, double tol = kDefaultTolerance);

/// True iff every state of a complete orthonormal set is fully product.
bool multipartite_product_check(const std::vector<PureState>& states, double tol = kDefaultTolerance);

/// States regrouped onto a two-part layout along a cut.
struct CutReduction {
  SubsystemLayout original_layout;
  Bipartition cut;
  std::vector<PureState> states;

  /// Indistinguishability of the reduced set implies it for the original set.
  std::string implication() const;
  /// Inverse regrouping back onto the original layout.
  std::vector<PureState> restore() const;
};

CutReduction bipartite_cut_reduction(const std::vector<PureState>& states, const Bipartition& cut);

/// check_witness on a reduced set, with the implication recorded in notes.
WitnessReport check_reduced_witness(const CutReduction& reduction, std::vector<PureState> detectors,
                                    std::vector<double> probs, double tol = kDefaultTolerance);

/// One projective measurement on `measured_label` (default: first part)
/// followed by communication. True iff for every outcome the residual states
/// with nonzero probability are pairwise orthogonal within tol.
bool verify_one_way_protocol(const std::vector<PureState>& states,
                             const std::vector<PureState>& measurement_basis,
                             double tol = kDefaultTolerance, std::string measured_label = {});

}  // namespace loccwit
