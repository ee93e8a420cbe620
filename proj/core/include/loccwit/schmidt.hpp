#pragma once

#include "loccwit/layout.hpp"
#include "loccwit/pure_state.hpp"
#include "loccwit/schmidt_vector.hpp"

namespace loccwit {

/// Squared singular values of the amplitude matrix reshaped across `cut`,
/// min(dim left, dim right) entries, descending.
SchmidtVector schmidt(const PureState& s, const Bipartition& cut);

/// Eigenvalues of the left reduced density matrix, built by an explicit
/// partial trace over the right side. Same contract as schmidt(); kept as a
/// separate code path so the two can check each other.
SchmidtVector reduced_density_spectrum(const PureState& s, const Bipartition& cut);

/// True iff the largest Schmidt coefficient across `cut` is >= 1 - tol.
bool is_product(const PureState& s, const Bipartition& cut, double tol = 1e-9);

/// Product across every single-part-vs-rest cut.
bool is_fully_product(const PureState& s, double tol = 1e-9);

}  // namespace loccwit
