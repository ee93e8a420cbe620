#pragma once

#include <complex>
#include <string>
#include <vector>

#include "loccwit/pure_state.hpp"

// Fixed states used throughout the tests and bundled CLI fixtures.
namespace loccwit::fixtures {

/// exp(2 pi i / 3).
std::complex<double> omega();

SubsystemLayout qubit_pair(const std::string& left = "A", const std::string& right = "B");
SubsystemLayout qutrit_pair(const std::string& left = "A", const std::string& right = "B");

/// (Phi+, Phi-, Psi+, Psi-) on a two-qubit layout.
std::vector<PureState> bell_states(const std::string& left = "A", const std::string& right = "B");

/// (1/sqrt d) sum_j omega_d^{a j} |j>|j+b>, indexed by b*d + a. For d = 2 this
/// is bell_states() in the same order.
std::vector<PureState> bell_type_basis(std::size_t d, const std::string& left, const std::string& right);

/// (1/sqrt d) sum_j |jj>.
PureState max_entangled(std::size_t d, const std::string& left, const std::string& right);

/// Three orthogonal maximally entangled 3x3 states, locally distinguishable.
std::vector<PureState> set_S();
/// set_S() with the third state replaced by the product state |01>.
std::vector<PureState> set_S_prime();

/// Alice's measurement basis (1/sqrt3)(|0> + w^k |1> + w^{2k} |2>), k = 0, 1, 2.
std::vector<PureState> omega_basis(const std::string& label = "A");

/// Nine-state orthogonal product basis of 3x3 in the domino tiling pattern.
std::vector<PureState> domino_basis();

}  // namespace loccwit::fixtures
