#pragma once

#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

// Antisymmetric basis L^{(jk)} = |j><k| - |k><j| for j < k, lexicographic.
struct GeneratorSet {
  Index d = 0;
  std::vector<RealMatrix> generators;
};

GeneratorSet so_generators(Index d);

struct MeasureValue {
  enum class Method { ClosedForm, Spectral };
  double value = 0.0;
  Method method = Method::ClosedForm;
};

// Pauli matrix: 0 = I, 1 = X, 2 = Y, 3 = Z.
const Matrix& pauli(int i);

// sigma_y (x) sigma_y, the two-qubit spin-flip kernel.
const Matrix& spin_flip_kernel();

// I-concurrence of a pure bipartite state via the generator-pair sum,
// normalized so the square equals 2(1 - Tr rho_A^2).
MeasureValue i_concurrence(const QState& psi, const GeneratorSet& gens_a,
                           const GeneratorSet& gens_b);

MeasureValue linear_entropy(const QState& rho);
double linear_entropy(const Matrix& rho);

// Descending lambda_i: singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)).
Eigen::Vector4d spin_flip_spectrum(const Matrix& rho);

MeasureValue wootters_concurrence(const QState& rho);
MeasureValue concurrence_of_assistance_2q(const QState& rho);

// Tr[(sy x sy) rho* (sy x sy) rho], clamped at zero.
MeasureValue sigma_y_chain_lb(const QState& rho);

}  // namespace eoa
