#pragma once

#include <cstdint>
#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

struct OracleConfig {
  int restarts = 64;
  Index k = 0;  // ensemble size; 0 picks rank^2
  int max_evals = 2000;
  std::uint64_t seed = 0;
};

// Pure-state ensemble of a density matrix together with the isometry that
// produced it from the eigendecomposition.
struct Ensemble {
  RealVector probabilities;
  std::vector<Vector> members;
  Matrix mixing;  // k x r, columns orthonormal
};

struct OracleResult {
  double value = 0.0;
  Ensemble best_ensemble;
  Index k_used = 0;
  int restarts_run = 0;
  bool converged = false;
};

// Ensemble from mixing the eigendecomposition on its support: member i is
// the normalized i-th column of Psi_r M_r^{1/2} U^dag. Members lighter
// than the weight cutoff are dropped.
Ensemble decompose(const QState& rho, const Matrix& u);

// Average concurrence / squared concurrence of an ensemble across the
// (dim_a, dim_b) cut.
double ensemble_average_concurrence(const Ensemble& ensemble, Index dim_a, Index dim_b);
double ensemble_average_tangle(const Ensemble& ensemble, Index dim_a, Index dim_b);

// Best found value of sum_i p_i C(phi_i) over isometry-mixed ensembles.
OracleResult eoa_oracle(const QState& rho, const OracleConfig& cfg = {});

// Same search with the squared-concurrence objective.
OracleResult tangle_oracle(const QState& rho, const OracleConfig& cfg = {});

// Best found value of sum_x p_x S2(rho_x) over rank-1 POVMs on the
// measured subsystem of a pure state; cut_a lists the subsystems forming
// side A of the remaining bipartition.
OracleResult povm_tangle_oracle(const QState& psi, int measured, const std::vector<int>& cut_a,
                                const OracleConfig& cfg = {});

}  // namespace eoa
