#pragma once

#include <cstdint>
#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

struct OptimizerConfig {
  int restarts = 32;
  double tol = 1e-9;
  int max_iter = 500;
  std::uint64_t seed = 0;
};

// A_mn = M^{1/2} Psi^T (L_m x L_n) Psi M^{1/2} on the rank-r support,
// one complex symmetric r x r matrix per generator pair, (m, n) ordered
// with the first-side index outermost.
struct ABlockSet {
  std::vector<Matrix> a_matrices;
  SpectralDecomp source;
  Index dim_a = 0;
  Index dim_b = 0;
  Index rank = 0;
};

struct ZVector {
  Vector entries;
  RealVector magnitudes() const { return entries.cwiseAbs(); }
  RealVector phases() const {
    RealVector out(entries.size());
    for (Index i = 0; i < entries.size(); ++i) out(i) = std::arg(entries(i));
    return out;
  }
};

struct RestartTrace {
  double best = 0.0;
  int iterations = 0;
};

struct BoundReport {
  double lower = 0.0;
  double upper = 0.0;         // concurrence scale, sqrt(2(1 - Tr rho_A^2))
  double upper_tangle = 0.0;  // 2(1 - Tr rho_A^2)
  ZVector best_z;
  std::vector<RestartTrace> optimizer_trace;
  bool converged = false;
};

struct UpperBound {
  double tangle = 0.0;
  double concurrence = 0.0;
};

ABlockSet build_a_blocks(const QState& rho_ab);

// max over unit-norm complex z of the trace norm of sum_mn z_mn A_mn,
// multi-start subgradient ascent; any iterate is a valid lower bound.
BoundReport eoa_lower_bound(const ABlockSet& blocks, const OptimizerConfig& cfg = {});

// 2(1 - Tr rho_A^2) and its square root; a_side picks which subsystem is A.
UpperBound eoa_upper_bound(const QState& rho_ab, int a_side = 0);

// Trace norm of sum_i z_i A_i for a feasibility recheck.
double evaluate_z(const ABlockSet& blocks, const ZVector& z);

}  // namespace eoa
