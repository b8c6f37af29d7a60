#pragma once

#include <functional>

#include "eoa/types.hpp"

namespace eoa {

struct AscentResult {
  double best = 0.0;
  RealVector params;
  int evals = 0;
};

// Gradient-free cyclic coordinate ascent: probe +/- step per coordinate,
// accept greedily and keep walking a winning direction, halve the step
// after a full pass without improvement.
AscentResult coordinate_ascent(const std::function<double(const RealVector&)>& objective,
                               RealVector init, int max_evals, double step0 = 0.5,
                               double min_step = 1e-5);

// First r columns of exp(iH) where the Hermitian k x k matrix H is filled
// from k^2 real parameters (diagonal first, then row-major off-diagonal
// re/im pairs).
Matrix isometry_from_params(const RealVector& params, Index k, Index r);

}  // namespace eoa
