#include "eoa/search.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace eoa {

AscentResult coordinate_ascent(const std::function<double(const RealVector&)>& objective,
                               RealVector init, int max_evals, double step0, double min_step) {
  AscentResult out;
  out.params = std::move(init);
  out.best = objective(out.params);
  out.evals = 1;

  const Index n = out.params.size();
  double step = step0;
  while (step >= min_step && out.evals < max_evals) {
    bool any = false;
    for (Index c = 0; c < n && out.evals < max_evals; ++c) {
      for (double sign : {1.0, -1.0}) {
        RealVector trial = out.params;
        trial(c) += sign * step;
        const double f = objective(trial);
        ++out.evals;
        if (f > out.best) {
          out.best = f;
          out.params = trial;
          any = true;
          while (out.evals < max_evals) {
            trial(c) += sign * step;
            const double g = objective(trial);
            ++out.evals;
            if (g <= out.best) break;
            out.best = g;
            out.params = trial;
          }
          break;
        }
        if (out.evals >= max_evals) break;
      }
    }
    if (!any) step *= 0.5;
  }
  return out;
}

Matrix isometry_from_params(const RealVector& params, Index k, Index r) {
  if (params.size() != k * k)
    throw std::invalid_argument("isometry parametrization needs k^2 parameters");
  if (r > k) throw std::invalid_argument("isometry needs r <= k");
  Matrix h(k, k);
  for (Index i = 0; i < k; ++i) h(i, i) = Complex(params(i), 0.0);
  Index p = k;
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      h(i, j) = Complex(params(p), params(p + 1));
      h(j, i) = std::conj(h(i, j));
      p += 2;
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("isometry eigensolve failed");
  Vector phases(k);
  for (Index i = 0; i < k; ++i)
    phases(i) = std::exp(Complex(0.0, es.eigenvalues()(i)));
  const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return u.leftCols(r);
}

}  // namespace eoa
