#include "eoa/bounds.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

#include "eoa/linalg.hpp"
#include "eoa/measures.hpp"
#include "eoa/rng.hpp"

namespace eoa {

namespace {

struct TraceNormEval {
  double value = 0.0;
  Matrix polar;  // U V^dag from the SVD of T(z)
};

TraceNormEval evaluate(const std::vector<Matrix>& blocks, const Vector& z) {
  Matrix t = Matrix::Zero(blocks[0].rows(), blocks[0].cols());
  for (Index i = 0; i < z.size(); ++i) t += z(i) * blocks[static_cast<std::size_t>(i)];
  Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.singularValues().sum(), svd.matrixU() * svd.matrixV().adjoint()};
}

Vector random_unit_z(Index m, std::uint64_t seed) {
  Rng rng(seed);
  Vector z(m);
  for (Index i = 0; i < m; ++i) z(i) = rng.cnormal();
  z /= z.norm();
  return z;
}

struct AscentOutcome {
  double best = 0.0;
  Vector z;
  int iterations = 0;
};

AscentOutcome ascend(const std::vector<Matrix>& blocks, Vector z, const OptimizerConfig& cfg) {
  const Index m = z.size();
  TraceNormEval cur = evaluate(blocks, z);
  double eta = 64.0;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    Vector grad(m);
    for (Index i = 0; i < m; ++i)
      grad(i) = (cur.polar.adjoint() * blocks[static_cast<std::size_t>(i)]).trace();

    bool improved = false;
    Vector z_next;
    TraceNormEval next;
    while (eta >= 1e-12) {
      z_next = z + eta * grad.conjugate();
      z_next /= z_next.norm();
      next = evaluate(blocks, z_next);
      if (next.value > cur.value) {
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
    const double gain = next.value - cur.value;
    z = std::move(z_next);
    cur = std::move(next);
    if (gain < cfg.tol * std::max(1.0, cur.value)) {
      ++it;
      break;
    }
  }
  return {cur.value, std::move(z), it};
}

}  // namespace

ABlockSet build_a_blocks(const QState& rho_ab) {
  if (rho_ab.num_subsystems() != 2)
    throw std::invalid_argument("build_a_blocks needs exactly two subsystems");
  ABlockSet out;
  out.dim_a = rho_ab.dims()[0];
  out.dim_b = rho_ab.dims()[1];
  out.source = spectral(rho_ab);
  out.rank = out.source.rank;

  const Index r = out.rank;
  Matrix support = out.source.eigenvectors.leftCols(r);
  for (Index i = 0; i < r; ++i) support.col(i) *= std::sqrt(out.source.eigenvalues(i));

  const GeneratorSet gens_a = so_generators(out.dim_a);
  const GeneratorSet gens_b = so_generators(out.dim_b);
  out.a_matrices.reserve(gens_a.generators.size() * gens_b.generators.size());
  for (const RealMatrix& la : gens_a.generators)
    for (const RealMatrix& lb : gens_b.generators) {
      // Column c of S * support is vec(L_a X_c L_b^T) with X_c the
      // (dim_a x dim_b) reshape of support column c.
      Matrix s_support(support.rows(), r);
      for (Index c = 0; c < r; ++c) {
        Matrix x(out.dim_a, out.dim_b);
        for (Index i = 0; i < out.dim_a; ++i)
          for (Index j = 0; j < out.dim_b; ++j) x(i, j) = support(i * out.dim_b + j, c);
        const Matrix y = la.cast<Complex>() * x * lb.cast<Complex>().transpose();
        for (Index i = 0; i < out.dim_a; ++i)
          for (Index j = 0; j < out.dim_b; ++j) s_support(i * out.dim_b + j, c) = y(i, j);
      }
      out.a_matrices.push_back(support.transpose() * s_support);
    }
  return out;
}

BoundReport eoa_lower_bound(const ABlockSet& blocks, const OptimizerConfig& cfg) {
  const Index m = static_cast<Index>(blocks.a_matrices.size());
  if (m == 0) throw std::invalid_argument("eoa_lower_bound needs a nonempty block set");
  if (cfg.restarts < 1 || cfg.max_iter < 1 || cfg.tol <= 0.0)
    throw std::invalid_argument("invalid optimizer configuration");

  BoundReport report;
  if (m == 1) {
    report.lower = trace_norm(blocks.a_matrices[0]);
    report.best_z.entries = Vector::Ones(1);
    report.optimizer_trace.push_back({report.lower, 0});
    report.converged = true;
  } else {
    std::vector<AscentOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    for (int rs = 0; rs < cfg.restarts; ++rs) {
      const Vector z0 = random_unit_z(m, sub_seed(cfg.seed, static_cast<std::uint64_t>(rs)));
      outcomes[static_cast<std::size_t>(rs)] = ascend(blocks.a_matrices, z0, cfg);
    }
    int best_idx = 0;
    for (int rs = 0; rs < cfg.restarts; ++rs) {
      const AscentOutcome& o = outcomes[static_cast<std::size_t>(rs)];
      report.optimizer_trace.push_back({o.best, o.iterations});
      if (o.best > outcomes[static_cast<std::size_t>(best_idx)].best) best_idx = rs;
    }
    report.lower = outcomes[static_cast<std::size_t>(best_idx)].best;
    report.best_z.entries = outcomes[static_cast<std::size_t>(best_idx)].z;
    if (cfg.restarts >= 2) {
      std::vector<double> values;
      for (const AscentOutcome& o : outcomes) values.push_back(o.best);
      std::sort(values.begin(), values.end(), std::greater<double>());
      report.converged = (values[0] - values[1]) <= 1e-7;
    }
  }

  // Upper bound from the stored spectral data of the same state.
  const Index r = blocks.rank;
  Matrix rho = blocks.source.eigenvectors.leftCols(r) *
               blocks.source.eigenvalues.head(r).asDiagonal() *
               blocks.source.eigenvectors.leftCols(r).adjoint();
  const QState state = QState::mixed({blocks.dim_a, blocks.dim_b}, hermitize(rho));
  const UpperBound ub = eoa_upper_bound(state, 0);
  report.upper = ub.concurrence;
  report.upper_tangle = ub.tangle;
  return report;
}

UpperBound eoa_upper_bound(const QState& rho_ab, int a_side) {
  if (rho_ab.num_subsystems() != 2)
    throw std::invalid_argument("eoa_upper_bound needs exactly two subsystems");
  if (a_side != 0 && a_side != 1) throw std::invalid_argument("a_side must be 0 or 1");
  const QState rho_a = partial_trace(rho_ab, {a_side});
  UpperBound out;
  out.tangle = linear_entropy(rho_a.matrix());
  out.concurrence = std::sqrt(out.tangle);
  return out;
}

double evaluate_z(const ABlockSet& blocks, const ZVector& z) {
  if (static_cast<std::size_t>(z.entries.size()) != blocks.a_matrices.size())
    throw std::invalid_argument("z length does not match the block count");
  return evaluate(blocks.a_matrices, z.entries).value;
}

}  // namespace eoa
