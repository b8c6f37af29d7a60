#include "eoa/oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

#include "eoa/linalg.hpp"
#include "eoa/rng.hpp"
#include "eoa/search.hpp"

namespace eoa {

namespace {

// Psi_r M_r^{1/2}: columns carry the eigenvalue weights on the support.
Matrix support_matrix(const SpectralDecomp& sd) {
  Matrix b = sd.eigenvectors.leftCols(sd.rank);
  for (Index i = 0; i < sd.rank; ++i) b.col(i) *= std::sqrt(sd.eigenvalues(i));
  return b;
}

// Squared Frobenius norm of the one-sided gram of a subnormalized column
// reshaped to (da, db).
double gram_purity(const Vector& col, Index da, Index db) {
  Matrix x(da, db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j) x(i, j) = col(i * db + j);
  return (x * x.adjoint()).squaredNorm();
}

// p * C^2 for a subnormalized member: 2(p - Tr[G^2]/p).
double column_tangle(const Vector& col, Index da, Index db) {
  const double p = col.squaredNorm();
  if (p < tol::ensemble_weight) return 0.0;
  return std::max(0.0, 2.0 * (p - gram_purity(col, da, db) / p));
}

// p * C for a subnormalized member: sqrt(2(p^2 - Tr[G^2])).
double column_concurrence(const Vector& col, Index da, Index db) {
  const double p = col.squaredNorm();
  if (p < tol::ensemble_weight) return 0.0;
  return std::sqrt(std::max(0.0, 2.0 * (p * p - gram_purity(col, da, db))));
}

struct RestartOutcome {
  double best = 0.0;
  RealVector params;
};

// Multi-start coordinate ascent over isometry parameters; restart 0 starts
// from the identity mixing, the rest from seeded gaussian draws.
std::vector<RestartOutcome> run_restarts(const std::function<double(const RealVector&)>& objective,
                                         Index n_params, const OracleConfig& cfg) {
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    RealVector init = RealVector::Zero(n_params);
    if (rs > 0) {
      Rng rng(sub_seed(cfg.seed, static_cast<std::uint64_t>(rs)));
      for (Index i = 0; i < n_params; ++i) init(i) = 0.7 * rng.normal();
    }
    const AscentResult res = coordinate_ascent(objective, std::move(init), cfg.max_evals);
    outcomes[static_cast<std::size_t>(rs)] = {res.best, res.params};
  }
  return outcomes;
}

int best_index(const std::vector<RestartOutcome>& outcomes) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(outcomes.size()); ++i)
    if (outcomes[static_cast<std::size_t>(i)].best > outcomes[static_cast<std::size_t>(best)].best)
      best = i;
  return best;
}

bool top_two_agree(const std::vector<RestartOutcome>& outcomes) {
  if (outcomes.size() < 2) return false;
  std::vector<double> values;
  values.reserve(outcomes.size());
  for (const RestartOutcome& o : outcomes) values.push_back(o.best);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return (values[0] - values[1]) <= 1e-7;
}

OracleResult run_ensemble_oracle(const QState& rho, const OracleConfig& cfg, bool squared) {
  if (rho.num_subsystems() != 2)
    throw std::invalid_argument("ensemble oracle needs exactly two subsystems");
  if (cfg.restarts < 1 || cfg.max_evals < 1)
    throw std::invalid_argument("invalid oracle configuration");
  const Index da = rho.dims()[0];
  const Index db = rho.dims()[1];
  const SpectralDecomp sd = spectral(rho);
  const Index r = sd.rank;
  const Index k = (cfg.k == 0) ? r * r : cfg.k;
  if (k < r) throw std::invalid_argument("ensemble size k must be at least the rank");
  const Matrix b = support_matrix(sd);

  const auto objective = [&](const RealVector& params) {
    const Matrix u = isometry_from_params(params, k, r);
    const Matrix members = b * u.adjoint();
    double total = 0.0;
    for (Index c = 0; c < members.cols(); ++c)
      total += squared ? column_tangle(members.col(c), da, db)
                       : column_concurrence(members.col(c), da, db);
    return total;
  };

  const std::vector<RestartOutcome> outcomes = run_restarts(objective, k * k, cfg);
  const int best = best_index(outcomes);

  OracleResult result;
  result.k_used = k;
  result.restarts_run = cfg.restarts;
  result.converged = top_two_agree(outcomes);
  const Matrix u = isometry_from_params(outcomes[static_cast<std::size_t>(best)].params, k, r);
  result.best_ensemble = decompose(rho, u);
  result.value = squared ? ensemble_average_tangle(result.best_ensemble, da, db)
                         : ensemble_average_concurrence(result.best_ensemble, da, db);
  return result;
}

}  // namespace

Ensemble decompose(const QState& rho, const Matrix& u) {
  const SpectralDecomp sd = spectral(rho);
  const Index r = sd.rank;
  if (u.cols() != r)
    throw std::invalid_argument("mixing matrix must have rank(rho) columns");
  if (u.rows() < r) throw std::invalid_argument("mixing matrix needs at least rank(rho) rows");
  const double iso_dev = (u.adjoint() * u - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (iso_dev > tol::isometry)
    throw std::invalid_argument("mixing matrix is not an isometry, deviation = " +
                                std::to_string(iso_dev));

  const Matrix members = support_matrix(sd) * u.adjoint();
  Ensemble out;
  out.mixing = u;
  std::vector<double> probs;
  for (Index c = 0; c < members.cols(); ++c) {
    const double p = members.col(c).squaredNorm();
    if (p < tol::ensemble_weight) continue;
    probs.push_back(p);
    out.members.push_back(members.col(c) / std::sqrt(p));
  }
  out.probabilities = Eigen::Map<const RealVector>(probs.data(), static_cast<Index>(probs.size()));
  return out;
}

double ensemble_average_concurrence(const Ensemble& ensemble, Index dim_a, Index dim_b) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const double tr2 = gram_purity(ensemble.members[i], dim_a, dim_b);
    total += ensemble.probabilities(static_cast<Index>(i)) *
             std::sqrt(std::max(0.0, 2.0 * (1.0 - tr2)));
  }
  return total;
}

double ensemble_average_tangle(const Ensemble& ensemble, Index dim_a, Index dim_b) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const double tr2 = gram_purity(ensemble.members[i], dim_a, dim_b);
    total += ensemble.probabilities(static_cast<Index>(i)) * std::max(0.0, 2.0 * (1.0 - tr2));
  }
  return total;
}

OracleResult eoa_oracle(const QState& rho, const OracleConfig& cfg) {
  return run_ensemble_oracle(rho, cfg, false);
}

OracleResult tangle_oracle(const QState& rho, const OracleConfig& cfg) {
  return run_ensemble_oracle(rho, cfg, true);
}

OracleResult povm_tangle_oracle(const QState& psi, int measured, const std::vector<int>& cut_a,
                                const OracleConfig& cfg) {
  if (!psi.is_pure()) throw std::invalid_argument("povm_tangle_oracle needs a pure state");
  if (cfg.restarts < 1 || cfg.max_evals < 1)
    throw std::invalid_argument("invalid oracle configuration");
  const int n = psi.num_subsystems();
  if (measured < 0 || measured >= n)
    throw std::invalid_argument("measured subsystem out of range");
  if (cut_a.empty()) throw std::invalid_argument("cut must be nonempty");
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  taken[static_cast<std::size_t>(measured)] = true;
  for (int s : cut_a) {
    if (s < 0 || s >= n || taken[static_cast<std::size_t>(s)])
      throw std::invalid_argument("cut must list distinct unmeasured subsystems");
    taken[static_cast<std::size_t>(s)] = true;
  }
  std::vector<int> order(cut_a);
  std::vector<int> other;
  for (int s = 0; s < n; ++s)
    if (!taken[static_cast<std::size_t>(s)]) other.push_back(s);
  if (other.empty())
    throw std::invalid_argument("cut must leave a nonempty second side");
  order.insert(order.end(), other.begin(), other.end());
  order.push_back(measured);

  const QState permuted = permute_subsystems(psi, order);
  Index d_a = 1, d_other = 1;
  for (std::size_t i = 0; i < cut_a.size(); ++i) d_a *= permuted.dims()[static_cast<Index>(i)];
  for (std::size_t i = cut_a.size(); i + 1 < permuted.dims().size(); ++i)
    d_other *= permuted.dims()[static_cast<Index>(i)];
  const Index d_m = permuted.dims().back();
  const Index d_rest = d_a * d_other;

  Matrix mpsi(d_rest, d_m);
  for (Index a = 0; a < d_rest; ++a)
    for (Index m = 0; m < d_m; ++m) mpsi(a, m) = permuted.vector()(a * d_m + m);

  Eigen::JacobiSVD<Matrix> svd(mpsi);
  Index r = 0;
  while (r < svd.singularValues().size() &&
         svd.singularValues()(r) * svd.singularValues()(r) > tol::support_cutoff)
    ++r;
  Index q = (cfg.k == 0) ? r * r : cfg.k;
  if (cfg.k != 0 && q < d_m)
    throw std::invalid_argument("POVM outcome count must be at least the measured dimension");
  q = std::max(q, d_m);

  const auto objective = [&](const RealVector& params) {
    const Matrix w = isometry_from_params(params, q, d_m);
    const Matrix posteriors = mpsi * w.adjoint();
    double total = 0.0;
    for (Index c = 0; c < posteriors.cols(); ++c)
      total += column_tangle(posteriors.col(c), d_a, d_other);
    return total;
  };

  const std::vector<RestartOutcome> outcomes = run_restarts(objective, q * q, cfg);
  const int best = best_index(outcomes);

  OracleResult result;
  result.k_used = q;
  result.restarts_run = cfg.restarts;
  result.converged = top_two_agree(outcomes);
  const Matrix w = isometry_from_params(outcomes[static_cast<std::size_t>(best)].params, q, d_m);
  const Matrix posteriors = mpsi * w.adjoint();
  result.best_ensemble.mixing = w;
  std::vector<double> probs;
  for (Index c = 0; c < posteriors.cols(); ++c) {
    const double p = posteriors.col(c).squaredNorm();
    if (p < tol::ensemble_weight) continue;
    probs.push_back(p);
    result.best_ensemble.members.push_back(posteriors.col(c) / std::sqrt(p));
  }
  result.best_ensemble.probabilities =
      Eigen::Map<const RealVector>(probs.data(), static_cast<Index>(probs.size()));
  result.value = ensemble_average_tangle(result.best_ensemble, d_a, d_other);
  return result;
}

}  // namespace eoa
