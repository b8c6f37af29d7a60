#include "eoa/channel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <stdexcept>

#include "eoa/linalg.hpp"
#include "eoa/measures.hpp"
#include "eoa/rng.hpp"
#include "eoa/search.hpp"

namespace eoa {

namespace {

void require_two_qubit(const QState& state, const char* who) {
  if (state.dims() != Dims{2, 2})
    throw std::invalid_argument(std::string(who) + " needs a two-qubit state");
}

Eigen::Vector3d bloch_vector(const Matrix& rho) {
  Eigen::Vector3d b;
  for (int i = 0; i < 3; ++i) b(i) = (pauli(i + 1) * rho).trace().real();
  return b;
}

}  // namespace

Matrix ChannelBloch::apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out += x(k, l) * choi[static_cast<std::size_t>(2 * k + l)];
  return out;
}

QState symmetric_purification(const QState& rho_b) {
  if (rho_b.dims() != Dims{2})
    throw std::invalid_argument("symmetric_purification needs a single-qubit state");
  const SpectralDecomp sd = spectral(rho_b.density());
  Vector v = Vector::Zero(4);
  for (Index k = 0; k < 2; ++k)
    v.segment(2 * k, 2) += std::sqrt(sd.eigenvalues(k)) * sd.eigenvectors.col(k);
  v /= v.norm();
  return QState::pure({2, 2}, std::move(v));
}

ChannelBloch extract_channel(const QState& rho_ab) {
  require_two_qubit(rho_ab, "extract_channel");
  const Matrix rho = rho_ab.density();
  const QState rho_b = partial_trace(rho_ab, {1});
  const SpectralDecomp sd = spectral(rho_b.matrix());
  if (sd.eigenvalues(1) <= 1e-10)
    throw std::domain_error(
        "rho_B is rank deficient; apply normalize_filter before channel extraction");

  ChannelBloch ch;
  ch.basis = sd.eigenvectors;
  ch.mu = Eigen::Vector2d(sd.eigenvalues(0), sd.eigenvalues(1));

  // Lambda(|k><l|) = Tr_B[rho (I x |v_l><v_k|)] / sqrt(mu_k mu_l).
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      Matrix e = Matrix::Zero(2, 2);
      for (Index a = 0; a < 2; ++a)
        for (Index ap = 0; ap < 2; ++ap) {
          Complex acc(0.0, 0.0);
          for (Index b = 0; b < 2; ++b)
            for (Index bp = 0; bp < 2; ++bp)
              acc += rho(2 * a + b, 2 * ap + bp) * sd.eigenvectors(bp, l) *
                     std::conj(sd.eigenvectors(b, k));
          e(a, ap) = acc;
        }
      e /= std::sqrt(ch.mu(k) * ch.mu(l));
      ch.choi[static_cast<std::size_t>(2 * k + l)] = std::move(e);
    }

  for (int i = 0; i < 3; ++i) {
    ch.shift(i) = 0.5 * (pauli(i + 1) * ch.apply(pauli(0))).trace().real();
    for (int j = 0; j < 3; ++j)
      ch.l_matrix(i, j) = 0.5 * (pauli(i + 1) * ch.apply(pauli(j + 1))).trace().real();
  }
  return ch;
}

double i_measure(const QState& rho_ab) {
  const ChannelBloch ch = extract_channel(rho_ab);
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(ch.l_matrix);
  const double sigma_min = svd.singularValues().minCoeff();
  const QState rho_b = partial_trace(rho_ab, {1});
  return sigma_min * sigma_min * linear_entropy(rho_b.matrix());
}

double i_measure_direct(const QState& rho_ab, const OracleConfig& cfg) {
  require_two_qubit(rho_ab, "i_measure_direct");
  if (cfg.restarts < 1 || cfg.max_evals < 1)
    throw std::invalid_argument("invalid oracle configuration");
  const QState rho_b = partial_trace(rho_ab, {1});
  const SpectralDecomp sd = spectral(rho_b.matrix());
  if (sd.rank < 2) return 0.0;  // product state: measuring B reveals nothing

  const ChannelBloch ch = extract_channel(rho_ab);
  const double s2_a = linear_entropy(partial_trace(rho_ab, {0}).matrix());

  // Decompositions of rho_B in the label basis, where rho_B = diag(mu).
  Matrix support = Matrix::Zero(2, 2);
  support(0, 0) = std::sqrt(ch.mu(0));
  support(1, 1) = std::sqrt(ch.mu(1));
  const Index k = (cfg.k == 0) ? 4 : cfg.k;
  if (k < 2) throw std::invalid_argument("ensemble size k must be at least the rank");

  const auto objective = [&](const RealVector& params) {
    const Matrix u = isometry_from_params(params, k, 2);
    const Matrix members = support * u.adjoint();
    double total = 0.0;
    for (Index c = 0; c < members.cols(); ++c) {
      const double p = members.col(c).squaredNorm();
      if (p < tol::ensemble_weight) continue;
      Matrix label = members.col(c) * members.col(c).adjoint();
      const Matrix out = ch.apply(label);
      total += std::max(0.0, 2.0 * (p - out.squaredNorm() / p));
    }
    return total;
  };

  double best = 0.0;
  std::vector<double> tops;
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    RealVector init = RealVector::Zero(k * k);
    if (rs > 0) {
      Rng rng(sub_seed(cfg.seed, static_cast<std::uint64_t>(rs)));
      for (Index i = 0; i < k * k; ++i) init(i) = 0.7 * rng.normal();
    }
    const AscentResult res = coordinate_ascent(objective, std::move(init), cfg.max_evals);
    best = std::max(best, res.best);
  }

  // Analytic two-member ensemble along the smallest axis of L^T L: members
  // x_pm = r_perp +/- s e_min stay unit length and average to the Bloch
  // vector of rho_B.
  {
    const Eigen::Matrix3d m = ch.l_matrix.transpose() * ch.l_matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    const Eigen::Vector3d axis = es.eigenvectors().col(0);
    const Eigen::Vector3d r_b(0.0, 0.0, ch.mu(0) - ch.mu(1));
    const double r_par = axis.dot(r_b);
    const Eigen::Vector3d r_perp = r_b - r_par * axis;
    const double s = std::sqrt(std::max(0.0, 1.0 - r_perp.squaredNorm()));
    if (s > 1e-12) {
      const double p_plus = 0.5 * (1.0 + r_par / s);
      const double p_minus = 1.0 - p_plus;
      double value = 0.0;
      for (const auto& [p, sign] : {std::pair{p_plus, 1.0}, std::pair{p_minus, -1.0}}) {
        const Eigen::Vector3d x = r_perp + sign * s * axis;
        const Eigen::Vector3d mapped = ch.l_matrix * x + ch.shift;
        value += p * (1.0 - mapped.squaredNorm());
      }
      best = std::max(best, value);
    }
  }
  return std::max(0.0, s2_a - best);
}

double filter_normalization(const QState& rho_ab, const FilterOp& f) {
  require_two_qubit(rho_ab, "filter_normalization");
  const Matrix op = kron(Matrix::Identity(2, 2), Matrix(f.b.adjoint() * f.b));
  return (op * rho_ab.density()).trace().real();
}

QState apply_filter(const QState& rho_ab, const FilterOp& f) {
  require_two_qubit(rho_ab, "apply_filter");
  if (f.b.rows() != 2 || f.b.cols() != 2)
    throw std::invalid_argument("filter must be a 2x2 matrix");
  const double n = filter_normalization(rho_ab, f);
  if (n <= 1e-12) throw std::domain_error("filter normalization vanishes");
  const Matrix k = kron(Matrix::Identity(2, 2), f.b);
  Matrix out = (k * rho_ab.density() * k.adjoint()) / n;
  return QState::mixed({2, 2}, hermitize(out));
}

std::pair<FilterOp, QState> normalize_filter(const QState& rho_ab) {
  require_two_qubit(rho_ab, "normalize_filter");
  const QState rho_b = partial_trace(rho_ab, {1});
  const SpectralDecomp sd = spectral(rho_b.matrix());
  if (sd.eigenvalues(1) <= 1e-10)
    throw std::domain_error("rho_B is rank deficient; no balancing filter exists");
  Vector inv_roots(2);
  for (Index i = 0; i < 2; ++i) inv_roots(i) = 1.0 / std::sqrt(2.0 * sd.eigenvalues(i));
  FilterOp f;
  f.b = sd.eigenvectors * inv_roots.asDiagonal() * sd.eigenvectors.adjoint();
  f.normalization = filter_normalization(rho_ab, f);
  return {f, apply_filter(rho_ab, f)};
}

Matrix su2_from_so3(const Eigen::Matrix3d& rot) {
  const double trace = rot.trace();
  double w, x, y, z;
  if (trace > 0.0) {
    const double s = std::sqrt(trace + 1.0) * 2.0;
    w = 0.25 * s;
    x = (rot(2, 1) - rot(1, 2)) / s;
    y = (rot(0, 2) - rot(2, 0)) / s;
    z = (rot(1, 0) - rot(0, 1)) / s;
  } else if (rot(0, 0) > rot(1, 1) && rot(0, 0) > rot(2, 2)) {
    const double s = std::sqrt(1.0 + rot(0, 0) - rot(1, 1) - rot(2, 2)) * 2.0;
    w = (rot(2, 1) - rot(1, 2)) / s;
    x = 0.25 * s;
    y = (rot(0, 1) + rot(1, 0)) / s;
    z = (rot(0, 2) + rot(2, 0)) / s;
  } else if (rot(1, 1) > rot(2, 2)) {
    const double s = std::sqrt(1.0 + rot(1, 1) - rot(0, 0) - rot(2, 2)) * 2.0;
    w = (rot(0, 2) - rot(2, 0)) / s;
    x = (rot(0, 1) + rot(1, 0)) / s;
    y = 0.25 * s;
    z = (rot(1, 2) + rot(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + rot(2, 2) - rot(0, 0) - rot(1, 1)) * 2.0;
    w = (rot(1, 0) - rot(0, 1)) / s;
    x = (rot(0, 2) + rot(2, 0)) / s;
    y = (rot(1, 2) + rot(2, 1)) / s;
    z = 0.25 * s;
  }
  const Complex i(0.0, 1.0);
  return w * pauli(0) - i * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

NormalForm normal_form(const QState& rho_ab) {
  require_two_qubit(rho_ab, "normal_form");
  const Matrix rho = rho_ab.density();
  const Matrix rho_b = partial_trace(rho_ab, {1}).matrix();
  const double dev = (rho_b - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  if (dev > 1e-8)
    throw std::domain_error("normal_form needs rho_B = I/2; run normalize_filter first");

  Eigen::Vector3d a;
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    a(i) = (kron(pauli(i + 1), pauli(0)) * rho).trace().real();
    for (int j = 0; j < 3; ++j)
      t(i, j) = (kron(pauli(i + 1), pauli(j + 1)) * rho).trace().real();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d q = svd.matrixU();
  Eigen::Matrix3d p = svd.matrixV();
  double r3_sign = 1.0;
  if (q.determinant() < 0.0) {
    q.col(2) *= -1.0;
    r3_sign = -r3_sign;
  }
  if (p.determinant() < 0.0) {
    p.col(2) *= -1.0;
    r3_sign = -r3_sign;
  }

  NormalForm nf;
  nf.r = svd.singularValues();
  nf.r(2) *= r3_sign;
  nf.t = q.transpose() * a;
  nf.u1 = su2_from_so3(q.transpose());
  nf.u2 = su2_from_so3(p.transpose());

  Matrix rebuilt = Matrix::Identity(4, 4);
  for (int i = 0; i < 3; ++i) {
    rebuilt += nf.t(i) * kron(pauli(i + 1), pauli(0));
    rebuilt += nf.r(i) * kron(pauli(i + 1), pauli(i + 1));
  }
  rebuilt *= 0.25;
  const Matrix local = kron(nf.u1, nf.u2);
  nf.residual = (local * rho * local.adjoint() - rebuilt).cwiseAbs().maxCoeff();
  return nf;
}

ChainReport final_chain_check(const QState& rho_ab, const OracleConfig& cfg) {
  require_two_qubit(rho_ab, "final_chain_check");
  const Matrix rho_b = partial_trace(rho_ab, {1}).matrix();
  if ((rho_b - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::domain_error("final_chain_check needs rho_B = I/2; run normalize_filter first");

  ChainReport report;
  report.tangle_result = tangle_oracle(rho_ab, cfg);
  const double ca = concurrence_of_assistance_2q(rho_ab).value;
  report.ca_squared = ca * ca;
  // The ensemble reaching Ca also certifies sum p C^2 >= (sum p C)^2, so
  // Ca^2 is a valid floor when the search lands short of it.
  report.tangle = std::max(report.tangle_result.value, report.ca_squared);
  report.sigma_chain = sigma_y_chain_lb(rho_ab).value;
  report.i_lower = i_measure(rho_ab);
  report.margins = {report.tangle - report.ca_squared, report.ca_squared - report.sigma_chain,
                    report.sigma_chain - report.i_lower};
  return report;
}

}  // namespace eoa
