#include "eoa/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <string>

#include "eoa/linalg.hpp"
#include "eoa/rng.hpp"

namespace eoa {

namespace {

void check_dims(const Dims& dims, Index total) {
  if (dims.empty()) throw std::invalid_argument("state needs at least one subsystem");
  for (Index d : dims)
    if (d < 1) throw std::invalid_argument("subsystem dimension must be positive");
  if (dim_product(dims) != total)
    throw std::invalid_argument("dims product " + std::to_string(dim_product(dims)) +
                                " does not match data size " + std::to_string(total));
}

void check_density(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::hermiticity)
    throw std::invalid_argument("density matrix not Hermitian, deviation = " +
                                std::to_string(herm_dev));
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::trace_one)
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) +
                                ", expected 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < tol::negative_eval)
    throw std::invalid_argument("density matrix has eigenvalue " + std::to_string(lowest));
}

}  // namespace

QState::QState(Kind kind, Dims dims, Vector amps, Matrix rho)
    : kind_(kind), dims_(std::move(dims)), amplitudes_(std::move(amps)), rho_(std::move(rho)) {}

QState QState::pure(Dims dims, Vector amplitudes) {
  check_dims(dims, amplitudes.size());
  const double norm_dev = std::abs(amplitudes.norm() - 1.0);
  if (norm_dev > tol::trace_one)
    throw std::invalid_argument("pure state norm deviates from 1 by " + std::to_string(norm_dev));
  return QState(Kind::Pure, std::move(dims), std::move(amplitudes), Matrix());
}

QState QState::mixed(Dims dims, Matrix rho) {
  check_dims(dims, rho.rows());
  check_density(rho);
  return QState(Kind::Mixed, std::move(dims), Vector(), std::move(rho));
}

Index QState::dim() const noexcept { return dim_product(dims_); }

const Vector& QState::vector() const {
  if (kind_ != Kind::Pure) throw std::logic_error("vector() called on a mixed state");
  return amplitudes_;
}

const Matrix& QState::matrix() const {
  if (kind_ != Kind::Mixed) throw std::logic_error("matrix() called on a pure state");
  return rho_;
}

Matrix QState::density() const {
  if (kind_ == Kind::Pure) return amplitudes_ * amplitudes_.adjoint();
  return rho_;
}

QState partial_trace(const QState& state, const std::vector<int>& keep) {
  const Dims& dims = state.dims();
  const int n = state.num_subsystems();
  if (keep.empty()) throw std::invalid_argument("partial_trace needs a nonempty keep list");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : keep) {
    if (s < 0 || s >= n) throw std::invalid_argument("partial_trace keep index out of range");
    if (seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("partial_trace keep index repeated");
    seen[static_cast<std::size_t>(s)] = true;
  }
  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (!seen[static_cast<std::size_t>(s)]) traced.push_back(s);

  const std::vector<Index> keep_off = subset_offsets(dims, keep);
  const std::vector<Index> tr_off =
      traced.empty() ? std::vector<Index>{0} : subset_offsets(dims, traced);
  const Index dk = static_cast<Index>(keep_off.size());
  const Index dt = static_cast<Index>(tr_off.size());

  Dims out_dims;
  out_dims.reserve(keep.size());
  for (int s : keep) out_dims.push_back(dims[static_cast<std::size_t>(s)]);

  Matrix out = Matrix::Zero(dk, dk);
  if (state.is_pure()) {
    const Vector& psi = state.vector();
    Matrix slice(dk, dt);
    for (Index a = 0; a < dk; ++a)
      for (Index t = 0; t < dt; ++t)
        slice(a, t) = psi(keep_off[static_cast<std::size_t>(a)] +
                          tr_off[static_cast<std::size_t>(t)]);
    out = slice * slice.adjoint();
  } else {
    const Matrix& rho = state.matrix();
    for (Index a = 0; a < dk; ++a)
      for (Index b = 0; b < dk; ++b) {
        Complex acc(0.0, 0.0);
        for (Index t = 0; t < dt; ++t)
          acc += rho(keep_off[static_cast<std::size_t>(a)] + tr_off[static_cast<std::size_t>(t)],
                     keep_off[static_cast<std::size_t>(b)] + tr_off[static_cast<std::size_t>(t)]);
        out(a, b) = acc;
      }
  }
  out = hermitize(out);
  return QState::mixed(std::move(out_dims), std::move(out));
}

QState permute_subsystems(const QState& state, const std::vector<int>& order) {
  const int n = state.num_subsystems();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("permutation length must equal subsystem count");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int s : order) {
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument("order is not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
  const std::vector<Index> off = subset_offsets(state.dims(), order);
  Dims new_dims;
  for (int s : order) new_dims.push_back(state.dims()[static_cast<std::size_t>(s)]);
  const Index d = state.dim();
  if (state.is_pure()) {
    Vector psi(d);
    for (Index a = 0; a < d; ++a) psi(a) = state.vector()(off[static_cast<std::size_t>(a)]);
    return QState::pure(std::move(new_dims), std::move(psi));
  }
  Matrix rho(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      rho(a, b) = state.matrix()(off[static_cast<std::size_t>(a)], off[static_cast<std::size_t>(b)]);
  return QState::mixed(std::move(new_dims), std::move(rho));
}

QState reshape_dims(const QState& state, Dims new_dims) {
  if (dim_product(new_dims) != state.dim())
    throw std::invalid_argument("reshape_dims must preserve the total dimension");
  if (state.is_pure()) return QState::pure(std::move(new_dims), state.vector());
  return QState::mixed(std::move(new_dims), state.matrix());
}

SpectralDecomp spectral(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("spectral needs a square matrix");
  const double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol::hermiticity)
    throw std::invalid_argument("spectral input not Hermitian, deviation = " +
                                std::to_string(herm_dev));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

  const Index d = rho.rows();
  // Stable descending order: exact ties keep the solver's column order, so
  // degenerate inputs such as I/2 retain their natural basis labels.
  std::vector<Index> order(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  SpectralDecomp out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    const Index src = order[static_cast<std::size_t>(i)];
    double lambda = es.eigenvalues()(src);
    if (lambda < 0.0) {
      if (lambda < tol::negative_eval)
        throw std::invalid_argument("spectral input has eigenvalue " + std::to_string(lambda));
      lambda = 0.0;
    }
    out.eigenvalues(i) = lambda;
    Vector col = es.eigenvectors().col(src);
    Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    const double mag = std::abs(col(pivot));
    if (mag > 0.0) col *= std::conj(col(pivot)) / mag;
    out.eigenvectors.col(i) = col;
  }
  out.rank = 0;
  while (out.rank < d && out.eigenvalues(out.rank) > tol::support_cutoff) ++out.rank;
  return out;
}

SpectralDecomp spectral(const QState& state) { return spectral(state.density()); }

Matrix sqrt_psd(const Matrix& rho) {
  const SpectralDecomp sd = spectral(rho);
  RealVector roots = RealVector::Zero(sd.eigenvalues.size());
  for (Index i = 0; i < sd.rank; ++i) roots(i) = std::sqrt(sd.eigenvalues(i));
  return sd.eigenvectors * roots.asDiagonal() * sd.eigenvectors.adjoint();
}

QState haar_random_pure(const Dims& dims, RngSeed seed) {
  const Index d = dim_product(dims);
  Rng rng(seed);
  Vector psi(d);
  for (Index i = 0; i < d; ++i) psi(i) = rng.cnormal();
  psi /= psi.norm();
  return QState::pure(dims, std::move(psi));
}

QState random_mixed(const Dims& dims, Index rank, RngSeed seed) {
  const Index d = dim_product(dims);
  if (rank < 1 || rank > d) throw std::invalid_argument("rank must lie in [1, dim]");
  Rng rng(seed);
  Matrix x(d, rank);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < rank; ++j) x(i, j) = rng.cnormal();
  Matrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  rho = hermitize(rho);
  return QState::mixed(dims, std::move(rho));
}

}  // namespace eoa
