#include "eoa/states.hpp"

#include <stdexcept>

#include "eoa/linalg.hpp"
#include "eoa/rng.hpp"

namespace eoa {

QState ghz_state(int n, double theta) {
  if (n < 2) throw std::invalid_argument("ghz_state needs at least two qubits");
  const Index d = Index(1) << n;
  Vector psi = Vector::Zero(d);
  psi(0) = std::cos(theta);
  psi(d - 1) = std::sin(theta);
  psi /= psi.norm();
  return QState::pure(Dims(static_cast<std::size_t>(n), 2), std::move(psi));
}

QState w_state(int n) {
  if (n < 2) throw std::invalid_argument("w_state needs at least two qubits");
  const Index d = Index(1) << n;
  Vector psi = Vector::Zero(d);
  for (int q = 0; q < n; ++q) psi(Index(1) << q) = 1.0;
  psi /= psi.norm();
  return QState::pure(Dims(static_cast<std::size_t>(n), 2), std::move(psi));
}

QState bell_phi_plus() {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return QState::pure({2, 2}, std::move(psi));
}

QState product_pure(const Dims& dims, RngSeed seed) {
  Vector psi = Vector::Ones(1);
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const QState local = haar_random_pure({dims[s]}, sub_seed(seed, s));
    Vector next(psi.size() * dims[s]);
    for (Index a = 0; a < psi.size(); ++a)
      for (Index b = 0; b < dims[s]; ++b) next(a * dims[s] + b) = psi(a) * local.vector()(b);
    psi = std::move(next);
  }
  psi /= psi.norm();
  return QState::pure(dims, std::move(psi));
}

QState classically_correlated_2q() {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = 0.5;
  return QState::mixed({2, 2}, std::move(rho));
}

QState max_mixed(const Dims& dims) {
  const Index d = dim_product(dims);
  Matrix rho = Matrix::Identity(d, d) / static_cast<double>(d);
  return QState::mixed(dims, std::move(rho));
}

}  // namespace eoa
