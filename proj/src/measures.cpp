#include "eoa/measures.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "eoa/linalg.hpp"

namespace eoa {

namespace {

void require_two_qubit(const QState& state, const char* who) {
  if (state.dims() != Dims{2, 2})
    throw std::invalid_argument(std::string(who) + " needs a two-qubit state");
}

Matrix make_pauli(int i) {
  Matrix m(2, 2);
  const Complex I(0.0, 1.0);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

const Matrix& pauli(int i) {
  if (i < 0 || i > 3) throw std::invalid_argument("pauli index must be 0..3");
  static const Matrix table[4] = {make_pauli(0), make_pauli(1), make_pauli(2), make_pauli(3)};
  return table[i];
}

const Matrix& spin_flip_kernel() {
  static const Matrix yy = kron(pauli(2), pauli(2));
  return yy;
}

GeneratorSet so_generators(Index d) {
  if (d < 2) throw std::invalid_argument("so_generators needs dimension >= 2");
  GeneratorSet out;
  out.d = d;
  out.generators.reserve(static_cast<std::size_t>(d * (d - 1) / 2));
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      RealMatrix g = RealMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = -1.0;
      out.generators.push_back(std::move(g));
    }
  return out;
}

MeasureValue i_concurrence(const QState& psi, const GeneratorSet& gens_a,
                           const GeneratorSet& gens_b) {
  if (!psi.is_pure()) throw std::invalid_argument("i_concurrence needs a pure state");
  if (psi.num_subsystems() != 2)
    throw std::invalid_argument("i_concurrence needs exactly two subsystems");
  const Index da = psi.dims()[0];
  const Index db = psi.dims()[1];
  if (gens_a.d != da || gens_b.d != db)
    throw std::invalid_argument("generator sets do not match the state dims");

  Matrix x(da, db);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j) x(i, j) = psi.vector()(i * db + j);
  const Matrix y = x.conjugate();

  double total = 0.0;
  for (const RealMatrix& la : gens_a.generators)
    for (const RealMatrix& lb : gens_b.generators) {
      const Matrix m = y * lb.cast<Complex>() * y.transpose();
      const Complex s = la.cast<Complex>().cwiseProduct(m).sum();
      total += std::norm(s);
    }
  return {std::sqrt(std::max(0.0, total)), MeasureValue::Method::ClosedForm};
}

double linear_entropy(const Matrix& rho) {
  const double purity = rho.squaredNorm();
  return std::max(0.0, 2.0 * (1.0 - purity));
}

MeasureValue linear_entropy(const QState& rho) {
  return {linear_entropy(rho.density()), MeasureValue::Method::ClosedForm};
}

Eigen::Vector4d spin_flip_spectrum(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("spin_flip_spectrum needs a 4x4 matrix");
  const Matrix root = sqrt_psd(rho);
  const Matrix n = root * spin_flip_kernel() * root.conjugate();
  Eigen::JacobiSVD<Matrix> svd(n);
  return svd.singularValues();
}

MeasureValue wootters_concurrence(const QState& rho) {
  require_two_qubit(rho, "wootters_concurrence");
  const Eigen::Vector4d lam = spin_flip_spectrum(rho.density());
  const double c = lam(0) - lam(1) - lam(2) - lam(3);
  return {std::max(0.0, c), MeasureValue::Method::Spectral};
}

MeasureValue concurrence_of_assistance_2q(const QState& rho) {
  require_two_qubit(rho, "concurrence_of_assistance_2q");
  const Eigen::Vector4d lam = spin_flip_spectrum(rho.density());
  return {std::max(0.0, lam.sum()), MeasureValue::Method::Spectral};
}

MeasureValue sigma_y_chain_lb(const QState& rho) {
  require_two_qubit(rho, "sigma_y_chain_lb");
  const Matrix r = rho.density();
  const Matrix& yy = spin_flip_kernel();
  const double t = (yy * r.conjugate() * yy * r).trace().real();
  return {std::max(0.0, t), MeasureValue::Method::ClosedForm};
}

}  // namespace eoa
