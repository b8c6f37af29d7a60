#pragma once

#include <cstdint>
#include <vector>

#include "eoa/types.hpp"

namespace eoa {

using RngSeed = std::uint64_t;

// Eigendecomposition of a Hermitian PSD matrix, eigenvalues descending.
// Each eigenvector column is phase-fixed: its largest-magnitude entry is
// real and nonnegative.
struct SpectralDecomp {
  RealVector eigenvalues;
  Matrix eigenvectors;
  Index rank = 0;  // eigenvalues above the support cutoff
};

// Pure or mixed state on a tensor product of finite subsystems.
// Subsystem 0 is the most significant index of the flattened basis.
class QState {
 public:
  enum class Kind { Pure, Mixed };

  static QState pure(Dims dims, Vector amplitudes);
  static QState mixed(Dims dims, Matrix rho);

  Kind kind() const noexcept { return kind_; }
  bool is_pure() const noexcept { return kind_ == Kind::Pure; }
  const Dims& dims() const noexcept { return dims_; }
  Index dim() const noexcept;
  int num_subsystems() const noexcept { return static_cast<int>(dims_.size()); }

  // Amplitudes of a pure state; throws std::logic_error on mixed states.
  const Vector& vector() const;
  // Density matrix of a mixed state; throws std::logic_error on pure states.
  const Matrix& matrix() const;
  // Density matrix regardless of kind.
  Matrix density() const;

 private:
  QState(Kind kind, Dims dims, Vector amps, Matrix rho);

  Kind kind_;
  Dims dims_;
  Vector amplitudes_;
  Matrix rho_;
};

// Reduced state on the subsystems listed in `keep`, in the listed order.
QState partial_trace(const QState& state, const std::vector<int>& keep);

// Reorders subsystems; `order` must be a permutation of 0..n-1.
QState permute_subsystems(const QState& state, const std::vector<int>& order);

// Reinterprets the flattened index under a new dims list with equal product.
QState reshape_dims(const QState& state, Dims new_dims);

SpectralDecomp spectral(const Matrix& rho);
SpectralDecomp spectral(const QState& state);

// Hermitian square root from a clamped spectrum; eigenvalues below the
// support cutoff are treated as exact zeros.
Matrix sqrt_psd(const Matrix& rho);

QState haar_random_pure(const Dims& dims, RngSeed seed);
QState random_mixed(const Dims& dims, Index rank, RngSeed seed);

}  // namespace eoa
