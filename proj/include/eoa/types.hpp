#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace eoa {

using Complex = std::complex<double>;

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = Dense<Complex>;
using Vector = DenseVector<Complex>;
using RealMatrix = Dense<double>;
using RealVector = DenseVector<double>;

using Index = Eigen::Index;
using Dims = std::vector<Index>;

// Numerical policy shared across the library.
namespace tol {
inline constexpr double hermiticity = 1e-10;       // max |H - H^dag| entry
inline constexpr double trace_one = 1e-10;         // |tr(rho) - 1|
inline constexpr double negative_eval = -1e-10;    // eigenvalues below this reject the state
inline constexpr double support_cutoff = 1e-12;    // eigenvalues below this count as zero rank
inline constexpr double ensemble_weight = 1e-14;   // ensemble members lighter than this are dropped
inline constexpr double isometry = 1e-10;          // max |U^dag U - I| entry
}  // namespace tol

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace eoa
