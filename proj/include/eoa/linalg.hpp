#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "eoa/types.hpp"

namespace eoa {

// Kronecker product with subsystem 0 as the most significant index.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Dense<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
  return out;
}

// Sum of singular values.
template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::JacobiSVD<Dense<Scalar>> svd(m.derived());
  return svd.singularValues().sum();
}

template <typename Derived>
auto hermitize(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Dense<Scalar> out = 0.5 * (m.derived() + m.derived().adjoint());
  return out;
}

// Row-major strides; subsystem 0 is the most significant digit.
inline Dims strides_of(const Dims& dims) {
  Dims strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

inline Index dim_product(const Dims& dims) {
  Index total = 1;
  for (Index d : dims) total *= d;
  return total;
}

// Flat offsets of a subsystem subset, enumerated with the first listed
// subsystem as the most significant digit of the enumeration index.
inline std::vector<Index> subset_offsets(const Dims& dims, const std::vector<int>& subset) {
  const Dims strides = strides_of(dims);
  Index total = 1;
  for (int s : subset) total *= dims[s];
  std::vector<Index> offsets(static_cast<std::size_t>(total));
  for (Index a = 0; a < total; ++a) {
    Index rest = a;
    Index flat = 0;
    for (int k = static_cast<int>(subset.size()) - 1; k >= 0; --k) {
      const int s = subset[static_cast<std::size_t>(k)];
      flat += (rest % dims[s]) * strides[s];
      rest /= dims[s];
    }
    offsets[static_cast<std::size_t>(a)] = flat;
  }
  return offsets;
}

}  // namespace eoa
