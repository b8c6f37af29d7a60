#pragma once

#include <array>
#include <utility>

#include "eoa/oracle.hpp"
#include "eoa/qstate.hpp"

namespace eoa {

// Qubit channel reconstructed from a two-qubit state through the symmetric
// purification of rho_B. Labels k, l refer to the eigenbasis of rho_B.
struct ChannelBloch {
  Eigen::Matrix3d l_matrix = Eigen::Matrix3d::Zero();  // Bloch map r -> Lr + shift
  Eigen::Vector3d shift = Eigen::Vector3d::Zero();
  std::array<Matrix, 4> choi;  // Lambda(|k><l|) at index 2k + l
  Matrix basis;                // eigenvectors of rho_B, columns
  Eigen::Vector2d mu = Eigen::Vector2d::Zero();  // eigenvalues of rho_B, descending

  // Channel action on a 2x2 operator written in the label basis.
  Matrix apply(const Matrix& x) const;
};

// Local filter B acting on subsystem B: rho -> (I x B) rho (I x B^dag) / N.
struct FilterOp {
  Matrix b = Matrix::Identity(2, 2);
  double normalization = 0.0;  // N of the state the op was derived for
};

struct NormalForm {
  Eigen::Vector3d t = Eigen::Vector3d::Zero();  // local Bloch vector of side A
  Eigen::Vector3d r = Eigen::Vector3d::Zero();  // diagonal correlation entries
  Matrix u1, u2;                                // local unitaries achieving the form
  double residual = 0.0;                        // reconstruction error
};

struct ChainReport {
  double tangle = 0.0;       // decomposition-search value
  double ca_squared = 0.0;   // closed-form assistance concurrence, squared
  double sigma_chain = 0.0;  // Tr[(sy x sy) rho* (sy x sy) rho]
  double i_lower = 0.0;      // lambda_min(L^T L) * S2(rho_B)
  std::array<double, 3> margins{};  // adjacent differences down the chain
  OracleResult tangle_result;
};

// |V> = sum_k sqrt(mu_k) |k> (x) |v_k>: label register first, eigenvector
// register second; the second reduction equals rho_B exactly.
QState symmetric_purification(const QState& rho_b);

// Requires full-rank rho_B; directs callers to normalize_filter otherwise.
ChannelBloch extract_channel(const QState& rho_ab);

// lambda_min(L^T L) * S2(rho_B).
double i_measure(const QState& rho_ab);

// S2(rho_A) minus the best found average output linear entropy over
// pure-state decompositions of rho_B pushed through the channel; the
// analytic two-member ensemble along the minimal axis seeds the search.
double i_measure_direct(const QState& rho_ab, const OracleConfig& cfg = {});

double filter_normalization(const QState& rho_ab, const FilterOp& f);
QState apply_filter(const QState& rho_ab, const FilterOp& f);

// Filter making the B reduction maximally mixed: B proportional to
// rho_B^{-1/2}.
std::pair<FilterOp, QState> normalize_filter(const QState& rho_ab);

// Diagonal correlation form via signed SVD rotations; requires rho_B = I/2.
NormalForm normal_form(const QState& rho_ab);

// Evaluates tangle >= Ca^2 >= sigma-chain >= lambda_min term on a state
// with rho_B = I/2 and reports the adjacent margins.
ChainReport final_chain_check(const QState& rho_ab, const OracleConfig& cfg = {});

// 2x2 unitary realizing a given rotation: U^dag sigma_i U = sum_j R_ij sigma_j.
Matrix su2_from_so3(const Eigen::Matrix3d& rot);

}  // namespace eoa
