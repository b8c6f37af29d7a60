#pragma once

#include "eoa/qstate.hpp"

namespace eoa {

// cos(theta)|0...0> + sin(theta)|1...1> on n qubits.
QState ghz_state(int n, double theta = kPi / 4.0);

// Equal-weight single-excitation state on n qubits.
QState w_state(int n);

// (|00> + |11>)/sqrt(2).
QState bell_phi_plus();

// Tensor product of independent Haar-random local pure states.
QState product_pure(const Dims& dims, RngSeed seed);

// (|00><00| + |11><11|)/2.
QState classically_correlated_2q();

QState max_mixed(const Dims& dims);

}  // namespace eoa
