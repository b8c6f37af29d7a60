#pragma once

#include <string>
#include <vector>

#include "eoa/oracle.hpp"
#include "eoa/qstate.hpp"

namespace eoa {

struct MonogamyReport {
  std::string state_id;
  int n = 0;
  std::string kind;  // "pure" or "mixed"
  Index rank = 0;
  std::vector<double> pairwise;  // tangle with each partner, ascending index
  double bipartite = 0.0;
  double margin = 0.0;            // sum(pairwise) - bipartite
  bool quality = false;           // all searches converged
  int escalation_rounds = 0;      // restart-doubling rounds spent
  bool closed_form_boost = false; // a pairwise term was lifted to Ca^2
  bool violation_candidate = false;
  std::vector<OracleResult> diagnostics;  // pairwise results, bipartite last if searched
};

struct TripartiteReport {
  double tau_ab = 0.0;
  double tau_ac_decomp = 0.0;
  double tau_ac_povm = 0.0;
  double bipartite = 0.0;
  double margin_decomp = 0.0;
  double margin_povm = 0.0;
  double route_gap = 0.0;  // |decomposition - POVM| for tau_AC
};

// Head-versus-rest tangle: exact linear entropy for pure global states,
// decomposition search on the regrouped 2 x 2^{n-1} cut for mixed ones.
double bipartite_tangle_assistance(const QState& state, int head, const OracleConfig& cfg = {});

// Pairwise-sum versus bipartite inequality with oracle escalation: a
// negative margin first doubles then quadruples search restarts and
// finally lifts pairwise terms to the closed-form Ca^2 before the state
// is flagged as a violation candidate.
MonogamyReport monogamy_check(const QState& state, int head, const OracleConfig& cfg = {});

// Three-party step on a pure (2, 2, d) state: tau_AB + tau_AC >= S2(rho_A),
// with tau_AC evaluated by both the decomposition and the POVM route.
TripartiteReport tripartite_step_check(const QState& state, const OracleConfig& cfg = {});

// Rotates one subsystem of a pure state into the eigenbasis of its
// reduction and drops zero-weight directions.
QState schmidt_compress(const QState& state, int subsystem);

}  // namespace eoa
