#include <doctest.h>

#include "eoa/bounds.hpp"
#include "eoa/measures.hpp"
#include "eoa/monogamy.hpp"
#include "eoa/states.hpp"
#include "test_helpers.hpp"

using namespace eoa;

namespace {

OracleConfig campaign_cfg(int restarts, RngSeed seed) {
  OracleConfig cfg;
  cfg.restarts = restarts;
  cfg.k = 4;
  cfg.seed = seed;
  return cfg;
}

double pairwise_sum(const MonogamyReport& rep) {
  double s = 0.0;
  for (double v : rep.pairwise) s += v;
  return s;
}

QState ghz_in_eight(double theta) {
  Vector psi = Vector::Zero(32);
  psi(0) = std::cos(theta);
  psi(25) = std::sin(theta);  // |1>|1>|1> inside a dim-8 third slot
  return QState::pure({2, 2, 8}, std::move(psi));
}

}  // namespace

TEST_SUITE("monogamy") {

TEST_CASE("bipartite tangle reference values") {
  CHECK(bipartite_tangle_assistance(ghz_state(3), 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bipartite_tangle_assistance(product_pure({2, 2, 2}, 71), 0) < 1e-12);
  CHECK(bipartite_tangle_assistance(w_state(3), 0) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(bipartite_tangle_assistance(w_state(3), 1) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(bipartite_tangle_assistance(ghz_state(3), 3), std::invalid_argument);
  CHECK_THROWS_AS(bipartite_tangle_assistance(ghz_state(3), -1), std::invalid_argument);
}

TEST_CASE("mixed bipartite side falls back to the decomposition search") {
  const double cc = bipartite_tangle_assistance(classically_correlated_2q(), 0,
                                                campaign_cfg(16, 72));
  CHECK(cc == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ghz check shows the strict gap") {
  const MonogamyReport rep = monogamy_check(ghz_state(3), 0, campaign_cfg(32, 73));
  REQUIRE(rep.pairwise.size() == 2);
  CHECK(rep.pairwise[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.pairwise[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.bipartite == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.margin == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.n == 3);
  CHECK(rep.kind == "pure");
  CHECK(rep.escalation_rounds == 0);
  CHECK_FALSE(rep.violation_candidate);
  CHECK(std::abs(pairwise_sum(rep) - rep.bipartite - rep.margin) < 1e-12);
}

TEST_CASE("product states sit exactly on the equality edge") {
  const MonogamyReport rep = monogamy_check(product_pure({2, 2, 2, 2}, 74), 0,
                                            campaign_cfg(8, 75));
  for (double v : rep.pairwise) CHECK(std::abs(v) < 1e-10);
  CHECK(std::abs(rep.bipartite) < 1e-10);
  CHECK(std::abs(rep.margin) < 1e-10);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(monogamy_check(haar_random_pure({2, 3}, 76), 0), std::invalid_argument);
  CHECK_THROWS_AS(monogamy_check(haar_random_pure({2}, 77), 0), std::invalid_argument);
  CHECK_THROWS_AS(
      monogamy_check(haar_random_pure({2, 2, 2, 2, 2, 2, 2}, 78), 0),
      std::invalid_argument);
  CHECK_THROWS_AS(monogamy_check(ghz_state(3), 5), std::invalid_argument);
}

TEST_CASE("pure two-qubit states have zero margin by construction") {
  for (int trial = 0; trial < 5; ++trial) {
    const MonogamyReport rep =
        monogamy_check(haar_random_pure({2, 2}, 9000 + static_cast<RngSeed>(trial)), 0,
                       campaign_cfg(8, 79));
    CHECK(std::abs(rep.margin) < 1e-9);
  }
}

TEST_CASE("random pure three-qubit campaign stays above the line") {
  for (int trial = 0; trial < 25; ++trial) {
    const RngSeed seed = 9100 + static_cast<RngSeed>(trial);
    const MonogamyReport rep =
        monogamy_check(haar_random_pure({2, 2, 2}, seed), 0, campaign_cfg(16, seed));
    CHECK(rep.margin >= -1e-6);
    CHECK_FALSE(rep.violation_candidate);
    CHECK(std::abs(pairwise_sum(rep) - rep.bipartite - rep.margin) < 1e-12);
  }
}

TEST_CASE("random pure four-qubit campaign stays above the line") {
  for (int trial = 0; trial < 10; ++trial) {
    const RngSeed seed = 9200 + static_cast<RngSeed>(trial);
    const MonogamyReport rep =
        monogamy_check(haar_random_pure({2, 2, 2, 2}, seed), 0, campaign_cfg(16, seed));
    CHECK(rep.pairwise.size() == 3);
    CHECK(rep.margin >= -1e-6);
    CHECK_FALSE(rep.violation_candidate);
  }
}

TEST_CASE("random rank-two mixed three-qubit campaign stays above the line") {
  for (int trial = 0; trial < 8; ++trial) {
    const RngSeed seed = 9300 + static_cast<RngSeed>(trial);
    const MonogamyReport rep =
        monogamy_check(random_mixed({2, 2, 2}, 2, seed), 0, campaign_cfg(16, seed));
    CHECK(rep.kind == "mixed");
    CHECK(rep.rank == 2);
    CHECK(rep.margin >= -1e-6);
    CHECK_FALSE(rep.violation_candidate);
  }
}

TEST_CASE("ghz family margin follows the interpolation angle") {
  for (double theta : {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
    const double expect = std::pow(std::sin(2.0 * theta), 2);
    const MonogamyReport rep = monogamy_check(ghz_state(3, theta), 0, campaign_cfg(32, 80));
    CHECK(rep.margin == doctest::Approx(expect).epsilon(1e-6));
    CHECK(rep.margin > 0.0);
  }
}

TEST_CASE("tripartite step on reference states") {
  const TripartiteReport ghz = tripartite_step_check(ghz_state(3), campaign_cfg(32, 81));
  CHECK(ghz.tau_ab == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ghz.bipartite == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ghz.margin_decomp >= 1.0 - 1e-6);
  CHECK(ghz.margin_povm >= 1.0 - 1e-6);
  CHECK(ghz.route_gap < 1e-6);

  Vector spectator = Vector::Zero(8);
  spectator(0) = 1.0 / std::sqrt(2.0);  // |0>(|00>+|11>)/sqrt2
  spectator(3) = 1.0 / std::sqrt(2.0);
  const TripartiteReport idle =
      tripartite_step_check(QState::pure({2, 2, 2}, spectator), campaign_cfg(16, 82));
  CHECK(std::abs(idle.tau_ab) < 1e-9);
  CHECK(std::abs(idle.tau_ac_decomp) < 1e-9);
  CHECK(std::abs(idle.bipartite) < 1e-12);
}

TEST_CASE("tripartite step input validation") {
  CHECK_THROWS_AS(tripartite_step_check(haar_random_pure({2, 3, 2}, 83)),
                  std::invalid_argument);
  CHECK_THROWS_AS(tripartite_step_check(haar_random_pure({2, 2, 16}, 84)),
                  std::invalid_argument);
  CHECK_THROWS_AS(tripartite_step_check(random_mixed({2, 2, 4}, 2, 85)), std::logic_error);
}

TEST_CASE("tripartite routes agree on random states") {
  for (int trial = 0; trial < 8; ++trial) {
    const RngSeed seed = 9400 + static_cast<RngSeed>(trial);
    const TripartiteReport rep =
        tripartite_step_check(haar_random_pure({2, 2, 4}, seed), campaign_cfg(32, seed));
    CHECK(rep.route_gap < 1e-6);
    CHECK(rep.margin_decomp >= -1e-6);
    CHECK(rep.margin_povm >= -1e-6);
  }
}

TEST_CASE("schmidt compression finds the effective dimension") {
  const QState ghz8 = ghz_in_eight(kPi / 4.0);
  const QState squeezed = schmidt_compress(ghz8, 2);
  REQUIRE(squeezed.dims().size() == 3);
  CHECK(squeezed.dims()[2] == 2);
  CHECK(bipartite_tangle_assistance(squeezed, 0) ==
        doctest::Approx(bipartite_tangle_assistance(ghz8, 0)).epsilon(1e-10));

  const QState generic = haar_random_pure({2, 2, 8}, 86);
  CHECK(schmidt_compress(generic, 2).dims()[2] == 4);

  const QState bell_with_idle = QState::pure(
      {2, 2, 2}, kron(bell_phi_plus().vector(),
                      haar_random_pure({2}, 87).vector()));
  CHECK(schmidt_compress(bell_with_idle, 2).dims()[2] == 1);

  CHECK_THROWS_AS(schmidt_compress(random_mixed({2, 2, 2}, 2, 88), 2), std::invalid_argument);
}

TEST_CASE("schmidt compression preserves entanglement across untouched cuts") {
  for (int trial = 0; trial < 6; ++trial) {
    const QState psi = haar_random_pure({2, 2, 8}, 9500 + static_cast<RngSeed>(trial));
    const QState small = schmidt_compress(psi, 2);
    CHECK(small.dims()[2] == 4);
    CHECK(std::abs(linear_entropy(partial_trace(psi, {0})).value -
                   linear_entropy(partial_trace(small, {0})).value) < 1e-10);
    CHECK(std::abs(linear_entropy(partial_trace(psi, {0, 1})).value -
                   linear_entropy(partial_trace(small, {0, 1})).value) < 1e-10);
    const double before = eoa_lower_bound(build_a_blocks(partial_trace(psi, {0, 1}))).lower;
    const double after = eoa_lower_bound(build_a_blocks(partial_trace(small, {0, 1}))).lower;
    CHECK(std::abs(before - after) < 1e-6);
  }
}

TEST_CASE("concavity of the assisted tangle on two-member mixtures") {
  // Mixing the two members' own ensembles already decomposes the mixture,
  // so the searched value must dominate the convex combination.
  for (int trial = 0; trial < 5; ++trial) {
    const RngSeed seed = 9600 + static_cast<RngSeed>(trial);
    const QState a = haar_random_pure({2, 2, 2}, seed);
    const QState b = haar_random_pure({2, 2, 2}, seed + 40);
    const double p = 0.25 + 0.5 * (trial / 4.0);
    const Matrix rho = p * a.density() + (1.0 - p) * b.density();
    const double mixture_side =
        bipartite_tangle_assistance(QState::mixed({2, 2, 2}, rho), 0, campaign_cfg(16, seed));
    const double convex_side = p * bipartite_tangle_assistance(a, 0) +
                               (1.0 - p) * bipartite_tangle_assistance(b, 0);
    CHECK(mixture_side >= convex_side - 1e-6);
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const QState psi = haar_random_pure({2, 2, 2}, 89);
  const MonogamyReport a = monogamy_check(psi, 0, campaign_cfg(8, 90));
  const MonogamyReport b = monogamy_check(psi, 0, campaign_cfg(8, 90));
  CHECK(a.margin == b.margin);
  CHECK(a.pairwise == b.pairwise);
}

}  // TEST_SUITE
