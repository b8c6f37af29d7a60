#include <doctest.h>

#include "eoa/bounds.hpp"
#include "eoa/measures.hpp"
#include "eoa/oracle.hpp"
#include "eoa/states.hpp"
#include "test_helpers.hpp"

using namespace eoa;

namespace {

Matrix reassemble(const Ensemble& ens) {
  Matrix rho = Matrix::Zero(ens.members[0].size(), ens.members[0].size());
  for (std::size_t i = 0; i < ens.members.size(); ++i)
    rho += ens.probabilities(static_cast<Index>(i)) * ens.members[i] * ens.members[i].adjoint();
  return rho;
}

OracleConfig quick_cfg(int restarts, Index k, RngSeed seed) {
  OracleConfig cfg;
  cfg.restarts = restarts;
  cfg.k = k;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("identity mixing returns the eigendecomposition itself") {
  const QState rho = random_mixed({2, 2}, 3, 41);
  const SpectralDecomp sd = spectral(rho);
  const Ensemble ens = decompose(rho, Matrix::Identity(3, 3));
  REQUIRE(ens.members.size() == 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(ens.probabilities(i) == doctest::Approx(sd.eigenvalues(i)).epsilon(1e-12));
    const Complex overlap = sd.eigenvectors.col(i).adjoint() * ens.members[i];
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("hadamard mixing of the maximally mixed qubit gives the x basis") {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const Ensemble ens = decompose(max_mixed({2}), h);
  REQUIRE(ens.members.size() == 2);
  CHECK(ens.probabilities(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ens.probabilities(1) == doctest::Approx(0.5).epsilon(1e-12));
  for (const Vector& v : ens.members)
    CHECK(std::abs(std::abs(v(0)) - std::abs(v(1))) < 1e-10);
}

TEST_CASE("hadamard mixing of the ghz reduction yields two unit-concurrence members") {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const Ensemble ens = decompose(partial_trace(ghz_state(3), {0, 1}), h);
  REQUIRE(ens.members.size() == 2);
  const GeneratorSet g2 = so_generators(2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(ens.probabilities(static_cast<Index>(i)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(i_concurrence(QState::pure({2, 2}, ens.members[i]), g2, g2).value ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(ensemble_average_tangle(ens, 2, 2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("decompose rejects bad mixing matrices and reassembles good ones") {
  const QState rho = random_mixed({2, 3}, 4, 42);
  CHECK_THROWS_AS(decompose(rho, Matrix::Identity(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(decompose(rho, Matrix::Ones(4, 4)), std::invalid_argument);
  for (Index k : {4, 6, 9}) {
    const Matrix u = testutil::random_isometry(k, 4, 600 + static_cast<RngSeed>(k));
    const Ensemble ens = decompose(rho, u);
    CHECK((reassemble(ens) - rho.matrix()).norm() < 1e-9);
    CHECK(std::abs(ens.probabilities.sum() - 1.0) < 1e-10);
    for (const Vector& v : ens.members) CHECK(std::abs(v.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("rank-one input needs no search") {
  const QState psi = haar_random_pure({2, 3}, 43);
  const QState as_mixed = QState::mixed({2, 3}, psi.density());
  const double c = i_concurrence(psi, so_generators(2), so_generators(3)).value;
  const OracleResult e = eoa_oracle(as_mixed, quick_cfg(4, 0, 1));
  const OracleResult t = tangle_oracle(as_mixed, quick_cfg(4, 0, 1));
  CHECK(e.value == doctest::Approx(c).epsilon(1e-10));
  CHECK(t.value == doctest::Approx(c * c).epsilon(1e-10));
}

TEST_CASE("reference maxima on ghz reduction and white noise") {
  const QState ghz_red = partial_trace(ghz_state(3), {0, 1});
  const OracleResult a = eoa_oracle(ghz_red, quick_cfg(32, 4, 2));
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-6));
  const OracleResult b = tangle_oracle(ghz_red, quick_cfg(32, 4, 2));
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-6));
  const OracleResult c = eoa_oracle(max_mixed({2, 2}), quick_cfg(32, 4, 3));
  CHECK(c.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c.converged);
  const OracleResult d = tangle_oracle(max_mixed({2, 2}), quick_cfg(32, 4, 3));
  CHECK(d.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("w-state reduction tangle equals its eigendecomposition value") {
  // The spectral ensemble {2/3 Bell-like, 1/3 product} already attains the
  // maximum, so the searched value must land on 2/3.
  const QState w_red = partial_trace(w_state(3), {0, 1});
  const OracleResult r = tangle_oracle(w_red, quick_cfg(32, 4, 4));
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("product state with a pure factor has no assisted tangle") {
  const QState a = haar_random_pure({2}, 44);
  const Matrix rho = kron(a.density(), random_mixed({2}, 2, 45).matrix());
  const OracleResult r = tangle_oracle(QState::mixed({2, 2}, rho), quick_cfg(16, 4, 5));
  CHECK(r.value < 1e-9);
}

TEST_CASE("oracle rejects undersized ensembles") {
  const QState rho = random_mixed({2, 2}, 3, 46);
  CHECK_THROWS_AS(eoa_oracle(rho, quick_cfg(4, 2, 6)), std::invalid_argument);
  CHECK_THROWS_AS(tangle_oracle(rho, quick_cfg(4, 2, 6)), std::invalid_argument);
  CHECK_THROWS_AS(eoa_oracle(random_mixed({2, 2, 2}, 2, 47), quick_cfg(4, 0, 6)),
                  std::invalid_argument);
}

TEST_CASE("reported value is reproducible from the reported ensemble") {
  for (int trial = 0; trial < 6; ++trial) {
    const QState rho = random_mixed({2, 2}, 2 + trial % 3, 800 + static_cast<RngSeed>(trial));
    const OracleResult e = eoa_oracle(rho, quick_cfg(16, 4, 900 + static_cast<RngSeed>(trial)));
    CHECK(std::abs(ensemble_average_concurrence(e.best_ensemble, 2, 2) - e.value) < 1e-9);
    CHECK((reassemble(e.best_ensemble) - rho.matrix()).norm() < 1e-9);
    const OracleResult t =
        tangle_oracle(rho, quick_cfg(16, 4, 900 + static_cast<RngSeed>(trial)));
    CHECK(std::abs(ensemble_average_tangle(t.best_ensemble, 2, 2) - t.value) < 1e-9);
  }
}

TEST_CASE("povm route reproduces the reference maxima") {
  const OracleResult ghz = povm_tangle_oracle(ghz_state(3), 2, {0}, quick_cfg(16, 0, 7));
  CHECK(ghz.value == doctest::Approx(1.0).epsilon(1e-6));
  const OracleResult prod = povm_tangle_oracle(product_pure({2, 2, 2}, 48), 2, {0},
                                               quick_cfg(16, 0, 8));
  CHECK(prod.value < 1e-9);
}

TEST_CASE("povm and decomposition routes agree on the w state") {
  const OracleResult via_povm = povm_tangle_oracle(w_state(3), 2, {0}, quick_cfg(32, 0, 9));
  const OracleResult via_decomp =
      tangle_oracle(partial_trace(w_state(3), {0, 1}), quick_cfg(32, 4, 9));
  CHECK(std::abs(via_povm.value - via_decomp.value) < 1e-6);
  CHECK(std::abs(ensemble_average_tangle(via_povm.best_ensemble, 2, 2) - via_povm.value) <
        1e-9);
  CHECK((reassemble(via_povm.best_ensemble) -
         partial_trace(w_state(3), {0, 1}).matrix())
            .norm() < 1e-9);
}

TEST_CASE("povm oracle rejects malformed requests") {
  CHECK_THROWS_AS(povm_tangle_oracle(random_mixed({2, 2, 2}, 2, 49), 2, {0}),
                  std::logic_error);
  CHECK_THROWS_AS(povm_tangle_oracle(ghz_state(3), 3, {0}), std::invalid_argument);
  CHECK_THROWS_AS(povm_tangle_oracle(ghz_state(3), 2, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(povm_tangle_oracle(ghz_state(3), 2, {0}, quick_cfg(4, 1, 0)),
                  std::invalid_argument);
}

TEST_CASE("searched values respect the analytic caps") {
  for (int trial = 0; trial < 20; ++trial) {
    const QState rho = random_mixed({2, 2}, 2 + trial % 3, 1100 + static_cast<RngSeed>(trial));
    const RngSeed seed = 1200 + static_cast<RngSeed>(trial);
    const double e = eoa_oracle(rho, quick_cfg(32, 4, seed)).value;
    const double t = tangle_oracle(rho, quick_cfg(32, 4, seed)).value;
    CHECK(e * e <= t + 1e-8);
    const double cap = std::min(linear_entropy(partial_trace(rho, {0})).value,
                                linear_entropy(partial_trace(rho, {1})).value);
    CHECK(t <= cap + 1e-8);
    CHECK(e <= eoa_upper_bound(rho).concurrence + 1e-8);
  }
}

TEST_CASE("widening the ensemble past rank squared does not help") {
  for (int trial = 0; trial < 6; ++trial) {
    const QState rho = random_mixed({2, 2}, 2, 1300 + static_cast<RngSeed>(trial));
    const RngSeed seed = 1400 + static_cast<RngSeed>(trial);
    const double at_four = tangle_oracle(rho, quick_cfg(64, 4, seed)).value;
    const double at_two = tangle_oracle(rho, quick_cfg(64, 2, seed)).value;
    const double at_three = tangle_oracle(rho, quick_cfg(64, 3, seed)).value;
    const double at_six = tangle_oracle(rho, quick_cfg(64, 6, seed)).value;
    CHECK(at_two <= at_four + 1e-8);
    CHECK(at_three <= at_four + 1e-8);
    CHECK(at_six <= at_four + 1e-8);
  }
}

TEST_CASE("search matches the closed form across a random campaign") {
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const QState rho = random_mixed({2, 2}, 1 + trial % 4, 2000 + static_cast<RngSeed>(trial));
    const OracleResult r = eoa_oracle(rho, quick_cfg(64, 4, 2500 + static_cast<RngSeed>(trial)));
    worst = std::max(worst, std::abs(r.value - concurrence_of_assistance_2q(rho).value));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("same seed reproduces the search bit for bit") {
  const QState rho = random_mixed({2, 2}, 4, 51);
  const OracleResult a = eoa_oracle(rho, quick_cfg(8, 4, 52));
  const OracleResult b = eoa_oracle(rho, quick_cfg(8, 4, 52));
  CHECK(a.value == b.value);
  CHECK((a.best_ensemble.mixing - b.best_ensemble.mixing).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
