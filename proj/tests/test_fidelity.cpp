#include <catch2/catch_amalgamated.hpp>

#include <entfid/channels.hpp>
#include <entfid/fidelity.hpp>
#include <entfid/rng.hpp>
#include <entfid/states.hpp>

#include "helpers.hpp"

using namespace entfid;
using testutil::basis_density;
using testutil::basis_state;
using testutil::ident;
using testutil::maximally_mixed;
using testutil::swap_replace_qubit;
using testutil::thrown_field;

TEST_CASE("identical states have unit fidelity", "[fidelity]") {
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator rho = random_density(2 + rep % 3, 1 + rep % 2, 300 + rep);
    const FidelityValue f = uhlmann_fidelity(rho, rho);
    REQUIRE(f.method == FidelityMethod::uhlmann);
    REQUIRE(std::abs(f.value - 1.0) < 1e-12);
  }
}

TEST_CASE("orthogonal pure states have zero fidelity", "[fidelity]") {
  REQUIRE(uhlmann_fidelity(basis_density(2, 0), basis_density(2, 1)).value < 1e-15);
}

TEST_CASE("fidelity against a pure state is the overlap", "[fidelity]") {
  REQUIRE(std::abs(uhlmann_fidelity(basis_density(2, 0), maximally_mixed(2)).value - 0.5) <
          1e-12);
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = random_pure(3, 310 + rep);
    const DensityOperator rho = random_density(3, 1 + rep % 3, 320 + rep);
    const double direct = probability_correct(psi, rho);
    const double closed = uhlmann_fidelity(density_from_pure(psi), rho).value;
    REQUIRE(std::abs(closed - direct) < 1e-12);
  }
}

TEST_CASE("fidelity is symmetric and bounded", "[fidelity]") {
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator a = random_density(3, 1 + rep % 3, 330 + rep);
    const DensityOperator b = random_density(3, 3 - rep % 2, 340 + rep);
    const double fab = uhlmann_fidelity(a, b).value;
    const double fba = uhlmann_fidelity(b, a).value;
    REQUIRE(std::abs(fab - fba) < 1e-10);
    REQUIRE(fab >= 0.0);
    REQUIRE(fab <= 1.0);
    REQUIRE(fab < 1.0 - 1e-6);  // distinct random states stay away from 1
  }
  REQUIRE(thrown_field([] {
            uhlmann_fidelity(maximally_mixed(2), maximally_mixed(3));
          }) == "dim");
}

TEST_CASE("both entanglement fidelity formulas agree", "[fidelity]") {
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 2 + rep % 3;
    const DensityOperator rho = random_density(dim, 1 + rep % dim, 350 + rep);
    Rng rng(360 + rep);
    const QuantumChannel e = random_channel(dim, dim, 1 + rep % 4, rng);
    const double a = entanglement_fidelity_purification(rho, e).value;
    const double b = entanglement_fidelity_kraus(rho, e).value;
    REQUIRE(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("perfect storage keeps entanglement fidelity one", "[fidelity]") {
  REQUIRE(std::abs(entanglement_fidelity_purification(maximally_mixed(2),
                                                      identity_channel(2)).value - 1.0) <
          1e-12);
  const DensityOperator rho = random_density(3, 2, 370);
  REQUIRE(std::abs(entanglement_fidelity_kraus(rho, identity_channel(3)).value - 1.0) <
          1e-12);
}

TEST_CASE("swap-replace storage scores one quarter on the mixed qubit", "[fidelity]") {
  const DensityOperator rho = maximally_mixed(2);
  const QuantumChannel e2 = swap_replace_qubit();
  REQUIRE(std::abs(entanglement_fidelity_purification(rho, e2).value - 0.25) < 1e-12);
  REQUIRE(std::abs(entanglement_fidelity_kraus(rho, e2).value - 0.25) < 1e-12);

  const QuantumChannel via_factory = replace_with_channel(2, maximally_mixed(2));
  REQUIRE(std::abs(entanglement_fidelity_kraus(rho, via_factory).value - 0.25) < 1e-12);
}

TEST_CASE("entanglement fidelity of depolarizing noise on the mixed qubit", "[fidelity]") {
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    const double fe =
        entanglement_fidelity_kraus(maximally_mixed(2), depolarizing_channel(2, p)).value;
    REQUIRE(std::abs(fe - (1.0 - 0.75 * p)) < 1e-12);
  }
}

TEST_CASE("pure inputs collapse entanglement fidelity to plain fidelity", "[fidelity]") {
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = random_pure(2, 380 + rep);
    const DensityOperator rho = density_from_pure(psi);
    Rng rng(390 + rep);
    const QuantumChannel e = random_channel(2, 2, 1 + rep % 3, rng);
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    const double f = uhlmann_fidelity(rho, apply(e, rho)).value;
    REQUIRE(std::abs(fe - f) < 1e-9);
    REQUIRE(std::abs(fe - probability_correct(psi, apply(e, rho))) < 1e-9);
  }
}

TEST_CASE("entanglement fidelity never beats plain fidelity", "[fidelity]") {
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 2 + rep % 2;
    const DensityOperator rho = random_density(dim, 1 + rep % dim, 400 + rep);
    Rng rng(410 + rep);
    const QuantumChannel e = random_channel(dim, dim, 1 + rep % 4, rng);
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    const double f = uhlmann_fidelity(rho, apply(e, rho)).value;
    REQUIRE(fe <= f + 1e-9);
  }
}

TEST_CASE("fidelity never decreases under partial trace", "[fidelity]") {
  // Discarding a subsystem can only make two states harder to tell apart.
  for (int rep = 0; rep < 15; ++rep) {
    const DensityOperator a = random_density(6, 1 + rep % 6, 420 + rep);
    const DensityOperator b = random_density(6, 6 - rep % 3, 440 + rep);
    const SubsystemShape shape{{2, 3}};
    const double joint = uhlmann_fidelity(a, b).value;
    const double reduced = state_fidelity(partial_trace(a.matrix(), shape, {0}),
                                          partial_trace(b.matrix(), shape, {0}));
    REQUIRE(joint <= reduced + 1e-9);
  }
}

TEST_CASE("fidelity increases under channels", "[fidelity]") {
  for (int rep = 0; rep < 15; ++rep) {
    const int dim = 2 + rep % 3;
    const DensityOperator a = random_density(dim, 1 + rep % dim, 460 + rep);
    const DensityOperator b = random_density(dim, dim, 480 + rep);
    Rng rng(500 + rep);
    const QuantumChannel e = random_channel(dim, dim, 2, rng);
    const double before = uhlmann_fidelity(a, b).value;
    const double after = uhlmann_fidelity(apply(e, a), apply(e, b)).value;
    REQUIRE(after >= before - 1e-9);
  }
}

TEST_CASE("purification independence of entanglement fidelity", "[fidelity]") {
  Rng rng(520);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator rho = random_density(3, 2, 530 + rep);
    const QuantumChannel e = random_channel(3, 3, 2, rng);
    const double canonical = entanglement_fidelity_purification(rho, e).value;

    const int dp = rank_of(rho) + 2 + rep % 2;
    const PureState base = purification_with_dim(rho, dp);
    const Matrix rotation = kron(ident(3), random_unitary(dp, rng));
    Vector rotated = rotation * base.amplitudes();
    const PureState moved(rotated / rotated.norm());
    const double other = entanglement_fidelity_from_purification(moved, 3, e);
    REQUIRE(std::abs(canonical - other) < 1e-9);
  }
}

TEST_CASE("fidelity_report bundles the checks", "[fidelity]") {
  const FidelityReport r = fidelity_report(maximally_mixed(2), swap_replace_qubit());
  REQUIRE(std::abs(r.fidelity - 1.0) < 1e-12);
  REQUIRE(std::abs(r.fe_purification - 0.25) < 1e-12);
  REQUIRE(std::abs(r.fe_kraus - 0.25) < 1e-12);
  REQUIRE(r.fe_delta < 1e-10);
  REQUIRE(r.all_pass());
  REQUIRE(r.inequalities.size() == 2);  // mixed input: no pure-state row

  Rng rng(540);
  const PureState psi = random_pure(2, 541);
  const FidelityReport pure_report =
      fidelity_report(density_from_pure(psi), random_channel(2, 2, 2, rng));
  REQUIRE(pure_report.inequalities.size() == 3);
  REQUIRE(pure_report.all_pass());

  const FidelityReport trivial = fidelity_report(random_density(3, 2, 542),
                                                 identity_channel(3));
  REQUIRE(std::abs(trivial.fidelity - 1.0) < 1e-9);
  REQUIRE(std::abs(trivial.fe_kraus - 1.0) < 1e-9);
}
