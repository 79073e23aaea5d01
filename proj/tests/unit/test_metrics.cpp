#include <doctest.h>

#include "multiunit/designs.hpp"
#include "multiunit/dynmap.hpp"
#include "multiunit/metrics.hpp"
#include "multiunit/rng.hpp"

using namespace multiunit;

namespace {

BipartiteOperator haar(int d, std::uint64_t seed) {
  return make_seed({SeedKind::Haar, d, BuiltinDesign::P9, 0.0, seed});
}

Matrix small_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cxd{rng.gaussian(), rng.gaussian()};
  Eigen::HouseholderQR<Matrix> qr(z);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("schmidt spectra of the reference gates") {
  SUBCASE("SWAP: flat spectrum") {
    for (int d : {2, 3, 6}) {
      const auto lam = schmidt_spectrum(BipartiteOperator::swap_gate(d));
      for (int i = 0; i < lam.size(); ++i) CHECK(lam(i) == doctest::Approx(1.0));
    }
  }
  SUBCASE("identity: rank one") {
    const auto lam = schmidt_spectrum(BipartiteOperator::identity(3));
    CHECK(lam(0) == doctest::Approx(9.0));
    for (int i = 1; i < lam.size(); ++i) CHECK(lam(i) == doctest::Approx(0.0));
  }
  SUBCASE("P9: flat spectrum") {
    const auto lam = schmidt_spectrum(seed_permutation(BuiltinDesign::P9));
    for (int i = 0; i < 9; ++i) CHECK(lam(i) == doctest::Approx(1.0));
  }
  SUBCASE("spectrum sums to d^2 for unitaries") {
    for (int d = 2; d <= 6; ++d)
      CHECK(schmidt_spectrum(haar(d, 40 + d)).sum() ==
            doctest::Approx(d * d).epsilon(1e-12));
  }
}

TEST_CASE("operator entanglement reference values") {
  CHECK(operator_entanglement(BipartiteOperator::swap_gate(4)) ==
        doctest::Approx(1.0 - 1.0 / 16).epsilon(1e-14));
  CHECK(operator_entanglement(BipartiteOperator::identity(4)) == doctest::Approx(0.0));
  CHECK(operator_entanglement(seed_permutation(BuiltinDesign::P9)) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("entangling power and gate typicality reference values") {
  const BipartiteOperator p9 = seed_permutation(BuiltinDesign::P9);
  const BipartiteOperator p36 = seed_permutation(BuiltinDesign::P36);
  const BipartiteOperator ps = seed_permutation(BuiltinDesign::Ps);

  CHECK(std::abs(entangling_power(p9) - 1.0) < 1e-12);
  CHECK(std::abs(entangling_power(p36) - 314.0 / 315.0) < 1e-12);
  CHECK(std::abs(entangling_power(ps) - 104.0 / 105.0) < 1e-12);

  for (int d : {2, 3}) {
    CHECK(std::abs(entangling_power(BipartiteOperator::swap_gate(d))) < 1e-13);
    CHECK(std::abs(entangling_power(BipartiteOperator::identity(d))) < 1e-13);
    CHECK(gate_typicality(BipartiteOperator::swap_gate(d)) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gate_typicality(BipartiteOperator::identity(d)) ==
          doctest::Approx(0.0).epsilon(1e-13));
  }
  CHECK(gate_typicality(p9) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("two-unitarity defect reference values") {
  CHECK(two_unitarity_defect(seed_permutation(BuiltinDesign::P9)) <= 1e-12);
  CHECK(std::abs(two_unitarity_defect(seed_permutation(BuiltinDesign::P36)) -
                 1.0 / 315.0) < 1e-12);
  CHECK(two_unitarity_defect(BipartiteOperator::identity(3)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("e_p does not separate U from US") {
  for (int d : {2, 3}) {
    const BipartiteOperator u = haar(d, 7 + d);
    const BipartiteOperator us{d, u.m * BipartiteOperator::swap_gate(d).m};
    CHECK(std::abs(entangling_power(u) - entangling_power(us)) < 1e-10);
  }
}

TEST_CASE("metrics are invariant under local unitaries") {
  const BipartiteOperator u = haar(3, 17);
  const BipartiteOperator v = apply_local(u, small_unitary(3, 1), small_unitary(3, 2),
                                          small_unitary(3, 3), small_unitary(3, 4));
  CHECK(std::abs(entangling_power(u) - entangling_power(v)) < 1e-9);
  CHECK(std::abs(gate_typicality(u) - gate_typicality(v)) < 1e-9);
}

TEST_CASE("delta vanishes exactly when both rearrangements are unitary") {
  const double tol = 1e-10;
  auto agree = [&](const BipartiteOperator& u) {
    const bool delta_zero = two_unitarity_defect(u) <= tol;
    const bool parts_unitary = unitarity_defect(reshuffle(u)) <= 1e-5 &&
                               unitarity_defect(partial_transpose(u)) <= 1e-5;
    CHECK(delta_zero == parts_unitary);
  };
  for (int d : {2, 3}) {
    for (int t = 0; t < 25; ++t) agree(haar(d, 1000 + 50 * d + t));
  }
  agree(seed_permutation(BuiltinDesign::P9));
  agree(seed_permutation(BuiltinDesign::P36));
}

TEST_CASE("gate_metrics bundles the pieces consistently") {
  const BipartiteOperator u = haar(3, 77);
  const GateMetrics gm = gate_metrics(u);
  CHECK(gm.delta == 1.0 - gm.e_p);
  CHECK(gm.e_p >= -1e-12);
  CHECK(gm.e_p <= 1.0 + 1e-12);
  CHECK(gm.g_t >= -1e-12);
  CHECK(gm.g_t <= 1.0 + 1e-12);
  CHECK(gm.lambda.sum() == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(gm.E_U == doctest::Approx(operator_entanglement(u)).epsilon(1e-13));
}
