// Acceptance suite: one ordered test case per criterion, each printing a
// PASS/FAIL line. The d=6 discovery run of criterion 4 is shared with
// criteria 5 and 8.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <optional>

#include "multiunit/ame_verify.hpp"
#include "multiunit/cyclotomic.hpp"
#include "multiunit/designs.hpp"
#include "multiunit/dynmap.hpp"
#include "multiunit/golden.hpp"
#include "multiunit/metrics.hpp"
#include "multiunit/polish.hpp"
#include "multiunit/qecc.hpp"

using namespace multiunit;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("CRITERION %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

int jobs() {
#ifdef _OPENMP
  return 2;
#else
  return 1;
#endif
}

// shared artifacts of the d=6 discovery run
struct Discovery {
  BatchSummary summary;
  std::vector<Trajectory> hits;          // TwoUnitary trajectories with points
  std::optional<BipartiteOperator> canonical;  // polished + relabelled matrix
  double polish_bell_worst = 1.0;
};

Discovery& discovery() {
  static Discovery d = [] {
    Discovery out;
    std::vector<SeedSpec> specs;
    for (std::uint64_t t = 0; t < 200; ++t)
      specs.push_back({SeedKind::PerturbedPermutation, 6, BuiltinDesign::Ps, 0.05,
                       20210806ull + t});
    IterateOptions opt;
    opt.tol = 1e-12;
    opt.max_iter = 20000;
    opt.record_points = true;

    std::vector<Trajectory> hits;
    const TrialSink sink = [&hits](std::size_t, const Trajectory& traj) {
      if (traj.outcome == Outcome::TwoUnitary) hits.push_back(traj);
    };
    out.summary = batch_run(specs, opt, jobs(), sink);
    out.hits = std::move(hits);

    for (std::size_t h = 0; h < out.hits.size() && !out.canonical; ++h) {
      PolishOptions popt;
      popt.rng_seed = 97531ull + h;
      const PolishResult res = polish_two_unitary(out.hits[h].final_op, popt);
      if (res.structured && res.delta < 1e-12) {
        out.canonical = res.u;
        out.polish_bell_worst = res.bell_worst;
      }
    }
    return out;
  }();
  return d;
}

}  // namespace

TEST_CASE("criterion 1: reference entangling powers") {
  Timer timer;
  const double ep_p9 = entangling_power(seed_permutation(BuiltinDesign::P9));
  const double ep_p36 = entangling_power(seed_permutation(BuiltinDesign::P36));
  const double ep_ps = entangling_power(seed_permutation(BuiltinDesign::Ps));
  const bool pass = std::abs(ep_p9 - 1.0) < 1e-12 &&
                    std::abs(ep_p36 - 314.0 / 315.0) < 1e-12 &&
                    std::abs(ep_ps - 104.0 / 105.0) < 1e-12 && timer.seconds() < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "e_p(P9)=%.15f e_p(P36)=%.15f e_p(Ps)=%.15f, %.2fs", ep_p9, ep_p36,
                ep_ps, timer.seconds());
  report(1, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 2: fixed point A from the P36 seed") {
  Timer timer;
  IterateOptions opt;
  opt.max_iter = 5000;
  const Trajectory traj =
      iterate(SeedSpec{SeedKind::Permutation, 6, BuiltinDesign::P36, 0.0, 1}, opt);
  const BipartiteOperator a = fixed_point_representative(traj.final_op);
  const double ep = entangling_power(a);
  const double defect_gamma = unitarity_defect(partial_transpose(a));
  const double defect_r = unitarity_defect(reshuffle(a));
  const bool pass = traj.outcome == Outcome::FixedPointA &&
                    std::abs(ep - 419.0 / 420.0) < 1e-6 && defect_gamma < 1e-8 &&
                    defect_r > 1e-3 && traj.iterations <= 5000 && timer.seconds() < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "outcome=%s n=%d e_p=%.12f defect(A^G)=%.2e defect(A^R)=%.2e, %.2fs",
                outcome_name(traj.outcome).c_str(), traj.iterations, ep, defect_gamma,
                defect_r, timer.seconds());
  report(2, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 3: d=3 Haar convergence rate") {
  Timer timer;
  std::vector<SeedSpec> specs;
  for (std::uint64_t t = 0; t < 100; ++t)
    specs.push_back({SeedKind::Haar, 3, BuiltinDesign::P9, 0.0, 300000ull + t});
  IterateOptions opt;
  opt.tol = 1e-10;
  opt.max_iter = 2000;
  opt.record_points = false;
  const BatchSummary s = batch_run(specs, opt, jobs());
  const bool pass = s.count_two_unitary >= 20 && timer.seconds() < 120.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/100 trials converged, %.1fs",
                s.count_two_unitary, timer.seconds());
  report(3, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 4: d=6 discovery near Ps") {
  Timer timer;
  const Discovery& d = discovery();
  const double fraction = d.summary.two_unitary_fraction;
  const bool fraction_ok = fraction >= 0.01 && fraction <= 0.20;
  bool structure_ok = false;
  std::string structure_msg = "no polished matrix";
  if (d.canonical) {
    const BipartiteOperator& u = *d.canonical;
    const double delta = two_unitarity_defect(u);
    const auto [ame_ok, rep] = ame_check(state_from_unitary(u, 1e-6), 1e-9);
    int bell_rows = 0;
    for (const Matrix& c : row_states(u)) bell_rows += bell_rank_check(c, 1e-6);
    const bool blocks_ok =
        block_structure_detect(u, 1e-6).uniform(9, 4) &&
        block_structure_detect(reshuffle(u), 1e-6).uniform(9, 4) &&
        block_structure_detect(partial_transpose(u), 1e-6).uniform(9, 4);
    const bool coarse_ok = coarse_grain_check(to_tensor(u), 1e-6).pass;
    structure_ok =
        delta < 1e-12 && ame_ok && bell_rows == 36 && blocks_ok && coarse_ok;
    char m[200];
    std::snprintf(m, sizeof m,
                  "delta=%.2e ame=%d bell_rows=%d blocks=%d coarse=%d",
                  delta, static_cast<int>(ame_ok), bell_rows,
                  static_cast<int>(blocks_ok), static_cast<int>(coarse_ok));
    structure_msg = m;
  }
  const bool pass = fraction_ok && structure_ok && timer.seconds() < 1800.0;
  char buf[320];
  std::snprintf(buf, sizeof buf, "fraction=%.3f (%d/200), %s, %.0fs", fraction,
                d.summary.count_two_unitary, structure_msg.c_str(), timer.seconds());
  report(4, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 5: late-stage exponential decay") {
  const Discovery& d = discovery();
  REQUIRE(!d.hits.empty());
  bool pass = true;
  double worst_slope = -1e9;
  for (const Trajectory& traj : d.hits) {
    // least-squares slope of log delta over the last 100 pre-convergence steps
    const int n_end = traj.iterations;  // delta(n_end) < tol; use the 100 before it
    const int n_start = std::max(0, n_end - 100);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& p : traj.points) {
      if (p.n < n_start || p.n >= n_end || p.delta <= 0.0) continue;
      const double x = p.n, y = std::log(p.delta);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    if (cnt < 10) continue;
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    worst_slope = std::max(worst_slope, slope);
    pass = pass && slope < 0.0;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%zu converging trials, worst slope %.4f",
                d.hits.size(), worst_slope);
  report(5, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 6: exact cyclotomic certification") {
  Timer timer;
  const auto rels = verify_constellations();
  bool all_zero = rels.size() == 11;
  for (const auto& r : rels) all_zero = all_zero && r.exact_zero;
  const BlockVResult v = verify_block_v();

  const GoldenConstants& g = golden_constants();
  const CycNumber half = CycNumber::from_rational(Rational(1, 2));
  const bool constants_ok = (g.a * g.a + g.b * g.b == half) && (g.c * g.c == half) &&
                            (g.b == g.a * g.phi);
  const bool pass = all_zero && v.pass && constants_ok && timer.seconds() < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "11 relations exact: %d, block V exact: %d, constants exact: %d, %.3fs",
                static_cast<int>(all_zero), static_cast<int>(v.pass),
                static_cast<int>(constants_ok), timer.seconds());
  report(6, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 7: published-row fixtures") {
  const BipartiteOperator u = realize(fixture_rows());
  bool pass = true;
  double worst = 0.0;
  for (int row : {1, 2, 33, 36}) {
    Matrix c(6, 6);
    for (int k = 0; k < 6; ++k)
      for (int l = 0; l < 6; ++l) c(k, l) = u.m(row - 1, 6 * k + l);
    pass = pass && std::abs(c.norm() - 1.0) < 1e-12;
    const double dev = bell_rank_deviation(c);
    worst = std::max(worst, dev);
    pass = pass && dev < 1e-12;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst Bell deviation %.2e over psi_11/12/66/63", worst);
  report(7, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 8: code layer from the discovered matrix") {
  Timer timer;
  const Discovery& d = discovery();
  bool pass = false;
  char buf[240];
  if (!d.canonical) {
    std::snprintf(buf, sizeof buf, "no canonical matrix from criterion 4");
  } else {
    const BipartiteOperator& u = *d.canonical;
    const Tensor4 t = to_tensor(u);
    const CodeSpace code = shorten_code(t, 1e-9);
    const double gram = code.gram_deviation();
    const auto errors = weyl_basis(6, 1, 3);
    const KlReport kl = kl_check(code, errors, 1e-9, jobs());
    const FourPartyState psi = state_from_unitary(u, 1e-6);
    const PureCodeReport pure = pure_code_check(psi, 2, 1e-9, jobs());
    pass = gram < 1e-10 && kl.pass && errors.size() == 105 && pure.pass &&
           pure.checked == 4 * 35 + 3675 && timer.seconds() < 300.0;
    std::snprintf(buf, sizeof buf,
                  "gram=%.2e, kl(105 ops) worst=%.2e, pure(%d ops incl. 3675 "
                  "weight-2) worst=%.2e, %.1fs",
                  gram, std::max(kl.worst_offdiag, kl.worst_spread), pure.checked,
                  pure.worst, timer.seconds());
  }
  report(8, pass, buf);
  CHECK(pass);
}

TEST_CASE("criterion 9: oracle equivalences") {
  bool pass = true;

  // (a) delta <= tol <=> ame_check <=> oqls_check. The check tolerances form a
  // consistent pair: delta is quadratic in the reduction deviations, so
  // delta-tol 1e-10 corresponds to deviation-tol 1e-5 (raw converged outputs
  // sit near 1e-6, the P36 negative case near 5e-2).
  const auto chain = [&](const BipartiteOperator& u, bool expect) {
    const bool delta_ok = two_unitarity_defect(u) <= 1e-10;
    const bool ame_ok = ame_check(state_from_unitary(u, 1e-4), 1e-5).first;
    const bool oqls_ok = oqls_check(row_states(u), 1e-5).pass;
    pass = pass && delta_ok == expect && ame_ok == expect && oqls_ok == expect;
  };
  chain(seed_permutation(BuiltinDesign::P9), true);
  chain(seed_permutation(BuiltinDesign::P36), false);
  const Discovery& d = discovery();
  if (d.canonical) chain(*d.canonical, true);
  for (const Trajectory& traj : d.hits) chain(traj.final_op, true);

  // (b) involutions and Schmidt-sum conservation on 100 random unitaries
  int checked = 0;
  for (int d_loc = 2; d_loc <= 6; ++d_loc) {
    for (int t = 0; t < 20; ++t) {
      const BipartiteOperator u = make_seed(
          {SeedKind::Haar, d_loc, BuiltinDesign::P9,
           0.0, 777000ull + static_cast<std::uint64_t>(100 * d_loc + t)});
      pass = pass && (reshuffle(reshuffle(u)).m - u.m).norm() == 0.0;
      pass = pass && (partial_transpose(partial_transpose(u)).m - u.m).norm() == 0.0;
      pass = pass && std::abs(schmidt_spectrum(u).sum() - d_loc * d_loc) < 1e-9;
      ++checked;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "equivalence chain + involutions/Schmidt sums on %d unitaries", checked);
  report(9, pass, buf);
  CHECK(pass);
}
