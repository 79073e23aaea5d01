// Timing comparison of the serial reference paths against their OpenMP
// variants: the dynamical-map trial batch and the Weyl expectation scans.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multiunit/ame_verify.hpp"
#include "multiunit/designs.hpp"
#include "multiunit/dynmap.hpp"
#include "multiunit/qecc.hpp"

using namespace multiunit;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("bench: serial reference vs OpenMP (%d threads)\n\n", threads);

  {
    std::vector<SeedSpec> specs;
    for (int t = 0; t < 24; ++t)
      specs.push_back({SeedKind::Haar, 3, BuiltinDesign::P9, 0.0, 1000ull + t});
    IterateOptions opt;
    opt.tol = 1e-10;
    opt.max_iter = 2000;
    opt.record_points = false;

    auto t0 = std::chrono::steady_clock::now();
    const BatchSummary serial = batch_run(specs, opt, 1);
    const double ts = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    const BatchSummary parallel = batch_run(specs, opt, threads);
    const double tp = seconds(t0);

    const bool same = serial.count_two_unitary == parallel.count_two_unitary &&
                      serial.best_delta == parallel.best_delta;
    std::printf("batch_run (24 Haar trials, d=3):  serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical=%s\n",
                ts, tp, ts / tp, same ? "yes" : "NO");
  }

  {
    const BipartiteOperator p9 = seed_permutation(BuiltinDesign::P9);
    const FourPartyState psi = state_from_unitary(p9);
    // weight-2 scan repeated to give a measurable serial baseline
    auto t0 = std::chrono::steady_clock::now();
    PureCodeReport serial;
    for (int r = 0; r < 200; ++r) serial = pure_code_check(psi, 2, 1e-9, 1);
    const double ts = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    PureCodeReport parallel;
    for (int r = 0; r < 200; ++r) parallel = pure_code_check(psi, 2, 1e-9, threads);
    const double tp = seconds(t0);

    std::printf("pure_code_check (200 x weight-2, d=3):  serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical=%s\n",
                ts, tp, ts / tp, serial.worst == parallel.worst ? "yes" : "NO");
  }

  {
    const BipartiteOperator p9 = seed_permutation(BuiltinDesign::P9);
    const CodeSpace code = shorten_code(to_tensor(p9));
    const auto errors = weyl_basis(3, 1, 3);
    auto t0 = std::chrono::steady_clock::now();
    KlReport serial;
    for (int r = 0; r < 2000; ++r) serial = kl_check(code, errors, 1e-9, 1);
    const double ts = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    KlReport parallel;
    for (int r = 0; r < 2000; ++r) parallel = kl_check(code, errors, 1e-9, threads);
    const double tp = seconds(t0);

    std::printf("kl_check (2000 x weight-1, d=3):  serial %.3fs  parallel %.3fs  "
                "speedup %.2fx  identical=%s\n",
                ts, tp, ts / tp,
                serial.worst_offdiag == parallel.worst_offdiag ? "yes" : "NO");
  }

  return 0;
}
