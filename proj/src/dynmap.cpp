#include "multiunit/dynmap.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "multiunit/linalg.hpp"
#include "multiunit/metrics.hpp"
#include "multiunit/rng.hpp"

namespace multiunit {

Matrix polar_unitary(const Matrix& a, double smin_tol) {
  const Svd svd = svd_full(a);
  if (svd.s(svd.s.size() - 1) <= smin_tol)
    throw SingularInput("polar part not unique: smallest singular value " +
                        std::to_string(svd.s(svd.s.size() - 1)));
  return svd.u * svd.vh;
}

BipartiteOperator map_step(const BipartiteOperator& u, SingularPolicy policy,
                           double smin_tol) {
  const Matrix a = partial_transpose(reshuffle(u)).m;
  if (policy == SingularPolicy::Error) return {u.d, polar_unitary(a, smin_tol)};
  const Svd svd = svd_full(a);
  return {u.d, svd.u * svd.vh};
}

SeedKind seed_kind_from_name(const std::string& name) {
  if (name == "haar") return SeedKind::Haar;
  if (name == "permutation") return SeedKind::Permutation;
  if (name == "perturbed") return SeedKind::PerturbedPermutation;
  if (name == "enphased") return SeedKind::EnphasedPermutation;
  throw UnknownPermutation("unknown seed kind: " + name);
}

std::string seed_kind_name(SeedKind kind) {
  switch (kind) {
    case SeedKind::Haar: return "haar";
    case SeedKind::Permutation: return "permutation";
    case SeedKind::PerturbedPermutation: return "perturbed";
    case SeedKind::EnphasedPermutation: return "enphased";
  }
  throw std::logic_error("unreachable");
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::TwoUnitary: return "TwoUnitary";
    case Outcome::FixedPointA: return "FixedPointA";
    case Outcome::FixedPointAS: return "FixedPointAS";
    case Outcome::Plateau: return "Plateau";
    case Outcome::MaxIter: return "MaxIter";
    case Outcome::Singular: return "Singular";
  }
  throw std::logic_error("unreachable");
}

namespace {

Matrix haar_unitary(int n, Rng& rng) {
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = cxd{rng.gaussian(), rng.gaussian()} / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cxd rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

BipartiteOperator permutation_seed(const SeedSpec& spec) {
  const BipartiteOperator p = seed_permutation(spec.perm);
  if (p.d != spec.d)
    throw UnknownPermutation("design " + builtin_design_name(spec.perm) +
                             " has d = " + std::to_string(p.d) + ", spec wants d = " +
                             std::to_string(spec.d));
  return p;
}

}  // namespace

BipartiteOperator make_seed(const SeedSpec& spec) {
  Rng rng(spec.rng_seed);
  switch (spec.kind) {
    case SeedKind::Haar:
      return {spec.d, haar_unitary(spec.d * spec.d, rng)};
    case SeedKind::Permutation:
      return permutation_seed(spec);
    case SeedKind::PerturbedPermutation: {
      const BipartiteOperator p = permutation_seed(spec);
      const int n = p.order();
      Matrix m(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = rng.gaussian();
      const Matrix h = (m + m.transpose()) / 2.0;
      return {spec.d, p.m * hermitian_phase_exp(h, spec.epsilon)};
    }
    case SeedKind::EnphasedPermutation: {
      const BipartiteOperator p = permutation_seed(spec);
      const int n = p.order();
      Vector phases(n);
      for (int i = 0; i < n; ++i)
        phases(i) = std::exp(cxd{0.0, 2.0 * std::numbers::pi * rng.uniform()});
      return {spec.d, p.m * phases.asDiagonal()};
    }
  }
  throw std::logic_error("unreachable");
}

Trajectory iterate(const BipartiteOperator& seed, const IterateOptions& opt) {
  Trajectory traj;
  BipartiteOperator u = seed;
  std::vector<double> deltas;
  deltas.reserve(1024);

  for (int n = 0; n <= opt.max_iter; ++n) {
    const GateMetrics gm = gate_metrics(u);
    deltas.push_back(gm.delta);
    if (opt.record_points) traj.points.push_back({n, gm.e_p, gm.g_t, gm.delta});
    traj.iterations = n;
    traj.final_delta = gm.delta;

    if (gm.delta < opt.tol) {
      traj.outcome = Outcome::TwoUnitary;
      traj.final_op = std::move(u);
      return traj;
    }
    if (n >= opt.plateau_window &&
        std::abs(deltas[n] - deltas[n - opt.plateau_window]) < opt.plateau_tol) {
      if (std::abs(gm.e_p - kFixedPointAEp) < 1e-6) {
        // at A one has E(U) < E(US), the SWAP partner swaps the two
        traj.outcome = gm.E_U < gm.E_US ? Outcome::FixedPointA : Outcome::FixedPointAS;
      } else {
        traj.outcome = Outcome::Plateau;
      }
      traj.final_op = std::move(u);
      return traj;
    }
    if (n == opt.max_iter) break;
    try {
      u = map_step(u, opt.policy);
    } catch (const SingularInput&) {
      traj.outcome = Outcome::Singular;
      traj.final_op = std::move(u);
      return traj;
    }
  }
  traj.outcome = Outcome::MaxIter;
  traj.final_op = std::move(u);
  return traj;
}

Trajectory iterate(const SeedSpec& spec, const IterateOptions& opt) {
  return iterate(make_seed(spec), opt);
}

BipartiteOperator fixed_point_representative(const BipartiteOperator& u) {
  BipartiteOperator best = u;
  double best_defect = unitarity_defect(partial_transpose(u));
  BipartiteOperator cur = u;
  for (int phase = 0; phase < 2; ++phase) {
    cur = map_step(cur, SingularPolicy::Nearest);
    const double defect = unitarity_defect(partial_transpose(cur));
    if (defect < best_defect) {
      best_defect = defect;
      best = cur;
    }
  }
  return best;
}

BatchSummary batch_run(const std::vector<SeedSpec>& specs, const IterateOptions& opt,
                       int jobs, const TrialSink& sink) {
  BatchSummary summary;
  summary.trials.resize(specs.size());
  if (specs.empty()) return summary;

  std::mutex sink_mutex;
  const auto run_one = [&](std::size_t idx) {
    const Trajectory traj = iterate(specs[idx], opt);
    summary.trials[idx] = {specs[idx], traj.outcome, traj.iterations, traj.final_delta};
    if (sink) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      sink(idx, traj);
    }
  };

#ifdef _OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(specs.size()); ++i)
      run_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  }
#else
  (void)jobs;
  for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
#endif

  for (const TrialResult& t : summary.trials) {
    summary.best_delta = std::min(summary.best_delta, t.final_delta);
    switch (t.outcome) {
      case Outcome::TwoUnitary: ++summary.count_two_unitary; break;
      case Outcome::FixedPointA: ++summary.count_fixed_point_a; break;
      case Outcome::FixedPointAS: ++summary.count_fixed_point_as; break;
      case Outcome::Plateau: ++summary.count_plateau; break;
      case Outcome::MaxIter: ++summary.count_max_iter; break;
      case Outcome::Singular: ++summary.count_singular; break;
    }
  }
  summary.two_unitary_fraction =
      static_cast<double>(summary.count_two_unitary) / static_cast<double>(specs.size());
  return summary;
}

}  // namespace multiunit
