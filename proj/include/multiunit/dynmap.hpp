#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multiunit/designs.hpp"
#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct SingularInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownPermutation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kSingularTol = 1e-12;
inline constexpr double kFixedPointAEp = 419.0 / 420.0;

// Nearest unitary in Frobenius norm: W from the polar decomposition A = W H.
// Throws SingularInput below smin_tol, where the polar part is not unique.
Matrix polar_unitary(const Matrix& a, double smin_tol = kSingularTol);

enum class SingularPolicy {
  Error,    // SingularInput below the tolerance
  Nearest,  // complete the polar factor through the SVD; still a nearest unitary
};

// One application of the map: polar projection of (U^R)^Gamma.
// The iteration uses SingularPolicy::Nearest: permutation seeds such as P36
// pass through exactly rank-deficient images, which the projection handles.
BipartiteOperator map_step(const BipartiteOperator& u,
                           SingularPolicy policy = SingularPolicy::Error,
                           double smin_tol = kSingularTol);

enum class SeedKind { Haar, Permutation, PerturbedPermutation, EnphasedPermutation };

SeedKind seed_kind_from_name(const std::string& name);
std::string seed_kind_name(SeedKind kind);

struct SeedSpec {
  SeedKind kind = SeedKind::Haar;
  int d = 3;
  BuiltinDesign perm = BuiltinDesign::P9;  // for the permutation-based kinds
  double epsilon = 0.05;                   // PerturbedPermutation only
  std::uint64_t rng_seed = 0;
};

// Deterministic given rng_seed. Haar: QR of a complex Gaussian matrix with
// phase-fixed R diagonal. PerturbedPermutation: P exp(i eps H), H = (M+M^T)/2
// with M standard normal. EnphasedPermutation: P times a uniform-phase diagonal.
BipartiteOperator make_seed(const SeedSpec& spec);

enum class Outcome { TwoUnitary, FixedPointA, FixedPointAS, Plateau, MaxIter, Singular };

std::string outcome_name(Outcome o);

struct TrajectoryPoint {
  int n;
  double e_p;
  double g_t;
  double delta;  // 1 - e_p
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Outcome outcome = Outcome::MaxIter;
  BipartiteOperator final_op;
  int iterations = 0;
  double final_delta = 1.0;
};

struct IterateOptions {
  double tol = 1e-12;
  int max_iter = 20000;
  // |Delta_n - Delta_{n-6}| window: 2-unitaries live on period-3 orbits.
  int plateau_window = 6;
  double plateau_tol = 1e-14;
  SingularPolicy policy = SingularPolicy::Nearest;
  bool record_points = true;
};

Trajectory iterate(const BipartiteOperator& seed, const IterateOptions& opt = {});
Trajectory iterate(const SeedSpec& spec, const IterateOptions& opt = {});

// The plateau matrix cycles through its period-3 rearrangements; pick the
// phase whose partial transpose is closest to unitary (the matrix called A).
BipartiteOperator fixed_point_representative(const BipartiteOperator& u);

struct TrialResult {
  SeedSpec spec;
  Outcome outcome = Outcome::MaxIter;
  int iterations = 0;
  double final_delta = 1.0;
};

struct BatchSummary {
  std::vector<TrialResult> trials;  // in spec order
  int count_two_unitary = 0;
  int count_fixed_point_a = 0;
  int count_fixed_point_as = 0;
  int count_plateau = 0;
  int count_max_iter = 0;
  int count_singular = 0;
  double best_delta = 1.0;
  double two_unitary_fraction = 0.0;
};

// Called per finished trial, in any order; guarded by an internal lock.
using TrialSink = std::function<void(std::size_t index, const Trajectory&)>;

// Runs iterate per spec. jobs > 1 executes trials in an OpenMP pool; results
// are identical to the serial run because every trial owns its rng stream.
BatchSummary batch_run(const std::vector<SeedSpec>& specs, const IterateOptions& opt = {},
                       int jobs = 1, const TrialSink& sink = nullptr);

}  // namespace multiunit
