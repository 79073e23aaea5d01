#pragma once

#include <cstdint>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

// Local-unitary post-processing of a converged 2-unitary matrix: maximize the
// support concentration sum |U_pq|^4 over (uA (x) uB) U (uC (x) uD) by
// two-coordinate rotations on each tensor factor, with simulated-annealing
// restarts and periodic re-projection onto the 2-unitary manifold via the
// dynamical map. When the nine-block form is found, columns are relabelled so
// the block pairs match the coarse grouping {1,2}{3,4}{5,6}.

double support_concentration(const Matrix& u);

struct PolishOptions {
  int anneal_moves = 120000;
  int anneal_restarts = 6;
  double beta0 = 3.0;
  double beta1 = 3000.0;
  int reproject_interval = 2000;
  double block_tol = 1e-6;
  std::uint64_t rng_seed = 1;
};

struct PolishResult {
  BipartiteOperator u;
  bool structured = false;  // nine 4x4 blocks in U, U^R and U^Gamma
  double q4 = 0.0;
  double delta = 1.0;
  double bell_worst = 1.0;
  int restarts_used = 0;
};

// Requires a d = 6 two-unitary input (delta within ~1e-9).
PolishResult polish_two_unitary(const BipartiteOperator& u, const PolishOptions& opt = {});

}  // namespace multiunit
