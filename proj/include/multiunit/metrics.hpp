#pragma once

#include <Eigen/Dense>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

// Schmidt spectrum, operator entanglements, entangling power, gate typicality
// and the convergence defect of one bipartite gate.
struct GateMetrics {
  Eigen::VectorXd lambda;  // d^2 values, descending
  double E_U = 0.0;
  double E_US = 0.0;
  double e_p = 0.0;
  double g_t = 0.0;
  double delta = 0.0;  // 1 - e_p
};

// lambda_j = sigma_j(U^R)^2, descending.
Eigen::VectorXd schmidt_spectrum(const BipartiteOperator& u);

// E(U) = 1 - sum lambda_j^2 / d^4
double operator_entanglement(const BipartiteOperator& u);

inline double swap_operator_entanglement(int d) { return 1.0 - 1.0 / (d * d); }

// e_p = (E(U) + E(US) - E(S)) / E(S)
double entangling_power(const BipartiteOperator& u);

// g_t = (E(U) - E(US) + E(S)) / (2 E(S))
double gate_typicality(const BipartiteOperator& u);

// Delta = 1 - e_p; zero iff U is 2-unitary.
double two_unitarity_defect(const BipartiteOperator& u);

GateMetrics gate_metrics(const BipartiteOperator& u);

}  // namespace multiunit
