#include "multiunit/metrics.hpp"

#include <algorithm>

#include "multiunit/linalg.hpp"

namespace multiunit {

namespace {

// Schmidt coefficients without forming singular vectors.
Eigen::VectorXd schmidt_of_matrix(const Matrix& r) {
  Eigen::VectorXd s = singular_values(r);
  return s.array().square();
}

double linear_entropy(const Eigen::VectorXd& lambda, int d) {
  const double d4 = static_cast<double>(d) * d * d * d;
  return 1.0 - lambda.array().square().sum() / d4;
}

}  // namespace

Eigen::VectorXd schmidt_spectrum(const BipartiteOperator& u) {
  return schmidt_of_matrix(reshuffle(u).m);
}

double operator_entanglement(const BipartiteOperator& u) {
  return linear_entropy(schmidt_spectrum(u), u.d);
}

GateMetrics gate_metrics(const BipartiteOperator& u) {
  const int d = u.d;
  GateMetrics gm;
  gm.lambda = schmidt_spectrum(u);
  gm.E_U = linear_entropy(gm.lambda, d);

  const Matrix us = u.m * BipartiteOperator::swap_gate(d).m;
  gm.E_US = linear_entropy(schmidt_of_matrix(reshuffle({d, us}).m), d);

  const double es = swap_operator_entanglement(d);
  gm.e_p = (gm.E_U + gm.E_US - es) / es;
  gm.g_t = (gm.E_U - gm.E_US + es) / (2.0 * es);
  gm.delta = 1.0 - gm.e_p;
  return gm;
}

double entangling_power(const BipartiteOperator& u) { return gate_metrics(u).e_p; }

double gate_typicality(const BipartiteOperator& u) { return gate_metrics(u).g_t; }

double two_unitarity_defect(const BipartiteOperator& u) { return gate_metrics(u).delta; }

}  // namespace multiunit
