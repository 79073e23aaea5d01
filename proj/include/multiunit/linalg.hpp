#pragma once

#include <Eigen/Dense>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

// Thin LAPACK wrappers for the hot small-dense factorizations.

// Singular values of a, descending.
Eigen::VectorXd singular_values(const Matrix& a);

struct Svd {
  Matrix u;
  Eigen::VectorXd s;  // descending
  Matrix vh;
};
Svd svd_full(const Matrix& a);

// Eigen-decomposition of a Hermitian matrix, ascending eigenvalues.
struct HermitianEig {
  Eigen::VectorXd w;
  Matrix v;
};
HermitianEig hermitian_eig(const Matrix& h);

// exp(i * scale * h) for Hermitian h.
Matrix hermitian_phase_exp(const Matrix& h, double scale);

}  // namespace multiunit
