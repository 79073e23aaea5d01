#include "multiunit/tensor_core.hpp"

namespace multiunit {

BipartiteOperator::BipartiteOperator(int d_, Matrix m_) : d(d_), m(std::move(m_)) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  if (m.rows() != d * d || m.cols() != d * d)
    throw std::invalid_argument("matrix order does not match d^2");
  if (!m.allFinite()) throw std::invalid_argument("entries must be finite");
}

BipartiteOperator BipartiteOperator::identity(int d) {
  return {d, Matrix::Identity(d * d, d * d)};
}

BipartiteOperator BipartiteOperator::swap_gate(int d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return {d, std::move(s)};
}

BipartiteOperator reshuffle(const BipartiteOperator& u) {
  const int d = u.d;
  BipartiteOperator r{d, Matrix::Zero(d * d, d * d)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) r.at(i, j, k, l) = u.at(i, k, j, l);
  return r;
}

BipartiteOperator partial_transpose(const BipartiteOperator& u) {
  const int d = u.d;
  BipartiteOperator g{d, Matrix::Zero(d * d, d * d)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) g.at(i, j, k, l) = u.at(i, l, k, j);
  return g;
}

Tensor4 to_tensor(const BipartiteOperator& u) {
  Tensor4 t(u.d);
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      for (int k = 0; k < u.d; ++k)
        for (int l = 0; l < u.d; ++l) t.at(i, j, k, l) = u.at(i, j, k, l);
  return t;
}

BipartiteOperator flatten(const Tensor4& t, Cut cut) {
  const int d = t.d;
  BipartiteOperator u{d, Matrix::Zero(d * d, d * d)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) u.at(i, j, k, l) = t.at(i, j, k, l);
  switch (cut) {
    case Cut::AB_CD: return u;
    case Cut::AC_BD: return reshuffle(u);
    case Cut::AD_BC: return partial_transpose(u);
  }
  throw std::logic_error("unreachable");
}

double unitarity_defect(const Matrix& u) {
  const Matrix g = u.adjoint() * u;
  return (g - Matrix::Identity(u.cols(), u.cols())).norm();
}

double unitarity_defect(const BipartiteOperator& u) { return unitarity_defect(u.m); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

BipartiteOperator apply_local(const BipartiteOperator& u, const Matrix& ua,
                              const Matrix& ub, const Matrix& uc, const Matrix& ud,
                              double tol) {
  for (const Matrix* f : {&ua, &ub, &uc, &ud}) {
    if (f->rows() != u.d || f->cols() != u.d)
      throw NonUnitaryFactor("local factor has wrong dimension");
    if (unitarity_defect(*f) > tol)
      throw NonUnitaryFactor("local factor exceeds unitarity tolerance");
  }
  return {u.d, kron(ua, ub) * u.m * kron(uc, ud)};
}

}  // namespace multiunit
