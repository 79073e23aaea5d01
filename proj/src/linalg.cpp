#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>

#include "multiunit/linalg.hpp"

#include <complex>
#include <stdexcept>

#include <lapacke.h>

namespace multiunit {

namespace {

void check_info(int info, const char* what) {
  if (info != 0)
    throw std::runtime_error(std::string(what) + " failed, info = " + std::to_string(info));
}

}  // namespace

Eigen::VectorXd singular_values(const Matrix& a) {
  Matrix work = a;  // overwritten
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                  s.data(), nullptr, m, nullptr, n);
  check_info(info, "zgesdd('N')");
  return s;
}

Svd svd_full(const Matrix& a) {
  Matrix work = a;
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  if (m != n) throw std::invalid_argument("svd_full: square input expected");
  Svd out;
  out.u.resize(m, m);
  out.vh.resize(n, n);
  out.s.resize(n);
  const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'A', m, n, work.data(), m,
                                  out.s.data(), out.u.data(), m, out.vh.data(), n);
  check_info(info, "zgesdd('A')");
  return out;
}

HermitianEig hermitian_eig(const Matrix& h) {
  HermitianEig out;
  const int n = static_cast<int>(h.rows());
  out.v = h;
  out.w.resize(n);
  const int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.v.data(), n, out.w.data());
  check_info(info, "zheevd");
  return out;
}

Matrix hermitian_phase_exp(const Matrix& h, double scale) {
  const auto eig = hermitian_eig(h);
  const int n = static_cast<int>(h.rows());
  Vector phases(n);
  for (int i = 0; i < n; ++i)
    phases(i) = std::exp(cxd{0.0, scale * eig.w(i)});
  return eig.v * phases.asDiagonal() * eig.v.adjoint();
}

}  // namespace multiunit
