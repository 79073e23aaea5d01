#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace multiunit {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultUnitaryTol = 1e-10;

struct NonUnitaryFactor : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Square complex matrix of order d^2 acting on a d x d bipartite system.
// Double-index convention (one source of truth for the whole library):
//   row  p = j + d*(i-1),  column  s = l + d*(k-1),   indices 1-based,
// i.e. entry (i,j),(k,l) sits at zero-based (i*d+j, k*d+l).
struct BipartiteOperator {
  int d = 0;
  Matrix m;

  BipartiteOperator() = default;
  BipartiteOperator(int d_, Matrix m_);

  int order() const { return d * d; }

  // zero-based four-index access
  cxd& at(int i, int j, int k, int l) { return m(i * d + j, k * d + l); }
  const cxd& at(int i, int j, int k, int l) const { return m(i * d + j, k * d + l); }

  static BipartiteOperator identity(int d);
  static BipartiteOperator swap_gate(int d);  // S_{ij,kl} = delta_il delta_jk
};

// Four-index tensor T_{ijkl}, indices 0..d-1 internally.
struct Tensor4 {
  int d = 0;
  std::vector<cxd> v;

  Tensor4() = default;
  explicit Tensor4(int d_) : d(d_), v(static_cast<size_t>(d_) * d_ * d_ * d_) {}

  cxd& at(int i, int j, int k, int l) {
    return v[static_cast<size_t>(((i * d + j) * d + k)) * d + l];
  }
  const cxd& at(int i, int j, int k, int l) const {
    return v[static_cast<size_t>(((i * d + j) * d + k)) * d + l];
  }
};

enum class Cut { AB_CD, AC_BD, AD_BC };

// U^R_{ij,kl} = U_{ik,jl}
BipartiteOperator reshuffle(const BipartiteOperator& u);
// U^G_{ij,kl} = U_{il,kj}
BipartiteOperator partial_transpose(const BipartiteOperator& u);

Tensor4 to_tensor(const BipartiteOperator& u);
// AB_CD gives U, AC_BD gives U^R, AD_BC gives U^G.
BipartiteOperator flatten(const Tensor4& t, Cut cut);

// Frobenius norm of U^dag U - I; 0 iff U unitary.
double unitarity_defect(const Matrix& u);
double unitarity_defect(const BipartiteOperator& u);

// (uA (x) uB) U (uC (x) uD); factors must be unitary d x d.
BipartiteOperator apply_local(const BipartiteOperator& u, const Matrix& ua,
                              const Matrix& ub, const Matrix& uc, const Matrix& ud,
                              double tol = kDefaultUnitaryTol);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace multiunit
