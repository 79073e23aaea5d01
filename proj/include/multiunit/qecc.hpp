#pragma once

#include <vector>

#include "multiunit/ame_verify.hpp"
#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct NotTwoUnitary : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Multilocal generalized Pauli operator: X^alpha Z^beta per listed site, with
// X the cyclic shift and Z = diag(1, eta, ..., eta^{d-1}), eta = e^{2 pi i/d}.
struct ErrorOperator {
  struct Factor {
    int site;   // 0-based
    int alpha;  // mod d
    int beta;   // mod d
  };
  std::vector<Factor> factors;  // non-identity sites only

  int weight() const { return static_cast<int>(factors.size()); }
};

// Complete non-identity basis of the given weight on num_sites subsystems;
// (d^2 - 1) choices per active site.
std::vector<ErrorOperator> weyl_basis(int d, int weight, int num_sites);

// Dense matrix of a single-site factor.
Matrix weyl_matrix(int d, int alpha, int beta);

// Six codewords in the d^3-dimensional three-qudit space, rows = codewords.
struct CodeSpace {
  int d = 0;
  Eigen::MatrixXcd words;  // d x d^3

  double gram_deviation() const;
};

// |i~> = (1/sqrt d) sum_{jkl} T_{ijkl} |j,k,l>
Vector encode(int i, const Tensor4& t);
// linear encoder for an arbitrary input state
Vector encode_vector(const Vector& input, const Tensor4& t);

// Requires the tensor of a verified 2-unitary: two_unitarity_defect <= delta_tol.
CodeSpace shorten_code(const Tensor4& t, double delta_tol = 1e-9);

struct KlReport {
  bool pass = false;
  double worst_offdiag = 0.0;
  double worst_spread = 0.0;  // max deviation of the diagonal from its mean
  int checked = 0;
};

// G_E = <i~| E |j~> must equal c_E I for every listed error; c_E is taken as
// the mean diagonal of G_E.
KlReport kl_check(const CodeSpace& code, const std::vector<ErrorOperator>& errors,
                  double tol = 1e-9, int jobs = 1);

struct PureCodeReport {
  bool pass = false;
  double worst = 0.0;
  int checked = 0;
};

// <Psi| E |Psi> = 0 for every Weyl error of weight <= max_weight. Weight-2
// errors run over the site pairs {A,B}, {A,C}, {A,D}; the complementary pairs
// give conjugate expectation values on a pure state.
PureCodeReport pure_code_check(const FourPartyState& psi, int max_weight,
                               double tol = 1e-9, int jobs = 1);

}  // namespace multiunit
