#pragma once

#include <vector>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct NonUnitaryInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct BadSubset : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pure state of four qudits; amplitude index (((i*d + j)*d + k)*d + l).
struct FourPartyState {
  int d = 0;
  Vector amp;

  cxd& at(int i, int j, int k, int l) {
    return amp(((i * d + j) * d + k) * d + l);
  }
  const cxd& at(int i, int j, int k, int l) const {
    return amp(((i * d + j) * d + k) * d + l);
  }
};

// |Psi> = (1/d) sum T_{ijkl} |ijkl> with T the tensor of U.
FourPartyState state_from_unitary(const BipartiteOperator& u,
                                  double tol = kDefaultUnitaryTol);

// Sites are 0=A, 1=B, 2=C, 3=D; keep must name 1..3 distinct sites.
Matrix partial_trace(const FourPartyState& psi, const std::vector<int>& keep);

struct ReductionReport {
  double dev_ab = 0.0;  // ||rho_AB - I/d^2||_F
  double dev_ac = 0.0;
  double dev_ad = 0.0;
  double worst() const { return std::max({dev_ab, dev_ac, dev_ad}); }
};

// True iff the three independent two-party reductions are maximally mixed
// within tol; the complementary cuts carry the same spectra by purity.
std::pair<bool, ReductionReport> ame_check(const FourPartyState& psi, double tol = 1e-10);

// C^{ij}_{kl} = U_{(ij),(kl)}, one d x d coefficient matrix per row.
std::vector<Matrix> row_states(const BipartiteOperator& u);

// True iff the singular values of C are (1/sqrt2, 1/sqrt2, 0, ...) within tol.
bool bell_rank_check(const Matrix& c, double tol = 1e-8);
double bell_rank_deviation(const Matrix& c);

struct BlockReport {
  struct Block {
    std::vector<int> rows;
    std::vector<int> cols;
    double defect = 0.0;  // unitarity defect of the extracted square submatrix
  };
  std::vector<Block> blocks;  // sorted by size then first row

  bool all_square() const;
  // true iff the support splits into n blocks of exactly size x size
  bool uniform(int n, int size) const;
};

// Connected components of the bipartite support graph at threshold tol.
BlockReport block_structure_detect(const BipartiteOperator& u, double tol = 1e-8);

}  // namespace multiunit
