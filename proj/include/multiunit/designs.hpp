#pragma once

#include <string>
#include <utility>
#include <vector>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct BadSymbolRange : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EvenDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownName : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct WrongDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// d x d table of ordered symbol pairs (k,l), symbols 1..d.
struct DesignTable {
  int d = 0;
  std::vector<std::pair<int, int>> cells;  // row-major

  DesignTable() = default;
  explicit DesignTable(int d_) : d(d_), cells(static_cast<size_t>(d_) * d_) {}

  std::pair<int, int>& at(int i, int j) { return cells[static_cast<size_t>(i) * d + j]; }
  const std::pair<int, int>& at(int i, int j) const {
    return cells[static_cast<size_t>(i) * d + j];
  }
};

struct OlsDefectReport {
  struct RepeatedPair {
    std::pair<int, int> pair;
    std::vector<std::pair<int, int>> cells;  // (row, col), 1-based
  };
  struct LineConflict {
    int component;  // 1 or 2
    bool in_row;    // row conflict vs column conflict
    int index;      // 1-based row/column
    int symbol;
    int count;
  };
  std::vector<RepeatedPair> repeated_pairs;
  std::vector<std::pair<int, int>> missing_pairs;
  std::vector<LineConflict> conflicts;

  bool empty() const {
    return repeated_pairs.empty() && missing_pairs.empty() && conflicts.empty();
  }
};

// Exhaustive defect enumeration; empty report iff the table is a true OLS.
OlsDefectReport check_ols(const DesignTable& t);

// cell (i,j) -> (i+j, i+2j) mod d with symbols 1..d; an OLS for odd d.
DesignTable ols_modular(int d);

// Cell lift: row (i,j) = table cell, column (k,l) = symbol pair.
// A permutation iff the table is a defect-free OLS.
BipartiteOperator lift_cells(const DesignTable& t);

// Block lift: the (i,j) block of the d^2 matrix carries a single 1 at
// within-block row k, column l, where (k,l) is the pair in cell (i,j).
// Equals reshuffle(lift_cells(t)); a permutation whenever the first component
// is row-Latin and the second is column-Latin, which holds for all builtin
// designs including the near-OLS ones.
BipartiteOperator lift_blocks(const DesignTable& t);

enum class BuiltinDesign { P9, P36, Ps };
BuiltinDesign builtin_design_from_name(const std::string& name);
std::string builtin_design_name(BuiltinDesign which);

// P9: the modular OLS(3); P36, Ps: the d=6 near-OLS tables.
DesignTable builtin_design(BuiltinDesign which);

// The permutation matrices used as search seeds: P9 via the cell lift (the
// d=3 2-unitary permutation), P36 and Ps via the block lift.
BipartiteOperator seed_permutation(BuiltinDesign which);

struct CoarseGrainReport {
  bool pass = false;
  bool single_pair_per_cell = false;
  bool pair_counts_ok = false;        // every coarse pair appears exactly 4 times
  bool line_balance_ok = false;       // each symbol twice per row/column per position
  bool transversal_ok = false;        // the 4 cells of a pair hit 4 distinct rows and columns
  std::string detail;
};

// Coarse-grains tensor indices k,l by the grouping {1,2}{3,4}{5,6} and checks
// the orthogonal-frequency-square properties of the resulting 6x6 pair array,
// plus the transversal condition that separates the perfect-tensor pattern
// from the near-OLS lifts.
CoarseGrainReport coarse_grain_check(const Tensor4& t, double tol = 1e-8);

struct OqlsReport {
  bool pass = false;
  int failed_condition = 0;  // 0 none, 1 (a), 2 (b), 3 (c)
  double worst = 0.0;
};

// Definition-4 conditions on d^2 coefficient matrices C^{i,j}:
// (a) Tr C^{ij} (C^{kl})^dag = delta_ik delta_jl
// (b) sum_i C^{ij} (C^{il})^dag = delta_jl I
// (c) sum_j C^{ij} (C^{kj})^dag = delta_ik I
OqlsReport oqls_check(const std::vector<Matrix>& c, double tol = 1e-10);

// Text format: d on line 1, then d lines of d two-digit pairs.
std::string design_to_text(const DesignTable& t);
DesignTable design_from_text(const std::string& text);

}  // namespace multiunit
