#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "multiunit/cyclotomic.hpp"
#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IncompleteMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One nonzero entry amp * omega^exponent of the symbolic d = 6 matrix;
// a sign of -1 is carried as +10 on the exponent (omega^10 = -1).
struct SymbolicEntry {
  int row = 0;       // 1..36
  int col = 0;       // 1..36
  char amp = 'c';    // 'a', 'b' or 'c'
  int exponent = 0;  // 0..19, power of omega
};

struct SymbolicMatrix36 {
  std::vector<SymbolicEntry> entries;
  std::string provenance;

  std::vector<int> rows_present() const;
  bool complete() const;  // all 36 rows present
};

// Row invariants of the construction: support 2 with amplitude c only, or
// support 4 with amplitudes {a, a, b, b}.
void validate(const SymbolicMatrix36& m);

// symbolic-csv: header "row,col,amp,exp", optional "# provenance: ..." line.
SymbolicMatrix36 parse_symbolic_csv(const std::string& text);
std::string to_symbolic_csv(const SymbolicMatrix36& m);
SymbolicMatrix36 load_symbolic(const std::filesystem::path& path);
void save_symbolic(const std::filesystem::path& path, const SymbolicMatrix36& m);
std::string to_json(const SymbolicMatrix36& m);

CycNumber entry_value_exact(const SymbolicEntry& e);
BipartiteOperator realize(const SymbolicMatrix36& m);

// The four published rows: psi_11, psi_12, psi_66 and psi_63.
SymbolicMatrix36 fixture_rows();

struct GoldenNumericReport {
  double defect_u = 0.0;
  double defect_r = 0.0;
  double defect_g = 0.0;
  double delta = 0.0;
  bool ame_pass = false;
  double bell_worst = 0.0;
  bool blocks_pass = false;
  bool coarse_pass = false;
  bool pass = false;
};

// Full numeric battery on a realized (or externally produced) matrix.
GoldenNumericReport verify_golden_numeric(const BipartiteOperator& u, double tol = 1e-9);

struct ExactGramReport {
  bool pass = false;
  // worst offending inner product per rearrangement, empty when exact
  std::vector<std::string> failures;
};

// Gram matrices of U, U^R and U^Gamma evaluated entry by entry in CycNumber
// arithmetic; IncompleteMatrix unless all 36 rows are present.
ExactGramReport verify_golden_exact(const SymbolicMatrix36& m);

// Exact inner product <row r1 | row r2> of two symbolic rows.
CycNumber exact_row_inner_product(const SymbolicMatrix36& m, int r1, int r2);

}  // namespace multiunit
