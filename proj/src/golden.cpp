#include "multiunit/golden.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "multiunit/ame_verify.hpp"
#include "multiunit/designs.hpp"
#include "multiunit/metrics.hpp"

namespace multiunit {

std::vector<int> SymbolicMatrix36::rows_present() const {
  std::set<int> s;
  for (const auto& e : entries) s.insert(e.row);
  return {s.begin(), s.end()};
}

bool SymbolicMatrix36::complete() const {
  return rows_present().size() == 36;
}

void validate(const SymbolicMatrix36& m) {
  std::set<std::pair<int, int>> seen;
  std::map<int, std::vector<const SymbolicEntry*>> by_row;
  for (const auto& e : m.entries) {
    if (e.row < 1 || e.row > 36 || e.col < 1 || e.col > 36)
      throw ParseError("entry index out of 1..36");
    if (e.amp != 'a' && e.amp != 'b' && e.amp != 'c')
      throw ParseError("amplitude symbol must be a, b or c");
    if (e.exponent < 0 || e.exponent > 19) throw ParseError("exponent out of 0..19");
    if (!seen.insert({e.row, e.col}).second)
      throw ParseError("duplicate entry at row " + std::to_string(e.row) + ", col " +
                       std::to_string(e.col));
    by_row[e.row].push_back(&e);
  }
  for (const auto& [row, es] : by_row) {
    std::string amps;
    for (const auto* e : es) amps.push_back(e->amp);
    std::sort(amps.begin(), amps.end());
    const bool minimal = amps == "cc";
    const bool maximal = amps == "aabb";
    if (!minimal && !maximal)
      throw InvariantViolation("row " + std::to_string(row) +
                               ": support must be {c,c} or {a,a,b,b}, got \"" + amps +
                               "\"");
  }
}

SymbolicMatrix36 parse_symbolic_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SymbolicMatrix36 m;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# provenance:", 0) == 0) {
      m.provenance = line.substr(13);
      if (!m.provenance.empty() && m.provenance.front() == ' ')
        m.provenance.erase(m.provenance.begin());
      continue;
    }
    if (!header_seen) {
      if (line.rfind("row,col,amp,exp", 0) != 0)
        throw ParseError("symbolic csv: missing header row,col,amp,exp");
      header_seen = true;
      continue;
    }
    int row, col, exp;
    char amp;
    if (std::sscanf(line.c_str(), "%d,%c,%d", &row, &amp, &exp) == 3)
      throw ParseError("symbolic csv: bad row at line " + std::to_string(lineno));
    if (std::sscanf(line.c_str(), "%d,%d,%c,%d", &row, &col, &amp, &exp) != 4)
      throw ParseError("symbolic csv: bad row at line " + std::to_string(lineno));
    m.entries.push_back({row, col, amp, exp});
  }
  if (!header_seen) throw ParseError("symbolic csv: empty input");
  validate(m);
  return m;
}

std::string to_symbolic_csv(const SymbolicMatrix36& m) {
  std::ostringstream out;
  if (!m.provenance.empty()) out << "# provenance: " << m.provenance << "\n";
  out << "row,col,amp,exp\n";
  for (const auto& e : m.entries)
    out << e.row << "," << e.col << "," << e.amp << "," << e.exponent << "\n";
  return out.str();
}

SymbolicMatrix36 load_symbolic(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open: " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_symbolic_csv(ss.str());
}

void save_symbolic(const std::filesystem::path& path, const SymbolicMatrix36& m) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot open for writing: " + path.string());
  f << to_symbolic_csv(m);
}

std::string to_json(const SymbolicMatrix36& m) {
  std::ostringstream out;
  out << "{\n  \"provenance\": \"" << m.provenance << "\",\n  \"entries\": [";
  for (size_t i = 0; i < m.entries.size(); ++i) {
    const auto& e = m.entries[i];
    out << (i ? "," : "") << "\n    {\"row\": " << e.row << ", \"col\": " << e.col
        << ", \"amp\": \"" << e.amp << "\", \"exp\": " << e.exponent << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

CycNumber entry_value_exact(const SymbolicEntry& e) {
  const GoldenConstants& g = golden_constants();
  const CycNumber& amp = e.amp == 'a' ? g.a : e.amp == 'b' ? g.b : g.c;
  return amp * omega_pow(e.exponent);
}

BipartiteOperator realize(const SymbolicMatrix36& m) {
  BipartiteOperator u{6, Matrix::Zero(36, 36)};
  for (const auto& e : m.entries)
    u.m(e.row - 1, e.col - 1) = entry_value_exact(e).embed();
  return u;
}

SymbolicMatrix36 fixture_rows() {
  SymbolicMatrix36 m;
  m.provenance = "published rows psi_11, psi_12, psi_66, psi_63";
  m.entries = {
      // psi_11 = c|12> + c|21>
      {1, 2, 'c', 0},
      {1, 7, 'c', 0},
      // psi_12 = c w^17 |13> + c w^19 |24>
      {2, 3, 'c', 17},
      {2, 10, 'c', 19},
      // psi_66 = b w^9 |51> + a w^16 |52> + a w^16 |61> + b w^13 |62>
      {36, 25, 'b', 9},
      {36, 26, 'a', 16},
      {36, 31, 'a', 16},
      {36, 32, 'b', 13},
      // psi_63 = a w^10 |11> + b w^15 |12> + b w^5 |21> + a |22>
      {33, 1, 'a', 10},
      {33, 2, 'b', 15},
      {33, 7, 'b', 5},
      {33, 8, 'a', 0},
  };
  validate(m);
  return m;
}

GoldenNumericReport verify_golden_numeric(const BipartiteOperator& u, double tol) {
  GoldenNumericReport rep;
  rep.defect_u = unitarity_defect(u);
  rep.defect_r = unitarity_defect(reshuffle(u));
  rep.defect_g = unitarity_defect(partial_transpose(u));
  rep.delta = two_unitarity_defect(u);
  rep.ame_pass = ame_check(state_from_unitary(u, 1e-6), tol).first;
  rep.bell_worst = 0.0;
  for (const Matrix& c : row_states(u))
    rep.bell_worst = std::max(rep.bell_worst, bell_rank_deviation(c));
  const double block_tol = 1e-6;
  rep.blocks_pass = block_structure_detect(u, block_tol).uniform(9, 4) &&
                    block_structure_detect(reshuffle(u), block_tol).uniform(9, 4) &&
                    block_structure_detect(partial_transpose(u), block_tol).uniform(9, 4);
  rep.coarse_pass = coarse_grain_check(to_tensor(u), block_tol).pass;
  rep.pass = rep.defect_u <= tol && rep.defect_r <= tol && rep.defect_g <= tol &&
             rep.delta <= tol && rep.ame_pass && rep.bell_worst <= 1e-6 &&
             rep.blocks_pass && rep.coarse_pass;
  return rep;
}

namespace {

// column index -> exact value maps per rearrangement row
using SparseRow = std::map<int, CycNumber>;

std::vector<SparseRow> sparse_rows(const SymbolicMatrix36& m,
                                   int (*row_of)(int, int, int, int),
                                   int (*col_of)(int, int, int, int)) {
  std::vector<SparseRow> rows(36);
  for (const auto& e : m.entries) {
    const int i = (e.row - 1) / 6, j = (e.row - 1) % 6;
    const int k = (e.col - 1) / 6, l = (e.col - 1) % 6;
    rows[row_of(i, j, k, l)][col_of(i, j, k, l)] =
        rows[row_of(i, j, k, l)].count(col_of(i, j, k, l))
            ? rows[row_of(i, j, k, l)][col_of(i, j, k, l)] + entry_value_exact(e)
            : entry_value_exact(e);
  }
  return rows;
}

bool exact_gram_identity(const std::vector<SparseRow>& rows,
                         std::vector<std::string>& failures, const char* tag) {
  bool ok = true;
  for (int r1 = 0; r1 < 36; ++r1)
    for (int r2 = r1; r2 < 36; ++r2) {
      CycNumber acc = CycNumber::zero();
      for (const auto& [c, v1] : rows[r1]) {
        auto it = rows[r2].find(c);
        if (it != rows[r2].end()) acc = acc + v1 * it->second.conj();
      }
      if (r1 == r2) acc = acc - CycNumber::one();
      if (!acc.is_zero()) {
        ok = false;
        if (failures.size() < 8)
          failures.push_back(std::string(tag) + " rows (" + std::to_string(r1 + 1) +
                             "," + std::to_string(r2 + 1) + "): " + acc.to_string());
      }
    }
  return ok;
}

}  // namespace

ExactGramReport verify_golden_exact(const SymbolicMatrix36& m) {
  if (!m.complete())
    throw IncompleteMatrix("exact Gram checks need all 36 rows, have " +
                           std::to_string(m.rows_present().size()));
  validate(m);

  ExactGramReport rep;
  const auto u_rows = sparse_rows(
      m, [](int i, int j, int, int) { return i * 6 + j; },
      [](int, int, int k, int l) { return k * 6 + l; });
  const auto r_rows = sparse_rows(
      m, [](int i, int, int k, int) { return i * 6 + k; },
      [](int, int j, int, int l) { return j * 6 + l; });
  const auto g_rows = sparse_rows(
      m, [](int i, int, int, int l) { return i * 6 + l; },
      [](int, int j, int k, int) { return k * 6 + j; });

  const bool u_ok = exact_gram_identity(u_rows, rep.failures, "U");
  const bool r_ok = exact_gram_identity(r_rows, rep.failures, "U^R");
  const bool g_ok = exact_gram_identity(g_rows, rep.failures, "U^Gamma");
  rep.pass = u_ok && r_ok && g_ok;
  return rep;
}

CycNumber exact_row_inner_product(const SymbolicMatrix36& m, int r1, int r2) {
  std::map<int, CycNumber> a, b;
  for (const auto& e : m.entries) {
    if (e.row == r1) a[e.col] = entry_value_exact(e);
    if (e.row == r2) b[e.col] = entry_value_exact(e);
  }
  CycNumber acc = CycNumber::zero();
  for (const auto& [c, v] : a) {
    auto it = b.find(c);
    if (it != b.end()) acc = acc + v * it->second.conj();
  }
  return acc;
}

}  // namespace multiunit
