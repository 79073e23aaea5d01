#include "multiunit/designs.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace multiunit {

namespace {

void require_symbols_in_range(const DesignTable& t) {
  for (const auto& [k, l] : t.cells)
    if (k < 1 || k > t.d || l < 1 || l > t.d)
      throw BadSymbolRange("design symbol out of 1..d");
}

}  // namespace

OlsDefectReport check_ols(const DesignTable& t) {
  require_symbols_in_range(t);
  const int d = t.d;
  OlsDefectReport rep;

  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> where;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) where[t.at(i, j)].push_back({i + 1, j + 1});

  for (int k = 1; k <= d; ++k)
    for (int l = 1; l <= d; ++l) {
      auto it = where.find({k, l});
      if (it == where.end())
        rep.missing_pairs.push_back({k, l});
      else if (it->second.size() > 1)
        rep.repeated_pairs.push_back({{k, l}, it->second});
    }

  for (int comp = 1; comp <= 2; ++comp) {
    auto sym = [&](int i, int j) {
      return comp == 1 ? t.at(i, j).first : t.at(i, j).second;
    };
    for (int i = 0; i < d; ++i) {
      std::vector<int> cnt(d + 1, 0);
      for (int j = 0; j < d; ++j) ++cnt[sym(i, j)];
      for (int s = 1; s <= d; ++s)
        if (cnt[s] > 1) rep.conflicts.push_back({comp, true, i + 1, s, cnt[s]});
    }
    for (int j = 0; j < d; ++j) {
      std::vector<int> cnt(d + 1, 0);
      for (int i = 0; i < d; ++i) ++cnt[sym(i, j)];
      for (int s = 1; s <= d; ++s)
        if (cnt[s] > 1) rep.conflicts.push_back({comp, false, j + 1, s, cnt[s]});
    }
  }
  return rep;
}

DesignTable ols_modular(int d) {
  if (d < 3 || d % 2 == 0) throw EvenDimension("modular OLS construction needs odd d >= 3");
  DesignTable t(d);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      t.at(i - 1, j - 1) = {(i + j - 1) % d + 1, (i + 2 * j - 1) % d + 1};
  return t;
}

BipartiteOperator lift_cells(const DesignTable& t) {
  require_symbols_in_range(t);
  const int d = t.d;
  BipartiteOperator u{d, Matrix::Zero(d * d, d * d)};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto& [k, l] = t.at(i, j);
      u.at(i, j, k - 1, l - 1) = 1.0;
    }
  return u;
}

BipartiteOperator lift_blocks(const DesignTable& t) { return reshuffle(lift_cells(t)); }

namespace {

// Figs. S3/S4 tables, first row 11 22 33 44 55 66.
constexpr std::array<const char*, 6> kTableP36 = {
    "11 22 33 44 55 66", "23 14 45 36 61 52", "32 41 64 53 16 25",
    "46 35 51 62 24 13", "54 63 26 15 42 31", "65 56 12 21 33 44"};

constexpr std::array<const char*, 6> kTablePs = {
    "11 22 33 44 55 66", "23 14 45 36 61 52", "32 41 64 53 16 25",
    "46 35 51 62 24 13", "64 56 26 15 43 31", "55 63 12 21 42 34"};

DesignTable parse_rows(const std::array<const char*, 6>& rows) {
  std::ostringstream ss;
  ss << 6 << "\n";
  for (const char* r : rows) ss << r << "\n";
  return design_from_text(ss.str());
}

}  // namespace

BuiltinDesign builtin_design_from_name(const std::string& name) {
  if (name == "P9") return BuiltinDesign::P9;
  if (name == "P36") return BuiltinDesign::P36;
  if (name == "Ps") return BuiltinDesign::Ps;
  throw UnknownName("unknown design name: " + name);
}

std::string builtin_design_name(BuiltinDesign which) {
  switch (which) {
    case BuiltinDesign::P9: return "P9";
    case BuiltinDesign::P36: return "P36";
    case BuiltinDesign::Ps: return "Ps";
  }
  throw std::logic_error("unreachable");
}

DesignTable builtin_design(BuiltinDesign which) {
  switch (which) {
    case BuiltinDesign::P9: return ols_modular(3);
    case BuiltinDesign::P36: return parse_rows(kTableP36);
    case BuiltinDesign::Ps: return parse_rows(kTablePs);
  }
  throw std::logic_error("unreachable");
}

BipartiteOperator seed_permutation(BuiltinDesign which) {
  const DesignTable t = builtin_design(which);
  return which == BuiltinDesign::P9 ? lift_cells(t) : lift_blocks(t);
}

CoarseGrainReport coarse_grain_check(const Tensor4& t, double tol) {
  if (t.d != 6) throw WrongDimension("coarse graining defined for d = 6");
  CoarseGrainReport rep;
  auto group = [](int x) { return x / 2; };  // 0,1 -> 0; 2,3 -> 1; 4,5 -> 2

  // one coarse pair per cell, read off the support
  std::array<std::array<int, 6>, 6> cell{};  // encoded 3*kg+lg, -1 empty, -2 mixed
  for (auto& row : cell) row.fill(-1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          if (std::abs(t.at(i, j, k, l)) <= tol) continue;
          const int enc = 3 * group(k) + group(l);
          int& c = cell[i][j];
          if (c == -1)
            c = enc;
          else if (c != enc)
            c = -2;
        }
  rep.single_pair_per_cell = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (cell[i][j] < 0) {
        rep.single_pair_per_cell = false;
        rep.detail = "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                     (cell[i][j] == -1 ? ") has empty support" : ") mixes coarse pairs");
      }
  if (!rep.single_pair_per_cell) return rep;

  std::array<int, 9> counts{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) ++counts[cell[i][j]];
  rep.pair_counts_ok = std::all_of(counts.begin(), counts.end(),
                                   [](int c) { return c == 4; });

  rep.line_balance_ok = true;
  for (int i = 0; i < 6 && rep.line_balance_ok; ++i) {
    std::array<int, 3> f{}, s{};
    for (int j = 0; j < 6; ++j) ++f[cell[i][j] / 3], ++s[cell[i][j] % 3];
    for (int g = 0; g < 3; ++g)
      if (f[g] != 2 || s[g] != 2) rep.line_balance_ok = false;
  }
  for (int j = 0; j < 6 && rep.line_balance_ok; ++j) {
    std::array<int, 3> f{}, s{};
    for (int i = 0; i < 6; ++i) ++f[cell[i][j] / 3], ++s[cell[i][j] % 3];
    for (int g = 0; g < 3; ++g)
      if (f[g] != 2 || s[g] != 2) rep.line_balance_ok = false;
  }

  rep.transversal_ok = true;
  for (int enc = 0; enc < 9; ++enc) {
    std::set<int> ris, cjs;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (cell[i][j] == enc) ris.insert(i), cjs.insert(j);
    if (ris.size() != 4 || cjs.size() != 4) rep.transversal_ok = false;
  }

  rep.pass = rep.pair_counts_ok && rep.line_balance_ok && rep.transversal_ok;
  if (!rep.pass && rep.detail.empty()) {
    rep.detail = !rep.pair_counts_ok    ? "coarse pair counts differ from 4"
                 : !rep.line_balance_ok ? "row/column symbol balance violated"
                                        : "repeated rows or columns within a coarse pair";
  }
  return rep;
}

OqlsReport oqls_check(const std::vector<Matrix>& c, double tol) {
  OqlsReport rep;
  const size_t n = c.size();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<size_t>(d) * d != n)
    throw ShapeMismatch("need d^2 coefficient matrices");
  for (const auto& m : c)
    if (m.rows() != d || m.cols() != d)
      throw ShapeMismatch("coefficient matrices must be d x d");

  auto C = [&](int i, int j) -> const Matrix& { return c[static_cast<size_t>(i) * d + j]; };

  double worst_a = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const cxd tr = (C(i, j) * C(k, l).adjoint()).trace();
          const cxd want = (i == k && j == l) ? cxd{1.0, 0.0} : cxd{0.0, 0.0};
          worst_a = std::max(worst_a, std::abs(tr - want));
        }

  double worst_b = 0.0;
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      Matrix acc = Matrix::Zero(d, d);
      for (int i = 0; i < d; ++i) acc += C(i, j) * C(i, l).adjoint();
      if (j == l) acc -= Matrix::Identity(d, d);
      worst_b = std::max(worst_b, acc.cwiseAbs().maxCoeff());
    }

  double worst_c = 0.0;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Matrix acc = Matrix::Zero(d, d);
      for (int j = 0; j < d; ++j) acc += C(i, j) * C(k, j).adjoint();
      if (i == k) acc -= Matrix::Identity(d, d);
      worst_c = std::max(worst_c, acc.cwiseAbs().maxCoeff());
    }

  rep.worst = std::max({worst_a, worst_b, worst_c});
  if (worst_a > tol)
    rep.failed_condition = 1;
  else if (worst_b > tol)
    rep.failed_condition = 2;
  else if (worst_c > tol)
    rep.failed_condition = 3;
  rep.pass = rep.failed_condition == 0;
  return rep;
}

std::string design_to_text(const DesignTable& t) {
  std::ostringstream out;
  out << t.d << "\n";
  for (int i = 0; i < t.d; ++i) {
    for (int j = 0; j < t.d; ++j) {
      const auto& [k, l] = t.at(i, j);
      out << (j ? " " : "") << k << l;
    }
    out << "\n";
  }
  return out.str();
}

DesignTable design_from_text(const std::string& text) {
  std::istringstream in(text);
  int d = 0;
  if (!(in >> d) || d < 1 || d > 9)
    throw std::invalid_argument("design text: bad dimension (single-digit symbols only)");
  DesignTable t(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::string tok;
      if (!(in >> tok) || tok.size() != 2)
        throw std::invalid_argument("design text: expected two-digit pair");
      t.at(i, j) = {tok[0] - '0', tok[1] - '0'};
    }
  require_symbols_in_range(t);
  return t;
}

}  // namespace multiunit
