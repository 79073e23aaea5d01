#include <doctest.h>

#include <set>
#include <sstream>

#include "multiunit/designs.hpp"
#include "multiunit/dynmap.hpp"
#include "multiunit/metrics.hpp"

using namespace multiunit;

namespace {

// Eq. S3, transcribed: the only 1 of each row sits at the listed column.
constexpr int kP9Columns[9] = {6, 8, 1, 7, 3, 5, 2, 4, 9};

// Fig. 2 of the main text (d = 3 Graeco-Latin square in number pairs).
DesignTable fig2_table() {
  return design_from_text("3\n23 31 12\n32 13 21\n11 22 33\n");
}

}  // namespace

TEST_CASE("fig. 2 table is an OLS") {
  const OlsDefectReport rep = check_ols(fig2_table());
  CHECK(rep.empty());
}

TEST_CASE("near-OLS defect reports") {
  SUBCASE("P36 table: pairs 33 and 44 repeat, 34 and 43 are missing") {
    const OlsDefectReport rep = check_ols(builtin_design(BuiltinDesign::P36));
    REQUIRE(rep.repeated_pairs.size() == 2);
    CHECK(rep.repeated_pairs[0].pair == std::pair{3, 3});
    CHECK(rep.repeated_pairs[0].cells.size() == 2);
    CHECK(rep.repeated_pairs[1].pair == std::pair{4, 4});
    CHECK(rep.repeated_pairs[1].cells.size() == 2);
    REQUIRE(rep.missing_pairs.size() == 2);
    CHECK(rep.missing_pairs[0] == std::pair{3, 4});
    CHECK(rep.missing_pairs[1] == std::pair{4, 3});
    CHECK(rep.conflicts.empty());  // both component squares are Latin
    CHECK(rep.repeated_pairs.size() == rep.missing_pairs.size());
  }
  SUBCASE("Ps table: pairs 55 and 64 repeat, with component conflicts") {
    const OlsDefectReport rep = check_ols(builtin_design(BuiltinDesign::Ps));
    REQUIRE(rep.repeated_pairs.size() == 2);
    CHECK(rep.repeated_pairs[0].pair == std::pair{5, 5});
    CHECK(rep.repeated_pairs[1].pair == std::pair{6, 4});
    REQUIRE(rep.missing_pairs.size() == 2);
    CHECK(rep.missing_pairs[0] == std::pair{5, 4});
    CHECK(rep.missing_pairs[1] == std::pair{6, 5});
    CHECK(!rep.conflicts.empty());
  }
  SUBCASE("modular formula at d=2 is not an OLS") {
    // the guard rejects even d; the formula itself yields a defective table
    CHECK_THROWS_AS(ols_modular(2), EvenDimension);
    DesignTable t(2);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        t.at(i - 1, j - 1) = {(i + j - 1) % 2 + 1, (i + 2 * j - 1) % 2 + 1};
    CHECK(!check_ols(t).empty());
  }
}

TEST_CASE("modular OLS construction") {
  for (int d : {3, 5, 7}) {
    const OlsDefectReport rep = check_ols(ols_modular(d));
    CHECK(rep.empty());
  }
  // brute-force pair distinctness, independent of check_ols internals
  const DesignTable t5 = ols_modular(5);
  std::set<std::pair<int, int>> pairs(t5.cells.begin(), t5.cells.end());
  CHECK(pairs.size() == 25);
}

TEST_CASE("cell lift of the modular OLS(3) is the printed P9") {
  const BipartiteOperator p9 = lift_cells(ols_modular(3));
  for (int row = 0; row < 9; ++row)
    for (int col = 0; col < 9; ++col) {
      const double want = (kP9Columns[row] - 1 == col) ? 1.0 : 0.0;
      CHECK(p9.m(row, col) == cxd{want, 0.0});
    }
  CHECK(unitarity_defect(p9) == 0.0);
  CHECK(unitarity_defect(reshuffle(p9)) == 0.0);
  CHECK(unitarity_defect(partial_transpose(p9)) == 0.0);
}

TEST_CASE("block lift equals reshuffle of the cell lift") {
  for (BuiltinDesign which : {BuiltinDesign::P9, BuiltinDesign::P36, BuiltinDesign::Ps}) {
    const DesignTable t = builtin_design(which);
    CHECK((lift_blocks(t).m - reshuffle(lift_cells(t)).m).norm() == 0.0);
  }
}

TEST_CASE("seed permutations are exact permutation matrices") {
  for (BuiltinDesign which : {BuiltinDesign::P9, BuiltinDesign::P36, BuiltinDesign::Ps}) {
    const BipartiteOperator p = seed_permutation(which);
    const int n = p.order();
    for (int r = 0; r < n; ++r) {
      int ones = 0, nonzeros = 0;
      for (int c = 0; c < n; ++c) {
        if (p.m(r, c) != cxd{0.0, 0.0}) ++nonzeros;
        if (p.m(r, c) == cxd{1.0, 0.0}) ++ones;
      }
      CHECK(ones == 1);
      CHECK(nonzeros == 1);
    }
    for (int c = 0; c < n; ++c)
      CHECK(p.m.col(c).sum() == cxd{1.0, 0.0});
  }
}

TEST_CASE("builtin tables match the published rows") {
  const DesignTable p36 = builtin_design(BuiltinDesign::P36);
  const DesignTable ps = builtin_design(BuiltinDesign::Ps);
  const std::pair<int, int> row1[6] = {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}};
  for (int j = 0; j < 6; ++j) {
    CHECK(p36.at(0, j) == row1[j]);
    CHECK(ps.at(0, j) == row1[j]);
  }
  const std::pair<int, int> ps_row5[6] = {{6, 4}, {5, 6}, {2, 6}, {1, 5}, {4, 3}, {3, 1}};
  for (int j = 0; j < 6; ++j) CHECK(ps.at(4, j) == ps_row5[j]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 6; ++j) CHECK(p36.at(i, j) == ps.at(i, j));
  // they differ in the last two rows
  bool differ = false;
  for (int i = 4; i < 6; ++i)
    for (int j = 0; j < 6; ++j) differ = differ || p36.at(i, j) != ps.at(i, j);
  CHECK(differ);
}

TEST_CASE("coarse grain check") {
  SUBCASE("the coarse OLS pattern passes") {
    // the published coarse array: per cell one coarse pair, entered as a full
    // 2x2 support block
    const char* rows[6] = {"11 12 33 31 22 23", "31 32 23 21 12 13",
                           "23 21 12 13 31 32", "13 11 32 33 21 22",
                           "32 33 21 22 13 11", "22 23 11 12 33 31"};
    Tensor4 t(6);
    for (int i = 0; i < 6; ++i) {
      std::istringstream in(rows[i]);
      for (int j = 0; j < 6; ++j) {
        std::string tok;
        in >> tok;
        const int kg = tok[0] - '1', lg = tok[1] - '1';
        for (int dk = 0; dk < 2; ++dk)
          for (int dl = 0; dl < 2; ++dl) t.at(i, j, 2 * kg + dk, 2 * lg + dl) = 0.5;
      }
    }
    const CoarseGrainReport rep = coarse_grain_check(t);
    CHECK(rep.single_pair_per_cell);
    CHECK(rep.pair_counts_ok);
    CHECK(rep.line_balance_ok);
    CHECK(rep.transversal_ok);
    CHECK(rep.pass);
  }
  SUBCASE("the P36 tensor fails") {
    const Tensor4 t = to_tensor(seed_permutation(BuiltinDesign::P36));
    const CoarseGrainReport rep = coarse_grain_check(t);
    CHECK(!rep.pass);
    CHECK(!rep.transversal_ok);  // repeated pairs collapse into repeated array rows
  }
  SUBCASE("all-ones support fails the pair counts") {
    Tensor4 t(6);
    for (auto& v : t.v) v = 1.0;
    const CoarseGrainReport rep = coarse_grain_check(t);
    CHECK(!rep.pass);
    CHECK(!rep.single_pair_per_cell);
  }
  SUBCASE("wrong dimension is rejected") {
    CHECK_THROWS_AS(coarse_grain_check(Tensor4(3)), WrongDimension);
  }
}

TEST_CASE("oqls check") {
  SUBCASE("rows of P9 pass") {
    const BipartiteOperator p9 = seed_permutation(BuiltinDesign::P9);
    std::vector<Matrix> c;
    for (int p = 0; p < 9; ++p) {
      Matrix m(3, 3);
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) m(k, l) = p9.m(p, 3 * k + l);
      c.push_back(m);
    }
    const OqlsReport rep = oqls_check(c);
    CHECK(rep.pass);
  }
  SUBCASE("product states of the modular OLS(3) pass") {
    const DesignTable t = ols_modular(3);
    std::vector<Matrix> c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Matrix m = Matrix::Zero(3, 3);
        m(t.at(i, j).first - 1, t.at(i, j).second - 1) = 1.0;
        c.push_back(m);
      }
    CHECK(oqls_check(c).pass);
  }
  SUBCASE("repeated Bell states fail orthogonality") {
    Matrix bell = Matrix::Zero(2, 2);
    bell(0, 0) = bell(1, 1) = 1.0 / std::sqrt(2.0);
    const std::vector<Matrix> c(4, bell);
    const OqlsReport rep = oqls_check(c);
    CHECK(!rep.pass);
    CHECK(rep.failed_condition == 1);
  }
  SUBCASE("shape mismatch is rejected") {
    CHECK_THROWS_AS(oqls_check(std::vector<Matrix>(3, Matrix::Zero(2, 2))),
                    ShapeMismatch);
  }
}

TEST_CASE("design text round trip") {
  for (BuiltinDesign which : {BuiltinDesign::P9, BuiltinDesign::P36}) {
    const DesignTable t = builtin_design(which);
    const DesignTable u = design_from_text(design_to_text(t));
    CHECK(u.d == t.d);
    CHECK(u.cells == t.cells);
  }
  CHECK_THROWS_AS(builtin_design_from_name("nope"), UnknownName);
}
