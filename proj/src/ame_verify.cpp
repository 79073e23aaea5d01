#include "multiunit/ame_verify.hpp"

#include <algorithm>
#include <set>

#include "multiunit/linalg.hpp"

namespace multiunit {

FourPartyState state_from_unitary(const BipartiteOperator& u, double tol) {
  const double defect = unitarity_defect(u);
  if (defect > tol)
    throw NonUnitaryInput("unitarity defect " + std::to_string(defect));
  FourPartyState psi;
  psi.d = u.d;
  psi.amp.resize(u.order() * u.order());
  const double inv_d = 1.0 / u.d;
  for (int i = 0; i < u.d; ++i)
    for (int j = 0; j < u.d; ++j)
      for (int k = 0; k < u.d; ++k)
        for (int l = 0; l < u.d; ++l) psi.at(i, j, k, l) = u.at(i, j, k, l) * inv_d;
  return psi;
}

Matrix partial_trace(const FourPartyState& psi, const std::vector<int>& keep) {
  if (keep.empty() || keep.size() > 3) throw BadSubset("keep 1..3 of the 4 sites");
  std::set<int> ks(keep.begin(), keep.end());
  if (ks.size() != keep.size()) throw BadSubset("repeated site");
  for (int s : ks)
    if (s < 0 || s > 3) throw BadSubset("site out of range");

  const int d = psi.d;
  std::vector<int> kept(ks.begin(), ks.end()), traced;
  for (int s = 0; s < 4; ++s)
    if (!ks.count(s)) traced.push_back(s);

  int dim_keep = 1;
  for (size_t q = 0; q < kept.size(); ++q) dim_keep *= d;
  int dim_tr = 1;
  for (size_t q = 0; q < traced.size(); ++q) dim_tr *= d;

  auto site_index = [&](int flat, int site) {
    // flat amplitude index -> index of a given site, most significant = A
    int shift = 3 - site;
    int v = flat;
    for (int s = 0; s < shift; ++s) v /= d;
    return v % d;
  };
  auto sub_index = [&](int flat, const std::vector<int>& sites) {
    int v = 0;
    for (int s : sites) v = v * d + site_index(flat, s);
    return v;
  };

  Matrix rho = Matrix::Zero(dim_keep, dim_keep);
  const int total = d * d * d * d;
  // group amplitudes by traced indices
  std::vector<std::vector<std::pair<int, cxd>>> groups(dim_tr);
  for (int f = 0; f < total; ++f)
    groups[sub_index(f, traced)].push_back({sub_index(f, kept), psi.amp(f)});
  for (const auto& g : groups)
    for (const auto& [r, zr] : g)
      for (const auto& [c, zc] : g) rho(r, c) += zr * std::conj(zc);
  return rho;
}

std::pair<bool, ReductionReport> ame_check(const FourPartyState& psi, double tol) {
  const int d2 = psi.d * psi.d;
  const Matrix eye = Matrix::Identity(d2, d2) / static_cast<double>(d2);
  ReductionReport rep;
  rep.dev_ab = (partial_trace(psi, {0, 1}) - eye).norm();
  rep.dev_ac = (partial_trace(psi, {0, 2}) - eye).norm();
  rep.dev_ad = (partial_trace(psi, {0, 3}) - eye).norm();
  return {rep.worst() <= tol, rep};
}

std::vector<Matrix> row_states(const BipartiteOperator& u) {
  std::vector<Matrix> out;
  out.reserve(u.order());
  for (int p = 0; p < u.order(); ++p) {
    Matrix c(u.d, u.d);
    for (int k = 0; k < u.d; ++k)
      for (int l = 0; l < u.d; ++l) c(k, l) = u.m(p, k * u.d + l);
    out.push_back(std::move(c));
  }
  return out;
}

double bell_rank_deviation(const Matrix& c) {
  const Eigen::VectorXd s = singular_values(c);
  const double r = 1.0 / std::sqrt(2.0);
  double dev = std::max(std::abs(s(0) - r), std::abs(s(1) - r));
  for (int i = 2; i < s.size(); ++i) dev = std::max(dev, s(i));
  return dev;
}

bool bell_rank_check(const Matrix& c, double tol) {
  if (std::abs(c.norm() - 1.0) > tol) return false;
  return bell_rank_deviation(c) <= tol;
}

bool BlockReport::all_square() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const Block& b) { return b.rows.size() == b.cols.size(); });
}

bool BlockReport::uniform(int n, int size) const {
  if (static_cast<int>(blocks.size()) != n) return false;
  return std::all_of(blocks.begin(), blocks.end(), [size](const Block& b) {
    return static_cast<int>(b.rows.size()) == size &&
           static_cast<int>(b.cols.size()) == size;
  });
}

BlockReport block_structure_detect(const BipartiteOperator& u, double tol) {
  const int n = u.order();
  std::vector<bool> seen_r(n, false), seen_c(n, false);
  BlockReport rep;

  for (int r0 = 0; r0 < n; ++r0) {
    if (seen_r[r0]) continue;
    BlockReport::Block blk;
    std::vector<std::pair<bool, int>> stack{{true, r0}};
    seen_r[r0] = true;
    blk.rows.push_back(r0);
    while (!stack.empty()) {
      auto [is_row, idx] = stack.back();
      stack.pop_back();
      if (is_row) {
        for (int c = 0; c < n; ++c)
          if (!seen_c[c] && std::abs(u.m(idx, c)) > tol) {
            seen_c[c] = true;
            blk.cols.push_back(c);
            stack.push_back({false, c});
          }
      } else {
        for (int r = 0; r < n; ++r)
          if (!seen_r[r] && std::abs(u.m(r, idx)) > tol) {
            seen_r[r] = true;
            blk.rows.push_back(r);
            stack.push_back({true, r});
          }
      }
    }
    std::sort(blk.rows.begin(), blk.rows.end());
    std::sort(blk.cols.begin(), blk.cols.end());
    if (blk.rows.size() == blk.cols.size() && !blk.cols.empty()) {
      Matrix sub(blk.rows.size(), blk.cols.size());
      for (size_t a = 0; a < blk.rows.size(); ++a)
        for (size_t b = 0; b < blk.cols.size(); ++b)
          sub(a, b) = u.m(blk.rows[a], blk.cols[b]);
      blk.defect = unitarity_defect(sub);
    } else {
      blk.defect = std::numeric_limits<double>::infinity();
    }
    rep.blocks.push_back(std::move(blk));
  }
  std::sort(rep.blocks.begin(), rep.blocks.end(),
            [](const BlockReport::Block& a, const BlockReport::Block& b) {
              if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
              return a.rows.front() < b.rows.front();
            });
  return rep;
}

}  // namespace multiunit
