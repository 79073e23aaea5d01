#include "multiunit/polish.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>

#include "multiunit/ame_verify.hpp"
#include "multiunit/dynmap.hpp"
#include "multiunit/linalg.hpp"
#include "multiunit/metrics.hpp"
#include "multiunit/rng.hpp"

namespace multiunit {

double support_concentration(const Matrix& u) {
  return u.cwiseAbs2().cwiseAbs2().sum();
}

namespace {

constexpr int kD = 6;
constexpr int kN = 36;

// side 0: uA row groups (strided by i), 1: uB row groups (strided by j),
// 2: uC column groups, 3: uD column groups.
void gather(const Matrix& y, int side, int p, Vector& out) {
  int idx = 0;
  if (side == 0) {
    for (int j = 0; j < kD; ++j)
      for (int c = 0; c < kN; ++c) out(idx++) = y(p * kD + j, c);
  } else if (side == 1) {
    for (int i = 0; i < kD; ++i)
      for (int c = 0; c < kN; ++c) out(idx++) = y(i * kD + p, c);
  } else if (side == 2) {
    for (int l = 0; l < kD; ++l)
      for (int r = 0; r < kN; ++r) out(idx++) = y(r, p * kD + l);
  } else {
    for (int k = 0; k < kD; ++k)
      for (int r = 0; r < kN; ++r) out(idx++) = y(r, k * kD + p);
  }
}

void scatter(Matrix& y, int side, int p, const Vector& in) {
  int idx = 0;
  if (side == 0) {
    for (int j = 0; j < kD; ++j)
      for (int c = 0; c < kN; ++c) y(p * kD + j, c) = in(idx++);
  } else if (side == 1) {
    for (int i = 0; i < kD; ++i)
      for (int c = 0; c < kN; ++c) y(i * kD + p, c) = in(idx++);
  } else if (side == 2) {
    for (int l = 0; l < kD; ++l)
      for (int r = 0; r < kN; ++r) y(r, p * kD + l) = in(idx++);
  } else {
    for (int k = 0; k < kD; ++k)
      for (int r = 0; r < kN; ++r) y(r, k * kD + p) = in(idx++);
  }
}

void rotate_pair(Matrix& y, int side, int p, int q, double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const cxd e = std::exp(cxd{0.0, phi});
  Vector x(kD * kN), w(kD * kN);
  gather(y, side, p, x);
  gather(y, side, q, w);
  const Vector u = c * x - s * e * w;
  const Vector v = s * std::conj(e) * x + c * w;
  scatter(y, side, p, u);
  scatter(y, side, q, v);
}

double quartic_sum(const Vector& x) {
  double acc = 0.0;
  for (Eigen::Index t = 0; t < x.size(); ++t) {
    const double a = std::norm(x(t));
    acc += a * a;
  }
  return acc;
}

// Per-pair objective: the quartic gain of a rotation by (theta, phi) is
// 2 (F - W) where F = alpha^2 W - 2 alpha beta R(phi) + beta^2 S(phi) on the
// unit circle (alpha, beta) = (cos 2 theta, sin 2 theta). For each phi the
// maximum over theta is the top eigenvalue of a 2x2 form; phi is scanned and
// then refined by bisection on the eigenvalue curve.
struct PairOpt {
  double gain = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

PairOpt best_pair_rotation(const Vector& x, const Vector& w) {
  double W = 0, A = 0, B = 0, C = 0, D = 0, E = 0;
  for (Eigen::Index t = 0; t < x.size(); ++t) {
    const double v = (std::norm(x(t)) - std::norm(w(t))) / 2.0;
    const cxd z = std::conj(x(t)) * w(t);
    W += v * v;
    A += v * z.real();
    B += v * z.imag();
    C += z.real() * z.real();
    D += z.imag() * z.imag();
    E += z.real() * z.imag();
  }
  const auto lam_of = [&](double phi) {
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double r = A * cp - B * sp;
    const double s = C * cp * cp + D * sp * sp - 2.0 * E * cp * sp;
    const double tr = W + s, det = W * s - r * r;
    return tr / 2.0 + std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
  };

  constexpr int kCoarse = 128;
  double best_phi = 0.0, best_lam = -1.0;
  for (int ip = 0; ip < kCoarse; ++ip) {
    const double phi = std::numbers::pi * ip / kCoarse;
    const double lam = lam_of(phi);
    if (lam > best_lam) {
      best_lam = lam;
      best_phi = phi;
    }
  }
  double step = std::numbers::pi / kCoarse;
  for (int it = 0; it < 40; ++it) {
    step /= 2.0;
    for (const double cand : {best_phi - step, best_phi + step}) {
      const double lam = lam_of(cand);
      if (lam > best_lam) {
        best_lam = lam;
        best_phi = cand;
      }
    }
  }

  const double cp = std::cos(best_phi), sp = std::sin(best_phi);
  const double r = A * cp - B * sp;
  const double s = C * cp * cp + D * sp * sp - 2.0 * E * cp * sp;
  const double lam = best_lam;
  double va = r, vb = W - lam;
  if (std::abs(lam - s) > std::abs(vb)) {
    va = lam - s;
    vb = -r;
  }
  const double nv = std::hypot(va, vb);
  PairOpt opt;
  if (nv < 1e-300) return opt;
  opt.gain = lam - W;
  opt.theta = 0.5 * std::atan2(vb / nv, va / nv);
  opt.phi = best_phi;
  return opt;
}

using PairList = std::vector<std::pair<int, int>>;

PairList all_pairs() {
  PairList out;
  for (int p = 0; p < kD; ++p)
    for (int q = p + 1; q < kD; ++q) out.push_back({p, q});
  return out;
}

PairList coordinate_pairs() { return {{0, 1}, {2, 3}, {4, 5}}; }

double ascend(Matrix& y, const PairList& pairs, int max_sweeps, double stop_gain) {
  Vector x(kD * kN), w(kD * kN);
  double total = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double gained = 0.0;
    for (int side = 0; side < 4; ++side)
      for (const auto& [p, q] : pairs) {
        gather(y, side, p, x);
        gather(y, side, q, w);
        const PairOpt opt = best_pair_rotation(x, w);
        if (opt.gain > stop_gain) {
          rotate_pair(y, side, p, q, opt.theta, opt.phi);
          gained += opt.gain;
        }
      }
    total += gained;
    if (gained < stop_gain * 100) break;
  }
  return total;
}

BipartiteOperator reproject(BipartiteOperator u, int triples) {
  // multiples of 3 steps: 2-unitaries sit on period-3 orbits of the map
  for (int r = 0; r < triples; ++r)
    for (int s = 0; s < 3; ++s) u = map_step(u, SingularPolicy::Nearest);
  return u;
}

void warm_anneal(Matrix& y, Rng& rng, int nmoves, double beta0, double beta1,
                 double sigma, int reproject_interval) {
  Vector x(kD * kN), w(kD * kN);
  for (int m = 0; m < nmoves; ++m) {
    const double beta =
        beta0 * std::pow(beta1 / beta0, static_cast<double>(m) / nmoves);
    const int side = rng.uniform_int(4);
    const int p = rng.uniform_int(kD);
    int s = rng.uniform_int(kD - 1);
    if (s >= p) ++s;
    const double theta = rng.gaussian() * sigma;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();

    gather(y, side, p, x);
    gather(y, side, s, w);
    const double before = quartic_sum(x) + quartic_sum(w);
    const double c = std::cos(theta), sn = std::sin(theta);
    const cxd e = std::exp(cxd{0.0, phi});
    const Vector u = c * x - sn * e * w;
    const Vector v = sn * std::conj(e) * x + c * w;
    const double dq = quartic_sum(u) + quartic_sum(v) - before;
    if (dq > 0 || rng.uniform() < std::exp(beta * dq)) {
      scatter(y, side, p, u);
      scatter(y, side, s, v);
    }
    if ((m + 1) % reproject_interval == 0) {
      BipartiteOperator b{kD, y};
      y = reproject(std::move(b), 1).m;
    }
  }
}

// ---- alignment of a converged form to the canonical nine-block frame ----

using Pairing = std::array<std::pair<int, int>, 3>;  // 3 disjoint index pairs

std::optional<Pairing> pairing_of(const std::vector<std::set<int>>& sets) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& s : sets) {
    if (s.size() != 2) return std::nullopt;
    pairs.insert({*s.begin(), *s.rbegin()});
  }
  if (pairs.size() != 3) return std::nullopt;
  std::set<int> used;
  Pairing out;
  int g = 0;
  for (const auto& p : pairs) {
    used.insert(p.first);
    used.insert(p.second);
    out[g++] = p;
  }
  if (used.size() != kD) return std::nullopt;
  return out;
}

// Detected pairings of the tensor factors 0..3 (A,B,C,D) read off the block
// structures of U, U^R and U^Gamma (three- or nine-block forms both qualify).
std::map<int, Pairing> factor_pairings(const BipartiteOperator& u, double tol) {
  std::map<int, Pairing> out;
  const std::array<std::pair<BipartiteOperator, std::array<int, 4>>, 3> views = {{
      {u, {0, 1, 2, 3}},
      {reshuffle(u), {0, 2, 1, 3}},
      {partial_transpose(u), {0, 3, 2, 1}},
  }};
  for (const auto& [m, factors] : views) {
    const BlockReport rep = block_structure_detect(m, tol);
    if (rep.blocks.size() != 3 && rep.blocks.size() != 9) continue;
    for (int pos = 0; pos < 4; ++pos) {
      const int factor = factors[pos];
      if (out.count(factor)) continue;
      std::vector<std::set<int>> sets;
      for (const auto& blk : rep.blocks) {
        const auto& idxs = pos < 2 ? blk.rows : blk.cols;
        std::set<int> vals;
        for (int v : idxs) vals.insert(pos % 2 == 0 ? v / kD : v % kD);
        sets.push_back(std::move(vals));
      }
      if (const auto pr = pairing_of(sets)) out[factor] = *pr;
    }
  }
  return out;
}

std::array<int, kD> pair_permutation(const Pairing& pairs) {
  std::array<int, kD> perm{};
  Pairing sorted_pairs = pairs;
  std::sort(sorted_pairs.begin(), sorted_pairs.end());
  for (int g = 0; g < 3; ++g) {
    perm[sorted_pairs[g].first] = 2 * g;
    perm[sorted_pairs[g].second] = 2 * g + 1;
  }
  return perm;
}

// Basis whose coordinate pairs carry the three 2-planes extracted from the
// gauge-invariant quad operators sum_{cells} Tr_other |row><row|.
std::optional<Matrix> quad_plane_basis(const Matrix& y, const Pairing& pa,
                                       const Pairing& pb, bool c_side) {
  std::vector<Matrix> projs;
  for (const auto& mu : pa)
    for (const auto& nu : pb) {
      Matrix s = Matrix::Zero(kD, kD);
      for (int i : {mu.first, mu.second})
        for (int j : {nu.first, nu.second}) {
          Matrix c(kD, kD);
          for (int k = 0; k < kD; ++k)
            for (int l = 0; l < kD; ++l) c(k, l) = y(i * kD + j, k * kD + l);
          s += c_side ? Matrix(c * c.adjoint()) : Matrix(c.transpose() * c.conjugate());
        }
      const HermitianEig eig = hermitian_eig(s);
      const Matrix plane = eig.v.rightCols(2);
      projs.push_back(plane * plane.adjoint());
    }

  std::vector<std::vector<int>> classes;
  for (int k = 0; k < 9; ++k) {
    bool placed = false;
    for (auto& cls : classes)
      if ((projs[k] * projs[cls.front()]).trace().real() > 1.5) {
        cls.push_back(k);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({k});
  }
  if (classes.size() != 3) return std::nullopt;
  for (const auto& cls : classes)
    if (cls.size() != 3) return std::nullopt;

  Matrix basis(kD, kD);
  for (int g = 0; g < 3; ++g) {
    Matrix acc = Matrix::Zero(kD, kD);
    for (int k : classes[g]) acc += projs[k];
    acc /= 3.0;
    const HermitianEig eig = hermitian_eig(acc);
    if (eig.w(kD - 2) < 0.9 || eig.w(kD - 3) > 0.1) return std::nullopt;
    basis.block(0, 2 * g, kD, 2) = eig.v.rightCols(2);
  }
  if (unitarity_defect(basis) > 1e-8) return std::nullopt;
  return basis;
}

std::optional<BipartiteOperator> align_canonical(const BipartiteOperator& u, double tol) {
  const auto pairings = factor_pairings(u, tol);
  if (!pairings.count(0) || !pairings.count(1)) return std::nullopt;
  const Pairing pa = pairings.at(0), pb = pairings.at(1);

  Matrix uc, ud;
  if (pairings.count(2)) {
    const auto perm = pair_permutation(pairings.at(2));
    uc = Matrix::Zero(kD, kD);
    for (int k = 0; k < kD; ++k) uc(k, perm[k]) = 1.0;
  } else {
    const auto basis = quad_plane_basis(u.m, pa, pb, true);
    if (!basis) return std::nullopt;
    uc = *basis;
  }
  if (pairings.count(3)) {
    const auto perm = pair_permutation(pairings.at(3));
    ud = Matrix::Zero(kD, kD);
    for (int l = 0; l < kD; ++l) ud(l, perm[l]) = 1.0;
  } else {
    const auto basis = quad_plane_basis(u.m, pa, pb, false);
    if (!basis) return std::nullopt;
    ud = *basis;
  }

  // column change of basis on both factors, then row relabelling by the pairs
  const auto perm_a = pair_permutation(pa);
  const auto perm_b = pair_permutation(pb);
  Matrix z = Matrix::Zero(kN, kN);
  const Matrix ucc = uc.conjugate(), udc = ud.conjugate();
  for (int r = 0; r < kN; ++r) {
    Matrix c(kD, kD);
    for (int k = 0; k < kD; ++k)
      for (int l = 0; l < kD; ++l) c(k, l) = u.m(r, k * kD + l);
    const Matrix t = ucc.transpose() * c * udc;
    const int nr = perm_a[r / kD] * kD + perm_b[r % kD];
    for (int m = 0; m < kD; ++m)
      for (int n = 0; n < kD; ++n) z(nr, m * kD + n) = t(m, n);
  }
  return BipartiteOperator{kD, std::move(z)};
}

double bell_worst_of(const BipartiteOperator& u) {
  double worst = 0.0;
  for (const Matrix& c : row_states(u)) worst = std::max(worst, bell_rank_deviation(c));
  return worst;
}

bool nine_blocks_everywhere(const BipartiteOperator& u, double tol) {
  return block_structure_detect(u, tol).uniform(9, 4) &&
         block_structure_detect(reshuffle(u), tol).uniform(9, 4) &&
         block_structure_detect(partial_transpose(u), tol).uniform(9, 4);
}

}  // namespace

PolishResult polish_two_unitary(const BipartiteOperator& u0, const PolishOptions& opt) {
  if (u0.d != kD) throw std::invalid_argument("polish is specific to d = 6");

  PolishResult best;
  best.u = u0;
  best.q4 = support_concentration(u0.m);

  Rng rng(opt.rng_seed);
  constexpr double kAnnealBeta0[] = {30, 10, 60, 30, 100, 20, 50, 40};
  constexpr double kAnnealSigma[] = {0.35, 0.5, 0.25, 0.4, 0.3, 0.45, 0.35, 0.5};

  for (int attempt = 0; attempt < std::max(1, opt.anneal_restarts); ++attempt) {
    Matrix y = u0.m;
    if (attempt > 0)
      warm_anneal(y, rng, opt.anneal_moves / 4 + (opt.anneal_moves / 12) * attempt,
                  kAnnealBeta0[attempt % 8], opt.beta1, kAnnealSigma[attempt % 8],
                  opt.reproject_interval);
    ascend(y, all_pairs(), 200, 1e-12);

    const BipartiteOperator settled{kD, std::move(y)};
    auto aligned = align_canonical(settled, opt.block_tol);
    if (!aligned) {
      const double q = support_concentration(settled.m);
      if (q > best.q4 && !best.structured) {
        best.u = settled;
        best.q4 = q;
        best.restarts_used = attempt + 1;
      }
      continue;
    }

    // squeeze the residual within-pair rotations, settling back onto the
    // 2-unitary manifold in between
    ascend(aligned->m, coordinate_pairs(), 400, 1e-13);
    *aligned = reproject(std::move(*aligned), 20);
    ascend(aligned->m, coordinate_pairs(), 60, 1e-13);
    *aligned = reproject(std::move(*aligned), 40);

    const double q = support_concentration(aligned->m);
    const bool structured = nine_blocks_everywhere(*aligned, opt.block_tol);
    if (structured) {
      best.u = std::move(*aligned);
      best.q4 = q;
      best.structured = true;
      best.restarts_used = attempt + 1;
      break;
    }
    if (q > best.q4 && !best.structured) {
      best.u = std::move(*aligned);
      best.q4 = q;
      best.restarts_used = attempt + 1;
    }
  }

  best.delta = two_unitarity_defect(best.u);
  best.bell_worst = bell_worst_of(best.u);
  return best;
}

}  // namespace multiunit
