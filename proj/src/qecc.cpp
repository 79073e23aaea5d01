#include "multiunit/qecc.hpp"

#include <cmath>
#include <numbers>

#include "multiunit/metrics.hpp"

namespace multiunit {

std::vector<ErrorOperator> weyl_basis(int d, int weight, int num_sites) {
  if (d < 2) throw std::invalid_argument("weyl_basis: d >= 2");
  if (weight < 1 || weight > num_sites)
    throw std::invalid_argument("weyl_basis: weight out of range");

  std::vector<std::vector<int>> site_sets;
  std::vector<int> pick;
  // lexicographic site combinations
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == weight) {
      site_sets.push_back(pick);
      return;
    }
    for (int s = start; s < num_sites; ++s) {
      pick.push_back(s);
      self(self, s + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);

  std::vector<ErrorOperator> out;
  for (const auto& sites : site_sets) {
    std::vector<int> labels(weight, 1);  // label = alpha*d + beta in 1..d^2-1
    while (true) {
      ErrorOperator op;
      for (int q = 0; q < weight; ++q)
        op.factors.push_back({sites[q], labels[q] / d, labels[q] % d});
      out.push_back(std::move(op));
      int q = weight - 1;
      while (q >= 0 && labels[q] == d * d - 1) labels[q--] = 1;
      if (q < 0) break;
      ++labels[q];
    }
  }
  return out;
}

Matrix weyl_matrix(int d, int alpha, int beta) {
  // X |m> = |m-1> so that X Z = eta Z X
  Matrix m = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col)
    m((col - alpha % d + d) % d, col) =
        std::exp(cxd{0.0, 2.0 * std::numbers::pi * beta * col / d});
  return m;
}

Vector encode(int i, const Tensor4& t) {
  const int d = t.d;
  if (i < 0 || i >= d) throw std::invalid_argument("encode: basis index out of range");
  Vector v(d * d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) v((j * d + k) * d + l) = t.at(i, j, k, l) * norm;
  return v;
}

Vector encode_vector(const Vector& input, const Tensor4& t) {
  const int d = t.d;
  if (input.size() != d) throw std::invalid_argument("encode_vector: input must be length d");
  Vector v = Vector::Zero(d * d * d);
  for (int i = 0; i < d; ++i)
    if (input(i) != cxd{0.0, 0.0}) v += input(i) * encode(i, t);
  return v;
}

double CodeSpace::gram_deviation() const {
  const Matrix g = words * words.adjoint();
  return (g - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

CodeSpace shorten_code(const Tensor4& t, double delta_tol) {
  const BipartiteOperator u = flatten(t, Cut::AB_CD);
  const double delta = two_unitarity_defect(u);
  if (delta > delta_tol)
    throw NotTwoUnitary("two-unitarity defect " + std::to_string(delta));
  CodeSpace code;
  code.d = t.d;
  code.words.resize(t.d, t.d * t.d * t.d);
  for (int i = 0; i < t.d; ++i) code.words.row(i) = encode(i, t).transpose();
  return code;
}

namespace {

// phase and target of E|basis state>; E = prod X^alpha Z^beta on its sites.
// Site index order within a 3- or 4-site flat index is most-significant = site 0.
struct SiteAction {
  int site;
  int alpha;
  int beta;
};

// applies E to column index "flat" over num_sites sites of dimension d:
// X^a Z^b |m> = eta^{b m} |m + a>
void apply_action(int d, int num_sites, const std::vector<SiteAction>& actions, int flat,
                  int& target, double& phase_angle) {
  target = flat;
  phase_angle = 0.0;
  for (const auto& act : actions) {
    const int shift_pow = num_sites - 1 - act.site;
    int div = 1;
    for (int s = 0; s < shift_pow; ++s) div *= d;
    const int m = (flat / div) % d;
    phase_angle += 2.0 * std::numbers::pi * act.beta * m / d;
    const int m2 = (m - act.alpha % d + d) % d;
    target += (m2 - m) * div;
  }
}

std::vector<SiteAction> actions_of(const ErrorOperator& e) {
  std::vector<SiteAction> a;
  for (const auto& f : e.factors) a.push_back({f.site, f.alpha, f.beta});
  return a;
}

}  // namespace

KlReport kl_check(const CodeSpace& code, const std::vector<ErrorOperator>& errors,
                  double tol, int jobs) {
  const int d = code.d;
  const int dim = d * d * d;
  KlReport rep;
  rep.checked = static_cast<int>(errors.size());

  std::vector<double> offdiag(errors.size(), 0.0), spread(errors.size(), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs > 1 ? jobs : 1) if (jobs > 1)
#endif
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(errors.size()); ++idx) {
    const auto actions = actions_of(errors[idx]);
    Matrix g = Matrix::Zero(d, d);
    for (int col = 0; col < dim; ++col) {
      int target;
      double angle;
      apply_action(d, 3, actions, col, target, angle);
      const cxd phase = std::exp(cxd{0.0, angle});
      for (int wi = 0; wi < d; ++wi)
        for (int wj = 0; wj < d; ++wj)
          g(wi, wj) += std::conj(code.words(wi, target)) * phase * code.words(wj, col);
    }
    const cxd c_e = g.trace() / static_cast<double>(d);
    double od = 0.0, sp = 0.0;
    for (int wi = 0; wi < d; ++wi)
      for (int wj = 0; wj < d; ++wj) {
        if (wi == wj)
          sp = std::max(sp, std::abs(g(wi, wj) - c_e));
        else
          od = std::max(od, std::abs(g(wi, wj)));
      }
    offdiag[idx] = od;
    spread[idx] = sp;
  }

  for (size_t i = 0; i < errors.size(); ++i) {
    rep.worst_offdiag = std::max(rep.worst_offdiag, offdiag[i]);
    rep.worst_spread = std::max(rep.worst_spread, spread[i]);
  }
  rep.pass = rep.worst_offdiag <= tol && rep.worst_spread <= tol;
  return rep;
}

PureCodeReport pure_code_check(const FourPartyState& psi, int max_weight, double tol,
                               int jobs) {
  if (max_weight < 1 || max_weight > 2)
    throw std::invalid_argument("pure_code_check: max_weight must be 1 or 2");
  const int d = psi.d;
  const int dim = d * d * d * d;

  std::vector<ErrorOperator> errors = weyl_basis(d, 1, 4);
  if (max_weight == 2) {
    // independent site pairs {A,B}, {A,C}, {A,D}
    for (int other = 1; other <= 3; ++other)
      for (int l1 = 1; l1 < d * d; ++l1)
        for (int l2 = 1; l2 < d * d; ++l2) {
          ErrorOperator op;
          op.factors.push_back({0, l1 / d, l1 % d});
          op.factors.push_back({other, l2 / d, l2 % d});
          errors.push_back(std::move(op));
        }
  }

  PureCodeReport rep;
  rep.checked = static_cast<int>(errors.size());
  std::vector<double> vals(errors.size(), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs > 1 ? jobs : 1) if (jobs > 1)
#endif
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(errors.size()); ++idx) {
    const auto actions = actions_of(errors[idx]);
    cxd acc{0.0, 0.0};
    for (int col = 0; col < dim; ++col) {
      int target;
      double angle;
      apply_action(d, 4, actions, col, target, angle);
      acc += std::conj(psi.amp(target)) * std::exp(cxd{0.0, angle}) * psi.amp(col);
    }
    vals[idx] = std::abs(acc);
  }

  for (double v : vals) rep.worst = std::max(rep.worst, v);
  rep.pass = rep.worst <= tol;
  return rep;
}

}  // namespace multiunit
