#include "multiunit/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace multiunit {

namespace {

// x^k = x^{k-4} - x^{k-8} + x^{k-12} - x^{k-16} for k >= 16
void reduce_in_place(std::vector<Rational>& c) {
  for (int k = static_cast<int>(c.size()) - 1; k >= 16; --k) {
    if (c[k] == 0) continue;
    const Rational t = c[k];
    c[k] = 0;
    c[k - 4] += t;
    c[k - 8] -= t;
    c[k - 12] += t;
    c[k - 16] -= t;
  }
  c.resize(16);
}

std::vector<Rational> phi40() {
  std::vector<Rational> p(17, Rational(0));
  p[0] = 1;
  p[4] = -1;
  p[8] = 1;
  p[12] = -1;
  p[16] = 1;
  return p;
}

int degree(const std::vector<Rational>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// polynomial division with remainder over Q
void divmod(std::vector<Rational> num, const std::vector<Rational>& den,
            std::vector<Rational>& quot, std::vector<Rational>& rem) {
  const int dd = degree(den);
  quot.assign(num.size(), Rational(0));
  while (true) {
    const int dn = degree(num);
    if (dn < dd) break;
    const Rational f = num[dn] / den[dd];
    quot[dn - dd] += f;
    for (int i = 0; i <= dd; ++i) num[dn - dd + i] -= f * den[i];
    num[dn] = 0;  // cancel exactly
  }
  rem = std::move(num);
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a,
                               const std::vector<Rational>& b) {
  const int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {Rational(0)};
  std::vector<Rational> out(da + db + 1, Rational(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= db; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rational> poly_sub(std::vector<Rational> a, const std::vector<Rational>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

CycNumber CycNumber::from_rational(const Rational& r) {
  CycNumber x;
  x.c_[0] = r;
  return x;
}

CycNumber CycNumber::zeta_pow(long k) {
  k %= 40;
  if (k < 0) k += 40;
  std::vector<Rational> c(k + 1, Rational(0));
  c[k] = 1;
  reduce_in_place(c);
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = c[i];
  return x;
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = c_[i] + o.c_[i];
  return x;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = c_[i] - o.c_[i];
  return x;
}

CycNumber CycNumber::operator-() const {
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = -c_[i];
  return x;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
  std::vector<Rational> c(31, Rational(0));
  for (int i = 0; i < 16; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < 16; ++j) c[i + j] += c_[i] * o.c_[j];
  }
  reduce_in_place(c);
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = c[i];
  return x;
}

CycNumber CycNumber::scaled(const Rational& r) const {
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = c_[i] * r;
  return x;
}

CycNumber CycNumber::conj() const {
  CycNumber x = from_rational(c_[0]);
  for (int j = 1; j < 16; ++j) {
    if (c_[j] == 0) continue;
    x = x + zeta_pow(40 - j).scaled(c_[j]);
  }
  return x;
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
  // extended Euclid: s*f + t*Phi40 = gcd = const
  std::vector<Rational> r0 = phi40();
  std::vector<Rational> r1(c_.begin(), c_.end());
  std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};  // coefficients of f
  while (degree(r1) > 0) {
    std::vector<Rational> q, rem;
    divmod(r0, r1, q, rem);
    std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const int dr = degree(r1);
  if (dr != 0)
    throw DivisionByZero("element shares a factor with Phi40");  // cannot happen: Phi40 irreducible
  const Rational g = r1[0];
  for (Rational& v : s1) v /= g;
  s1.resize(31, Rational(0));
  reduce_in_place(s1);
  CycNumber x;
  for (int i = 0; i < 16; ++i) x.c_[i] = s1[i];
  return x;
}

bool CycNumber::is_zero() const {
  for (const Rational& v : c_)
    if (v != 0) return false;
  return true;
}

std::complex<double> CycNumber::embed() const {
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < 16; ++j) {
    if (c_[j] == 0) continue;
    const double coeff = static_cast<double>(c_[j]);
    const double arg = std::numbers::pi * j / 20.0;
    acc += coeff * std::complex<double>{std::cos(arg), std::sin(arg)};
  }
  return acc;
}

std::string CycNumber::to_string() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < 16; ++i) out << (i ? ", " : "") << c_[i];
  out << "]";
  return out.str();
}

const GoldenConstants& golden_constants() {
  static const GoldenConstants gc = [] {
    GoldenConstants g;
    g.omega = CycNumber::zeta_pow(2);
    g.sqrt2 = CycNumber::zeta_pow(5) + CycNumber::zeta_pow(35);
    g.sqrt5 = (CycNumber::zeta_pow(8) + CycNumber::zeta_pow(32)).scaled(2) +
              CycNumber::one();
    g.a = (g.sqrt2 * (g.omega + g.omega.conj())).inverse();
    g.b = (g.sqrt2 * (g.omega * g.omega * g.omega +
                      (g.omega * g.omega * g.omega).conj()))
              .inverse();
    g.c = g.sqrt2.inverse();
    g.phi = (CycNumber::one() + g.sqrt5).scaled(Rational(1, 2));

    auto check = [](bool ok, const char* what) {
      if (!ok) throw std::logic_error(std::string("golden constant invariant: ") + what);
    };
    check(g.sqrt2 * g.sqrt2 == CycNumber::from_rational(2), "sqrt2^2 = 2");
    check(g.sqrt5 * g.sqrt5 == CycNumber::from_rational(5), "sqrt5^2 = 5");
    CycNumber w10 = CycNumber::one();
    for (int i = 0; i < 10; ++i) w10 = w10 * g.omega;
    check(w10 == -CycNumber::one(), "omega^10 = -1");
    check(w10 * w10 == CycNumber::one(), "omega^20 = 1");
    const CycNumber half = CycNumber::from_rational(Rational(1, 2));
    check(g.a * g.a + g.b * g.b == half, "a^2 + b^2 = 1/2");
    check(g.c * g.c == half, "c^2 = 1/2");
    check(g.b == g.a * g.phi, "b = a phi");
    return g;
  }();
  return gc;
}

CycNumber omega_pow(long k) {
  k %= 20;
  if (k < 0) k += 20;
  return CycNumber::zeta_pow(2 * k);
}

std::vector<RelationResult> verify_constellations() {
  const GoldenConstants& g = golden_constants();
  const CycNumber a = g.a, b = g.b, c = g.c;
  auto w = [](long k) { return omega_pow(k); };

  std::vector<std::pair<std::string, CycNumber>> rels;
  const CycNumber ab = a * b;
  rels.emplace_back("bc (1 - 1)", b * c * (CycNumber::one() - CycNumber::one()));
  rels.emplace_back("a^2 (w^8 + w^-8) + b^2 (w^4 + w^-4)",
                    a * a * (w(8) + w(-8)) + b * b * (w(4) + w(-4)));
  rels.emplace_back("ab (1 + w^2 + w^-8 - 1)",
                    ab * (CycNumber::one() + w(2) + w(-8) - CycNumber::one()));
  rels.emplace_back("ab (w^-2 + w^2 + w^-8 + w^8)",
                    ab * (w(-2) + w(2) + w(-8) + w(8)));
  rels.emplace_back("ab (1 - 1)", ab * (CycNumber::one() - CycNumber::one()));
  rels.emplace_back("ab (w^2 + w^-8)", ab * (w(2) + w(-8)));
  rels.emplace_back("a^2 w^4 + ab (w^10 + w^4) + b^2 w^-4",
                    a * a * w(4) + ab * (w(10) + w(4)) + b * b * w(-4));
  rels.emplace_back("a^2 w^-3 + ab (w^5 + w^3) + b^2 w^-7",
                    a * a * w(-3) + ab * (w(5) + w(3)) + b * b * w(-7));
  rels.emplace_back("ab (w^-4 + w^-6) + bc w^5", ab * (w(-4) + w(-6)) + b * c * w(5));
  rels.emplace_back("ab (w^-8 + w^-2) + ac w^5", ab * (w(-8) + w(-2)) + a * c * w(5));
  rels.emplace_back("a^2 + b^2 w^4 + bc w^-7", a * a + b * b * w(4) + b * c * w(-7));

  std::vector<RelationResult> out;
  int idx = 0;
  for (auto& [expr, residue] : rels) {
    RelationResult r;
    ++idx;
    r.id = "C" + std::string(idx < 10 ? "0" : "") + std::to_string(idx);
    r.expression = expr;
    r.exact_zero = residue.is_zero();
    r.residue = std::move(residue);
    out.push_back(std::move(r));
  }
  return out;
}

BlockVResult verify_block_v() {
  const GoldenConstants& g = golden_constants();
  const CycNumber z = CycNumber::zero();
  const std::array<std::array<CycNumber, 4>, 4> v = {{
      {g.a, g.a, g.b, g.b},
      {z, z, g.c, -g.c},
      {g.c, -g.c, z, z},
      {g.b, g.b, -g.a, -g.a},
  }};
  BlockVResult res;
  res.pass = true;
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      CycNumber acc = CycNumber::zero();
      for (int t = 0; t < 4; ++t) acc = acc + v[r][t] * v[s][t].conj();
      if (r == s) acc = acc - CycNumber::one();
      if (!acc.is_zero()) {
        res.pass = false;
        res.failures.push_back("(" + std::to_string(r + 1) + "," +
                               std::to_string(s + 1) + "): " + acc.to_string());
      }
    }
  return res;
}

}  // namespace multiunit
