#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

namespace multiunit {

using Rational = boost::multiprecision::cpp_rational;

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

// Element of the 40th cyclotomic field in the power basis zeta^0..zeta^15,
// zeta a primitive 40th root of unity, reduced modulo
// Phi_40(x) = x^16 - x^12 + x^8 - x^4 + 1. All arithmetic is exact.
class CycNumber {
 public:
  CycNumber() = default;

  static CycNumber zero() { return {}; }
  static CycNumber one() { return from_rational(1); }
  static CycNumber from_rational(const Rational& r);
  // zeta^k for any integer k (mod 40), reduced.
  static CycNumber zeta_pow(long k);

  const std::array<Rational, 16>& coeffs() const { return c_; }
  Rational& coeff(int i) { return c_[i]; }

  CycNumber operator+(const CycNumber& o) const;
  CycNumber operator-(const CycNumber& o) const;
  CycNumber operator-() const;
  CycNumber operator*(const CycNumber& o) const;
  CycNumber scaled(const Rational& r) const;

  // zeta -> zeta^{-1}
  CycNumber conj() const;
  // exact inverse by extended polynomial gcd against Phi_40
  CycNumber inverse() const;

  bool is_zero() const;
  bool operator==(const CycNumber& o) const { return c_ == o.c_; }

  // numeric embedding zeta -> exp(i pi / 20)
  std::complex<double> embed() const;

  // coefficient vector as "[c0, c1, ..., c15]"
  std::string to_string() const;

 private:
  std::array<Rational, 16> c_{};
};

inline CycNumber cyc_add(const CycNumber& x, const CycNumber& y) { return x + y; }
inline CycNumber cyc_mul(const CycNumber& x, const CycNumber& y) { return x * y; }
inline CycNumber cyc_conj(const CycNumber& x) { return x.conj(); }
inline CycNumber cyc_inv(const CycNumber& x) { return x.inverse(); }

struct GoldenConstants {
  CycNumber omega;  // zeta^2 = exp(i pi / 10)
  CycNumber sqrt2;  // zeta^5 + zeta^35
  CycNumber sqrt5;  // 2 (zeta^8 + zeta^32) + 1
  CycNumber a;      // (sqrt2 (omega + conj omega))^{-1}
  CycNumber b;      // (sqrt2 (omega^3 + conj omega^3))^{-1}
  CycNumber c;      // 1 / sqrt2
  CycNumber phi;    // (1 + sqrt5) / 2
};

// Built once; every invariant (omega^20 = 1, omega^10 = -1, a^2 + b^2 = c^2
// = 1/2, b = a phi) is checked exactly at construction.
const GoldenConstants& golden_constants();

// omega^k with any integer exponent (omega has order 20).
CycNumber omega_pow(long k);

struct RelationResult {
  std::string id;
  std::string expression;
  CycNumber residue;
  bool exact_zero = false;
};

// The eleven row-orthogonality relations of the golden construction; every
// residue must be the exact zero element.
std::vector<RelationResult> verify_constellations();

struct BlockVResult {
  bool pass = false;
  std::vector<std::string> failures;  // "(r,c): residue" for nonzero Gram entries
};

// V V^dag = I, entry by entry, for the 4x4 block
// V = [[a,a,b,b],[0,0,c,-c],[c,-c,0,0],[b,b,-a,-a]].
BlockVResult verify_block_v();

}  // namespace multiunit
