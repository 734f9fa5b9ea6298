#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace acceptcert {

using Rational = mpq_class;

class ExactAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mixed-conductor arithmetic embeds into the lcm of the operands; results
/// whose conductor would exceed this cap raise ExactAlgebraError.
inline constexpr int kConductorCap = 240;

long euler_phi(long n);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomic_polynomial(int n);

/// An element of the cyclotomic field Q(zeta_n), stored in the power basis
/// 1, zeta_n, ..., zeta_n^(phi(n)-1) reduced modulo Phi_n.
///
/// Values are always kept at their minimal conductor (never 2 mod 4), so two
/// CycNums are equal exactly when their conductor and coefficient vectors are.
/// The total order compares (conductor, coefficients) lexicographically; it is
/// not a numeric order and exists for canonical representatives only.
class CycNum {
 public:
  CycNum();
  CycNum(long value);  // NOLINT(google-explicit-constructor)
  explicit CycNum(const Rational& value);

  /// Reduces the polynomial sum coeffs[k] * zeta_n^k modulo Phi_n.
  static CycNum make(int conductor, const std::vector<Rational>& coeffs);
  static CycNum zeta(int n, long k = 1);
  static CycNum i() { return zeta(4); }
  /// cos(2 pi k / m) and sin(2 pi k / m).
  static CycNum cos2pi(long k, int m);
  static CycNum sin2pi(long k, int m);
  /// sqrt(2) = zeta_8 + zeta_8^-1.
  static CycNum sqrt2();

  int conductor() const { return conductor_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Coefficient vector of this value inside Q(zeta_n); n must be a multiple
  /// of conductor().
  std::vector<Rational> coeffs_at(int n) const;

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return conductor_ == 1; }
  Rational to_rational() const;

  CycNum conj() const;
  /// The automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1, with n = conductor().
  CycNum galois(long k) const;
  CycNum inverse() const;
  CycNum pow(long e) const;
  bool is_real() const { return conj() == *this; }
  /// Real and imaginary parts, (x + conj x)/2 and (x - conj x)/(2i).
  CycNum real_part() const;
  CycNum imag_part() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend std::strong_ordering operator<=>(const CycNum& a, const CycNum& b);

  std::size_t hash() const;
  std::string to_string() const;

  nlohmann::ordered_json to_json() const;
  static CycNum from_json(const nlohmann::ordered_json& j);

 private:
  CycNum(int conductor, std::vector<Rational> coeffs, bool canonical);
  void canonicalize();

  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

/// Thin wrappers matching the operation names used in the docs.
CycNum cyc_make(int conductor, const std::vector<Rational>& coeffs);
/// Value-preserving embedding; the result compares equal to x. Use
/// CycNum::coeffs_at to see the coordinates in the larger field.
CycNum cyc_embed(const CycNum& x, int new_conductor);

Rational parse_rational(const std::string& s);

}  // namespace acceptcert

template <>
struct std::hash<acceptcert::CycNum> {
  std::size_t operator()(const acceptcert::CycNum& x) const { return x.hash(); }
};
