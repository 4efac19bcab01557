// Exact elements of Q[1/zeta(k)].

#pragma once

#include <map>
#include <string>

#include "kfree/arith.hpp"
#include "kfree/certified.hpp"

namespace kfree {

/// Finite sum  sum_e c_e * zeta(k)^{-e}  with rational c_e.  Zero
/// coefficients are never stored, so equality is structural.
class ZetaPoly {
 public:
  explicit ZetaPoly(unsigned k);
  static ZetaPoly monomial(unsigned k, unsigned exponent, BigRational coefficient);
  static ZetaPoly constant(unsigned k, BigRational value) { return monomial(k, 0, std::move(value)); }

  unsigned k() const { return k_; }
  const std::map<unsigned, BigRational>& terms() const { return terms_; }
  BigRational coefficient(unsigned exponent) const;
  bool is_zero() const { return terms_.empty(); }
  /// Largest exponent present; zero for constants and the zero element.
  unsigned degree() const;

  ZetaPoly& operator+=(const ZetaPoly& other);
  ZetaPoly& operator-=(const ZetaPoly& other);
  ZetaPoly& operator*=(const BigRational& scalar);

  friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
  friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
  friend ZetaPoly operator*(ZetaPoly a, const BigRational& s) { return a *= s; }
  friend ZetaPoly operator*(const BigRational& s, ZetaPoly a) { return a *= s; }
  friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b);
  friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) = default;

  /// Numeric value given an enclosure of zeta(k).
  CertifiedReal evaluate(const CertifiedReal& zeta_k) const;

  /// e.g. "49 - 140*Z^-1 + 100*Z^-2" with Z = zeta(k).
  std::string to_string() const;

 private:
  void check_same_k(const ZetaPoly& other) const;
  void add_term(unsigned exponent, const BigRational& c);

  unsigned k_;
  std::map<unsigned, BigRational> terms_;
};

}  // namespace kfree
