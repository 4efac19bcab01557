// High-precision reals with a rigorous absolute error radius.

#pragma once

#include <iosfwd>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "kfree/arith.hpp"

namespace kfree {

/// Working precision in decimal digits.  Requested precisions above
/// kMaxPrecisionDigits are rejected.
inline constexpr unsigned kWorkingDigits = 100;
inline constexpr unsigned kMaxPrecisionDigits = 90;
inline constexpr unsigned kDefaultPrecisionDigits = 60;

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kWorkingDigits>,
                                           boost::multiprecision::et_off>;

Real to_real(const BigRational& r);
Real to_real(const BigInt& n);
Real pi_real();

/// Relative size of one rounding in the working precision (with headroom).
Real rounding_unit();

/// Value paired with an absolute error bound: the true quantity lies in
/// [value - err, value + err].  Arithmetic widens err to cover both the input
/// radii and one working-precision rounding per operation.
class CertifiedReal {
 public:
  CertifiedReal() = default;
  CertifiedReal(Real value, Real err);
  /// Exact inputs carry only the rounding of the conversion.
  static CertifiedReal exact(const BigRational& r);
  static CertifiedReal exact(long n);

  const Real& value() const { return value_; }
  const Real& err() const { return err_; }
  double to_double() const { return value_.convert_to<double>(); }
  double err_double() const { return err_.convert_to<double>(); }

  Real lower() const { return value_ - err_; }
  Real upper() const { return value_ + err_; }
  bool contains(const Real& x) const;
  /// True when the two enclosures intersect.
  bool overlaps(const CertifiedReal& other) const;

  CertifiedReal& widen(const Real& extra);

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  /// Throws std::domain_error when the divisor enclosure contains zero.
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a);

  std::string to_string(int digits = 20) const;

 private:
  Real value_ = 0;
  Real err_ = 0;
};

CertifiedReal pow(const CertifiedReal& base, const Real& exponent);

std::ostream& operator<<(std::ostream& os, const CertifiedReal& c);

}  // namespace kfree
