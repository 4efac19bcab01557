#include "kfree/certified.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kfree {

namespace {

Real rounding_of(const Real& v) { return abs(v) * rounding_unit(); }

}  // namespace

Real to_real(const BigRational& r) {
  return Real(to_real(numerator(r))) / to_real(denominator(r));
}

Real to_real(const BigInt& n) {
  // mpfr_set_z rounds once, well inside rounding_unit().
  Real out;
  mpfr_set_z(out.backend().data(), n.backend().data(), MPFR_RNDN);
  return out;
}

Real pi_real() { return boost::math::constants::pi<Real>(); }

Real rounding_unit() {
  static const Real unit = pow(Real(10), -static_cast<int>(kWorkingDigits) + 4);
  return unit;
}

CertifiedReal::CertifiedReal(Real value, Real err) : value_(std::move(value)), err_(abs(err)) {}

CertifiedReal CertifiedReal::exact(const BigRational& r) {
  Real v = to_real(r);
  Real e = rounding_of(v);
  return {std::move(v), std::move(e)};
}

CertifiedReal CertifiedReal::exact(long n) { return {Real(n), Real(0)}; }

bool CertifiedReal::contains(const Real& x) const { return abs(x - value_) <= err_; }

bool CertifiedReal::overlaps(const CertifiedReal& other) const {
  return abs(value_ - other.value_) <= err_ + other.err_;
}

CertifiedReal& CertifiedReal::widen(const Real& extra) {
  err_ += abs(extra);
  return *this;
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  Real v = a.value_ + b.value_;
  Real e = a.err_ + b.err_ + rounding_of(v);
  return {std::move(v), std::move(e)};
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  Real v = a.value_ - b.value_;
  Real e = a.err_ + b.err_ + rounding_of(v);
  return {std::move(v), std::move(e)};
}

CertifiedReal operator-(const CertifiedReal& a) { return {-a.value_, a.err_}; }

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  Real v = a.value_ * b.value_;
  Real e = abs(a.value_) * b.err_ + abs(b.value_) * a.err_ + a.err_ * b.err_ + rounding_of(v);
  return {std::move(v), std::move(e)};
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  const Real denom_low = abs(b.value_) - b.err_;
  if (denom_low <= 0) throw std::domain_error("CertifiedReal: division by an enclosure containing zero");
  Real v = a.value_ / b.value_;
  // |a/b - a0/b0| <= (ea + |a0/b0| eb) / (|b0| - eb)
  Real e = (a.err_ + abs(v) * b.err_) / denom_low + rounding_of(v);
  return {std::move(v), std::move(e)};
}

CertifiedReal pow(const CertifiedReal& base, const Real& exponent) {
  const Real low = base.value() - base.err();
  if (low <= 0) throw std::domain_error("CertifiedReal pow: base enclosure must be positive");
  Real v = pow(base.value(), exponent);
  // Mean value bound: |d/db b^x| = |x| b^(x-1), maximised at an interval end.
  const Real high = base.value() + base.err();
  const Real slope = abs(exponent) * std::max(pow(low, exponent - 1), pow(high, exponent - 1));
  Real e = slope * base.err() + rounding_of(v) * 4;
  return {std::move(v), std::move(e)};
}

std::string CertifiedReal::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << value_ << " +/- ";
  os.precision(3);
  os << err_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CertifiedReal& c) { return os << c.to_string(); }

}  // namespace kfree
