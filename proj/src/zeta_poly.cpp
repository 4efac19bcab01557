#include "kfree/zeta_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace kfree {

ZetaPoly::ZetaPoly(unsigned k) : k_(k) {
  if (k < 2) throw std::invalid_argument("ZetaPoly: k must be at least 2");
}

ZetaPoly ZetaPoly::monomial(unsigned k, unsigned exponent, BigRational coefficient) {
  ZetaPoly p(k);
  p.add_term(exponent, coefficient);
  return p;
}

BigRational ZetaPoly::coefficient(unsigned exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigRational(0) : it->second;
}

unsigned ZetaPoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

void ZetaPoly::check_same_k(const ZetaPoly& other) const {
  if (k_ != other.k_) throw std::invalid_argument("ZetaPoly: mixing different k");
}

void ZetaPoly::add_term(unsigned exponent, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ZetaPoly& ZetaPoly::operator+=(const ZetaPoly& other) {
  check_same_k(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

ZetaPoly& ZetaPoly::operator-=(const ZetaPoly& other) {
  check_same_k(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

ZetaPoly& ZetaPoly::operator*=(const BigRational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
  a.check_same_k(b);
  ZetaPoly out(a.k_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

CertifiedReal ZetaPoly::evaluate(const CertifiedReal& zeta_k) const {
  const CertifiedReal inv = CertifiedReal::exact(1) / zeta_k;
  CertifiedReal acc = CertifiedReal::exact(0);
  // Horner from the top exponent down.
  for (unsigned e = degree() + 1; e-- > 0;) {
    acc = acc * inv + CertifiedReal::exact(coefficient(e));
  }
  return acc;
}

std::string ZetaPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const BigRational mag = negative ? BigRational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << "Z^-" << e;
    }
  }
  return os.str();
}

}  // namespace kfree
