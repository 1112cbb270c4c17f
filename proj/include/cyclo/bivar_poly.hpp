#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

#include "cyclo/bigint.hpp"

namespace cyclo {

/// Sparse polynomial in x, y with integer coefficients; zero terms are never
/// stored.
class BivarPoly {
 public:
  using Exponents = std::pair<std::uint32_t, std::uint32_t>;

  BivarPoly() = default;
  BivarPoly(long c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_[{0, 0}] = c;
  }
  static BivarPoly constant(const BigInt& c) { return monomial(c, 0, 0); }
  static BivarPoly monomial(const BigInt& c, std::uint32_t a, std::uint32_t b) {
    BivarPoly r;
    if (c != 0) r.terms_[{a, b}] = c;
    return r;
  }
  static BivarPoly x() { return monomial(1, 1, 0); }
  static BivarPoly y() { return monomial(1, 0, 1); }

  const std::map<Exponents, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of x^a y^b.
  BigInt coeff(std::uint32_t a, std::uint32_t b) const {
    const auto it = terms_.find({a, b});
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  BivarPoly& operator+=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }
  BivarPoly& operator-=(const BivarPoly& o) {
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }
  BivarPoly& operator*=(const BigInt& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator-(BivarPoly a) { return a *= BigInt(-1); }
  friend BivarPoly operator*(BivarPoly a, const BigInt& s) { return a *= s; }
  friend BivarPoly operator*(const BigInt& s, BivarPoly a) { return a *= s; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.accumulate({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
  }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

 private:
  void accumulate(const Exponents& e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Exponents, BigInt> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const BivarPoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    os << (first ? "" : " + ") << c;
    if (e.first) os << "*x^" << e.first;
    if (e.second) os << "*y^" << e.second;
    first = false;
  }
  return os;
}

}  // namespace cyclo
