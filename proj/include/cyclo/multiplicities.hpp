#pragma once

#include <cstdint>
#include <map>
#include <ostream>

#include "cyclo/bigint.hpp"

namespace cyclo {

/// Multiplicities e_j of p^j as p-elementary divisors, with e_0 the p-rank
/// of the Laplacian. Zero multiplicities are never stored.
class PMultiplicities {
 public:
  PMultiplicities() = default;

  void set(std::uint64_t j, const BigInt& e) {
    if (e < 0) throw Error(ErrorCode::ConservationViolation, "negative multiplicity for p^" + std::to_string(j));
    if (e == 0)
      e_.erase(j);
    else
      e_[j] = e;
  }
  void add(std::uint64_t j, const BigInt& e) { set(j, get(j) + e); }

  BigInt get(std::uint64_t j) const {
    auto it = e_.find(j);
    return it == e_.end() ? BigInt(0) : it->second;
  }
  BigInt operator[](std::uint64_t j) const { return get(j); }

  const std::map<std::uint64_t, BigInt>& entries() const { return e_; }
  std::uint64_t max_exponent() const { return e_.empty() ? 0 : e_.rbegin()->first; }

  /// sum_j e_j
  BigInt count() const {
    BigInt s = 0;
    for (const auto& [j, e] : e_) s += e;
    return s;
  }
  /// sum_j j e_j, the p-adic valuation of the torsion order.
  BigInt weighted() const {
    BigInt s = 0;
    for (const auto& [j, e] : e_) s += e * from_u64(j);
    return s;
  }

  friend bool operator==(const PMultiplicities& a, const PMultiplicities& b) { return a.e_ == b.e_; }

 private:
  std::map<std::uint64_t, BigInt> e_;
};

inline std::ostream& operator<<(std::ostream& os, const PMultiplicities& m) {
  os << '{';
  bool first = true;
  for (const auto& [j, e] : m.entries()) {
    os << (first ? "" : ", ") << "e_" << j << ": " << e;
    first = false;
  }
  return os << '}';
}

}  // namespace cyclo
