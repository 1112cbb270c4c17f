#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "cyclo/bigint.hpp"

namespace cyclo {

/// Finitely generated abelian group Z^free_rank + (torsion in elementary
/// divisor form). Divisors are keyed by (prime, exponent) so iteration is in
/// canonical order.
class AbelianGroupDesc {
 public:
  using DivisorMap = std::map<BigInt, std::map<std::uint64_t, BigInt>>;

  std::uint64_t free_rank = 0;

  void add_divisor(const BigInt& prime, std::uint64_t exponent, const BigInt& multiplicity) {
    if (exponent == 0 || multiplicity == 0) return;
    divisors_[prime][exponent] += multiplicity;
  }

  /// Adds Z/nZ, splitting n into prime powers. Units are ignored.
  void add_cyclic(const BigInt& n) {
    if (n == 1) return;
    for (const auto& [prime, exp] : factorize(abs(n))) add_divisor(prime, exp, 1);
  }
  void add_cyclic(const Factorization& f, const BigInt& multiplicity = 1) {
    for (const auto& [prime, exp] : f) add_divisor(prime, exp, multiplicity);
  }

  const DivisorMap& divisors() const { return divisors_; }

  /// Exponent -> multiplicity for one prime (empty when the prime is absent).
  std::map<std::uint64_t, BigInt> primary_part(const BigInt& prime) const {
    auto it = divisors_.find(prime);
    return it == divisors_.end() ? std::map<std::uint64_t, BigInt>{} : it->second;
  }

  Factorization order_factorization() const {
    Factorization f;
    for (const auto& [prime, part] : divisors_) {
      BigInt e = 0;
      for (const auto& [exp, mult] : part) e += mult * from_u64(exp);
      f[prime] = to_u64(e);
    }
    return f;
  }

  /// Order of the torsion subgroup. Only sensible for moderate orders.
  BigInt torsion_order() const { return product(order_factorization()); }

  /// alpha_1 | alpha_2 | ... for the torsion part (no unit entries).
  /// Throws BoundExceeded when the number of cyclic factors is huge.
  std::vector<BigInt> invariant_factors(std::uint64_t max_factors = 1'000'000) const {
    BigInt longest = 0;
    for (const auto& [prime, part] : divisors_) {
      BigInt c = 0;
      for (const auto& [exp, mult] : part) c += mult;
      longest = std::max(longest, c);
    }
    if (longest > from_u64(max_factors))
      throw Error(ErrorCode::BoundExceeded, "too many cyclic factors to list invariant factors");
    const std::size_t len = to_u64(longest);
    std::vector<BigInt> out(len, 1);
    for (const auto& [prime, part] : divisors_) {
      // Largest powers go to the last invariant factors.
      std::size_t pos = len;
      for (auto it = part.rbegin(); it != part.rend(); ++it)
        for (std::uint64_t m = 0; m < to_u64(it->second); ++m) out[--pos] *= big_pow(prime, it->first);
    }
    return out;
  }

  friend bool operator==(const AbelianGroupDesc& a, const AbelianGroupDesc& b) {
    return a.free_rank == b.free_rank && a.divisors_ == b.divisors_;
  }

 private:
  DivisorMap divisors_;
};

/// Canonical text form: one class per line, "Z x r" then "prime^exp x mult".
inline std::ostream& operator<<(std::ostream& os, const AbelianGroupDesc& g) {
  if (g.free_rank) os << "Z x " << g.free_rank << '\n';
  for (const auto& [prime, part] : g.divisors())
    for (const auto& [exp, mult] : part) os << prime << '^' << exp << " x " << mult << '\n';
  return os;
}

}  // namespace cyclo
