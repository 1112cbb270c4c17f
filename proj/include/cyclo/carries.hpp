#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "cyclo/multiplicities.hpp"
#include "cyclo/parallel.hpp"
#include "cyclo/params.hpp"

namespace cyclo {

/// Default bound on k for enumerating min profiles.
inline constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 24;

/// Base-p expansion of a nonzero residue modulo q - 1, least significant
/// digit first, padded to (ell-1)t digits.
struct DigitVec {
  std::vector<std::uint32_t> digits;
  std::uint64_t value = 0;

  std::uint64_t digit_sum() const {
    std::uint64_t s = 0;
    for (auto d : digits) s += d;
    return s;
  }
};

/// Digit and carry arithmetic modulo q - 1 for a fixed (p, ell, t).
class CarryEngine {
 public:
  explicit CarryEngine(const Params& prm)
      : p_(prm.p()), n_(prm.degree()), ell_(prm.ell()), modulus_(to_u64(prm.q() - 1)), k_(to_u64(prm.k())) {
    if (modulus_ >= (std::uint64_t{1} << 62)) throw Error(ErrorCode::BoundExceeded, "q too large for carry arithmetic");
  }

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t k() const { return k_; }

  /// Representative in [0, q-2].
  std::uint64_t reduce(std::int64_t a) const {
    const auto m = static_cast<std::int64_t>(modulus_);
    return static_cast<std::uint64_t>(((a % m) + m) % m);
  }

  DigitVec digits(std::int64_t a) const {
    const std::uint64_t r = reduce(a);
    if (r == 0) throw Error(ErrorCode::ZeroResidue, std::to_string(a) + " is divisible by q - 1");
    DigitVec out;
    out.value = r;
    out.digits.resize(n_);
    std::uint64_t x = r;
    for (std::uint64_t i = 0; i < n_; ++i, x /= p_) out.digits[i] = static_cast<std::uint32_t>(x % p_);
    return out;
  }

  /// s(a) for a reduced nonzero residue.
  std::uint64_t digit_sum(std::uint64_t r) const {
    if (p_ == 2) return static_cast<std::uint64_t>(std::popcount(r));
    std::uint64_t s = 0;
    for (; r; r /= p_) s += r % p_;
    return s;
  }

  /// c(a, b) = (s(a) + s(b) - s(a + b)) / (p - 1).
  std::uint64_t carry_count(std::int64_t a, std::int64_t b) const {
    const auto [ra, rb, rs] = checked(a, b);
    return (digit_sum(ra) + digit_sum(rb) - digit_sum(rs)) / (p_ - 1);
  }

  /// c(a, b) by explicit add-with-carry on the cyclic digit strings: the
  /// carry out of the top digit re-enters at digit 0 since p^n = 1 mod q-1.
  std::uint64_t carry_count_cyclic(std::int64_t a, std::int64_t b) const {
    checked(a, b);
    const DigitVec da = digits(a), db = digits(b);
    auto pass = [&](std::uint32_t carry_in, std::uint64_t& carries) {
      std::uint32_t c = carry_in;
      carries = 0;
      for (std::uint64_t i = 0; i < n_; ++i) {
        const std::uint64_t s = std::uint64_t{da.digits[i]} + db.digits[i] + c;
        c = s >= p_ ? 1 : 0;
        carries += c;
      }
      return c;
    };
    std::uint64_t carries = 0;
    if (pass(0, carries) == 1) pass(1, carries);
    return carries;
  }

  /// min { c(i + m k, n k) : 0 <= m < ell, 0 < n < ell }.
  std::uint64_t min_profile(std::uint64_t i) const {
    if (i == 0 || i >= k_) throw Error(ErrorCode::InvalidArgument, "min_profile needs 1 <= i <= k-1");
    std::vector<std::uint64_t> sums(ell_);
    return min_profile_with(i, sums);
  }

  /// Digit sum of n k, the same for every 1 <= n < ell.
  std::uint64_t coset_digit_sum() const { return n_ * (p_ - 1) / 2; }

  /// min_profile without range checks; `sums` must hold ell entries.
  std::uint64_t min_profile_with(std::uint64_t i, std::vector<std::uint64_t>& sums) const {
    // c(i + mk, nk) only needs s(i + jk) for j in 0..ell-1 since ell k = q-1.
    for (std::uint64_t m = 0; m < ell_; ++m) sums[m] = digit_sum(i + m * k_);
    const std::uint64_t snk = coset_digit_sum();
    std::uint64_t best = UINT64_MAX;
    for (std::uint64_t m = 0; m < ell_; ++m)
      for (std::uint64_t n = 1; n < ell_; ++n) {
        const std::uint64_t c = (sums[m] + snk - sums[(m + n) % ell_]) / (p_ - 1);
        best = std::min(best, c);
      }
    return best;
  }

 private:
  struct Reduced {
    std::uint64_t a, b, sum;
  };
  Reduced checked(std::int64_t a, std::int64_t b) const {
    const std::uint64_t ra = reduce(a), rb = reduce(b);
    if (ra == 0 || rb == 0) throw Error(ErrorCode::ZeroResidue, "carry count needs a, b not divisible by q - 1");
    const std::uint64_t rs = (ra + rb) % modulus_;
    if (rs == 0) throw Error(ErrorCode::UndefinedSum, "a + b is divisible by q - 1");
    return {ra, rb, rs};
  }

  std::uint64_t p_, n_, ell_, modulus_, k_;
};

inline DigitVec digits_mod(std::int64_t a, const Params& prm) { return CarryEngine(prm).digits(a); }

inline std::uint64_t carry_count(std::int64_t a, std::int64_t b, const Params& prm) {
  return CarryEngine(prm).carry_count(a, b);
}

inline std::uint64_t min_profile(std::uint64_t i, const Params& prm) { return CarryEngine(prm).min_profile(i); }

/// Throws ConservationViolation unless sum e_j = q - 1 and
/// sum j e_j = v_p(u^k v^(q-k-1) / q).
inline void check_conservation(const Params& prm, const PMultiplicities& m) {
  if (m.count() != prm.q() - 1)
    throw Error(ErrorCode::ConservationViolation,
                prm.label() + ": sum of e_j is " + m.count().get_str() + ", expected q - 1 = " + BigInt(prm.q() - 1).get_str());
  if (m.weighted() != prm.vp_order())
    throw Error(ErrorCode::ConservationViolation, prm.label() + ": sum of j e_j is " + m.weighted().get_str() +
                                                      ", expected v_p(|C|) = " + prm.vp_order().get_str());
}

/// Counts |{1 <= i <= k-1 : min(i) = j}| for j = 0..(ell-1)t/2.
inline std::vector<std::uint64_t> min_profile_counts(const Params& prm, std::uint64_t max_k = kDefaultEnumerationBound,
                                                     unsigned threads = 1) {
  if (prm.k() > from_u64(max_k))
    throw Error(ErrorCode::BoundExceeded,
                "k = " + prm.k().get_str() + " exceeds the enumeration bound " + std::to_string(max_k));
  const CarryEngine eng(prm);
  const std::uint64_t h = prm.half_degree();
  std::vector<std::vector<std::uint64_t>> partial(std::max(1u, threads), std::vector<std::uint64_t>(h + 1, 0));
  std::vector<std::uint64_t> bad(partial.size(), 0);
  parallel_chunks(eng.k() - 1, threads, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    std::vector<std::uint64_t> sums(prm.ell());
    for (std::uint64_t idx = b; idx < e; ++idx) {
      const std::uint64_t i = idx + 1;
      const std::uint64_t c = eng.min_profile_with(i, sums);
      if (c > h)
        bad[w] = i;
      else
        ++partial[w][c];
    }
  });
  for (auto i : bad)
    if (i) throw Error(ErrorCode::ConservationViolation, "min(" + std::to_string(i) + ") exceeds (ell-1)t/2");
  std::vector<std::uint64_t> counts(h + 1, 0);
  for (const auto& part : partial)
    for (std::uint64_t j = 0; j <= h; ++j) counts[j] += part[j];
  return counts;
}

/// p-elementary divisor multiplicities of the critical group from the
/// carry profile of every isotypic block.
inline PMultiplicities theorem_m(const Params& prm, std::uint64_t max_k = kDefaultEnumerationBound,
                                 unsigned threads = 1) {
  const auto counts = min_profile_counts(prm, max_k, threads);
  const std::uint64_t h = prm.half_degree(), top = prm.top_valuation();
  PMultiplicities e;
  e.set(0, from_u64(counts[0] + 2));
  e.set(top, from_u64(counts[0]));
  for (std::uint64_t j = 1; j < h; ++j) {
    e.set(j, from_u64(counts[j]));
    e.set(top - j, from_u64(counts[j]));
  }
  BigInt below = 0;  // sum_{j < (ell-1)t/2} e_j
  for (std::uint64_t j = 0; j < h; ++j) below += e.get(j);
  if (prm.d() == 0) {
    e.set(h, prm.q() + 1 - 2 * below);
  } else {
    e.set(h + prm.d(), prm.k() + 2 - below);
    e.set(h, from_u64(prm.ell() - 1) * prm.k() - below);
  }
  check_conservation(prm, e);
  return e;
}

}  // namespace cyclo
