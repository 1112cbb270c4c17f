#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cyclo/params.hpp"

namespace cyclo {

/// Default enumeration bound for explicit field tables.
inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 16;

namespace polymod {

// Dense polynomials over F_p, least significant coefficient first.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

/// Remainder of a modulo the nonzero polynomial m.
inline Poly rem(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return rem(std::move(r), m, p);
}

inline Poly pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, m, p);
    base = mul_mod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

/// Rabin's irreducibility test for a monic polynomial of degree n over F_p.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::uint64_t n = f.size() - 1;
  const Poly x{0, 1};
  auto frobenius_power = [&](std::uint64_t j) {
    Poly y = x;
    for (std::uint64_t i = 0; i < j; ++i) y = pow_mod(y, p, f, p);
    return y;
  };
  const Poly xr = rem(x, f, p);
  if (frobenius_power(n) != xr) return false;
  for (std::uint64_t r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime_u64(r)) continue;
    Poly g = gcd(f, sub(frobenius_power(n / r), xr, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace polymod

/// Explicit F_q with q = p^n: elements are indices 0..q-1 encoding the
/// coefficient vector sum c_i p^i of a polynomial in x modulo the
/// lexicographically smallest monic irreducible of degree n. Multiplication
/// goes through discrete-log tables for a fixed primitive element alpha.
class FieldTable {
 public:
  using Elem = std::uint32_t;

  explicit FieldTable(const Params& params, std::uint64_t bound = kDefaultFieldBound);

  const Params& params() const { return params_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t degree() const { return n_; }
  std::uint64_t size() const { return q_; }
  std::uint64_t k() const { return (q_ - 1) / params_.ell(); }

  /// Coefficients c_0..c_{n-1} of x^n - sum(...): the modulus is x^n + sum c_i x^i.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }

  std::vector<std::uint64_t> coefficients(Elem a) const {
    std::vector<std::uint64_t> c(n_);
    for (std::uint64_t i = 0; i < n_; ++i, a /= p_) c[i] = a % p_;
    return c;
  }
  Elem from_coefficients(const std::vector<std::uint64_t>& c) const {
    std::uint64_t a = 0;
    for (std::uint64_t i = n_; i-- > 0;) a = a * p_ + (i < c.size() ? c[i] % p_ : 0);
    return static_cast<Elem>(a);
  }

  Elem add(Elem a, Elem b) const {
    std::uint64_t r = 0, scale = 1;
    for (std::uint64_t i = 0; i < n_; ++i, a /= p_, b /= p_, scale *= p_) r += ((a % p_ + b % p_) % p_) * scale;
    return static_cast<Elem>(r);
  }
  Elem neg(Elem a) const {
    std::uint64_t r = 0, scale = 1;
    for (std::uint64_t i = 0; i < n_; ++i, a /= p_, scale *= p_) r += ((p_ - a % p_) % p_) * scale;
    return static_cast<Elem>(r);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return antilog_[(dlog_[a] + dlog_[b]) % (q_ - 1)];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
    return antilog_[(q_ - 1 - dlog_[a]) % (q_ - 1)];
  }
  /// alpha^e for any integer exponent.
  Elem power_of_generator(std::int64_t e) const {
    const auto m = static_cast<std::int64_t>(q_ - 1);
    return antilog_[static_cast<std::size_t>(((e % m) + m) % m)];
  }

  /// Exponent of a nonzero element with respect to the generator.
  std::uint64_t dlog(Elem a) const {
    if (a == 0) throw Error(ErrorCode::ZeroElement, "discrete log of zero");
    return dlog_[a];
  }

  /// dlog(x) mod ell: which coset of S the nonzero element lies in.
  std::uint64_t coset_index(Elem x) const { return dlog(x) % params_.ell(); }
  bool in_subgroup(Elem x) const { return coset_index(x) == 0; }

  /// Elements of S = {alpha^(ell j) : 0 <= j < k}, in increasing exponent order.
  const std::vector<Elem>& subgroup() const { return subgroup_; }

 private:
  Params params_;
  std::uint64_t p_, n_, q_;
  std::vector<std::uint64_t> modulus_;
  Elem generator_ = 0;
  std::vector<std::uint32_t> dlog_;
  std::vector<Elem> antilog_;
  std::vector<Elem> subgroup_;
};

inline FieldTable::FieldTable(const Params& params, std::uint64_t bound)
    : params_(params), p_(params.p()), n_(params.degree()), q_(params.q_bounded(bound)) {
  using polymod::Poly;
  // Smallest monic irreducible in the index ordering of its lower coefficients.
  Poly f;
  for (std::uint64_t code = 0; code < q_; ++code) {
    Poly cand(n_ + 1);
    std::uint64_t c = code;
    for (std::uint64_t i = 0; i < n_; ++i, c /= p_) cand[i] = c % p_;
    cand[n_] = 1;
    if (cand[0] == 0) continue;
    if (polymod::is_irreducible(cand, p_)) {
      f = std::move(cand);
      break;
    }
  }
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
  modulus_.assign(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n_));

  auto to_poly = [&](std::uint64_t a) {
    Poly c(n_);
    for (std::uint64_t i = 0; i < n_; ++i, a /= p_) c[i] = a % p_;
    polymod::trim(c);
    return c;
  };
  auto from_poly = [&](const Poly& c) { return from_coefficients(c); };

  // Prime divisors of q - 1 for the order test.
  std::vector<std::uint64_t> primes;
  {
    std::uint64_t m = q_ - 1;
    for (std::uint64_t r = 2; r <= m / r; ++r) {
      if (m % r == 0) primes.push_back(r);
      while (m % r == 0) m /= r;
    }
    if (m > 1) primes.push_back(m);
  }
  for (std::uint64_t g = 1; g < q_; ++g) {
    const Poly gp = to_poly(g);
    const bool primitive = std::all_of(primes.begin(), primes.end(), [&](std::uint64_t r) {
      return polymod::pow_mod(gp, (q_ - 1) / r, f, p_) != Poly{1};
    });
    if (primitive) {
      generator_ = static_cast<Elem>(g);
      break;
    }
  }

  dlog_.assign(q_, 0);
  antilog_.assign(q_ - 1, 0);
  std::vector<bool> seen(q_, false);
  Poly cur{1};
  const Poly gp = to_poly(generator_);
  for (std::uint64_t e = 0; e + 1 < q_; ++e) {
    const Elem a = from_poly(cur);
    if (a == 0 || seen[a]) throw Error(ErrorCode::InvalidArgument, "generator does not have order q - 1");
    seen[a] = true;
    antilog_[e] = a;
    dlog_[a] = static_cast<std::uint32_t>(e);
    cur = polymod::mul_mod(cur, gp, f, p_);
  }

  const std::uint64_t kk = k();
  subgroup_.reserve(kk);
  for (std::uint64_t j = 0; j < kk; ++j) subgroup_.push_back(antilog_[params_.ell() * j]);
}

}  // namespace cyclo
