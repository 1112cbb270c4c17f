#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cyclo/error.hpp"

namespace cyclo {

using BigInt = mpz_class;

/// Prime -> exponent.
using Factorization = std::map<BigInt, std::uint64_t>;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

/// Exponent of the prime `p` in `n`. `n` must be nonzero.
inline std::uint64_t valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  BigInt r = n;
  std::uint64_t v = 0;
  while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

/// Largest divisor of `n` coprime to `p`.
inline BigInt strip_prime(const BigInt& n, const BigInt& p) {
  BigInt r = n;
  while (r != 0 && mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t()))
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return r;
}

inline bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) throw Error(ErrorCode::BoundExceeded, "integer " + n.get_str() + " exceeds 64 bits");
  std::uint64_t lo = mpz_getlimbn(n.get_mpz_t(), 0);
  return mpz_size(n.get_mpz_t()) == 0 ? 0 : lo;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

/// Deterministic trial-division primality test.
constexpr bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

inline BigInt pollard_brent(const BigInt& n, std::uint64_t seed, std::uint64_t max_iter) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(seed);
  BigInt y = from_u64(rng() % 1000003 + 1) % n;
  BigInt c = from_u64(rng() % 1000003 + 1) % n;
  const std::uint64_t m = 128;
  BigInt g = 1, r = 1, q = 1, x, ys;
  std::uint64_t iters = 0;
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = (y * y + c) % n;
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (BigInt i = 0; i < m && i < r - k; ++i) {
        y = (y * y + c) % n;
        q = (q * abs(x - y)) % n;
        ++iters;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
    if (iters > max_iter) return 0;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      BigInt d = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const BigInt& n, Factorization& out, std::uint64_t max_iter) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    ++out[n];
    return;
  }
  for (std::uint64_t seed = 1; seed < 64; ++seed) {
    BigInt d = pollard_brent(n, seed, max_iter);
    if (d == 0) break;
    if (d != n && d != 1) {
      factor_into(d, out, max_iter);
      BigInt rest = n / d;
      factor_into(rest, out, max_iter);
      return;
    }
  }
  throw Error(ErrorCode::FactorizationBoundExceeded, "could not factor " + n.get_str());
}

}  // namespace detail

/// Factor a positive integer: trial division up to 10^6, then Pollard-Brent rho.
inline Factorization factorize(BigInt n, std::uint64_t rho_iterations = 50'000'000) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "factorize expects a positive integer");
  Factorization f;
  for (std::uint64_t d = 2; d <= 1'000'000; d += (d == 2 ? 1 : 2)) {
    if (mpz_cmp_ui(n.get_mpz_t(), d * d) < 0) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++f[from_u64(d)];
    }
  }
  detail::factor_into(n, f, rho_iterations);
  return f;
}

inline BigInt product(const Factorization& f) {
  BigInt r = 1;
  for (const auto& [prime, exp] : f) r *= big_pow(prime, exp);
  return r;
}

}  // namespace cyclo
