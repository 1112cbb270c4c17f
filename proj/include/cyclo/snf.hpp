#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "cyclo/abelian_group.hpp"
#include "cyclo/graph.hpp"
#include "cyclo/matrix.hpp"
#include "cyclo/multiplicities.hpp"

namespace cyclo {

struct SmithForm {
  /// Nonzero invariant factors alpha_1 | alpha_2 | ..., positive, units included.
  std::vector<BigInt> invariant_factors;
  /// Free rank of the cokernel: rows - number of nonzero invariant factors.
  std::uint64_t free_rank = 0;

  AbelianGroupDesc cokernel() const {
    AbelianGroupDesc g;
    g.free_rank = free_rank;
    std::map<BigInt, Factorization> cache;
    for (const auto& a : invariant_factors) {
      if (a == 1) continue;
      auto it = cache.find(a);
      if (it == cache.end()) it = cache.emplace(a, factorize(a)).first;
      g.add_cyclic(it->second);
    }
    return g;
  }

  /// e_j for the prime p over the nonzero invariant factors (e_0 counts units at p).
  PMultiplicities p_multiplicities(const BigInt& p) const {
    PMultiplicities m;
    for (const auto& a : invariant_factors) m.add(valuation(a, p), 1);
    return m;
  }
};

namespace detail {

/// Replaces a diagonal by the invariant factors it is equivalent to.
inline std::vector<BigInt> normalize_diagonal(std::vector<BigInt> d) {
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 1) continue;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t())) continue;
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

}  // namespace detail

/// Smith normal form over Z by direct elimination. Each stage moves a
/// nonzero entry of minimal absolute value (first in row-major order) to the
/// pivot, clears its row and column by Euclidean steps, and repeats with the
/// smallest leftover in that row/column until both are clean. The resulting
/// diagonal is then normalized to the divisibility chain.
inline SmithForm smith_normal_form(Matrix<BigInt> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<BigInt> diag;
  BigInt quot;
  std::vector<std::size_t> support;

  for (std::size_t s = 0; s < std::min(rows, cols); ++s) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = s; r < rows; ++r)
      for (std::size_t c = s; c < cols; ++c) {
        const BigInt& x = a(r, c);
        if (sgn(x) == 0) continue;
        if (pr == rows || mpz_cmpabs(x.get_mpz_t(), a(pr, pc).get_mpz_t()) < 0) {
          pr = r;
          pc = c;
        }
      }
    if (pr == rows) break;
    a.swap_rows(s, pr);
    a.swap_cols(s, pc);

    for (;;) {
      bool clean = true;
      // Row operations clear column s.
      support.clear();
      for (std::size_t c = s; c < cols; ++c)
        if (sgn(a(s, c)) != 0) support.push_back(c);
      for (std::size_t r = s + 1; r < rows; ++r) {
        if (sgn(a(r, s)) == 0) continue;
        mpz_tdiv_q(quot.get_mpz_t(), a(r, s).get_mpz_t(), a(s, s).get_mpz_t());
        if (sgn(quot) != 0)
          for (std::size_t c : support) mpz_submul(a(r, c).get_mpz_t(), quot.get_mpz_t(), a(s, c).get_mpz_t());
        if (sgn(a(r, s)) != 0) clean = false;
      }
      // Column operations clear row s.
      support.clear();
      for (std::size_t r = s; r < rows; ++r)
        if (sgn(a(r, s)) != 0) support.push_back(r);
      for (std::size_t c = s + 1; c < cols; ++c) {
        if (sgn(a(s, c)) == 0) continue;
        mpz_tdiv_q(quot.get_mpz_t(), a(s, c).get_mpz_t(), a(s, s).get_mpz_t());
        if (sgn(quot) != 0)
          for (std::size_t r : support) mpz_submul(a(r, c).get_mpz_t(), quot.get_mpz_t(), a(r, s).get_mpz_t());
        if (sgn(a(s, c)) != 0) clean = false;
      }
      if (clean) break;
      // Smallest leftover in row s or column s becomes the new pivot.
      std::size_t br = s, bc = s;
      for (std::size_t r = s + 1; r < rows; ++r)
        if (sgn(a(r, s)) != 0 && mpz_cmpabs(a(r, s).get_mpz_t(), a(br, bc).get_mpz_t()) < 0) {
          br = r;
          bc = s;
        }
      for (std::size_t c = s + 1; c < cols; ++c)
        if (sgn(a(s, c)) != 0 && mpz_cmpabs(a(s, c).get_mpz_t(), a(br, bc).get_mpz_t()) < 0) {
          br = s;
          bc = c;
        }
      a.swap_rows(s, br);
      a.swap_cols(s, bc);
    }
    diag.push_back(abs(a(s, s)));
  }

  SmithForm out;
  out.invariant_factors = detail::normalize_diagonal(std::move(diag));
  out.free_rank = rows - out.invariant_factors.size();
  return out;
}

/// Elementary-divisor data of a matrix over the local ring Z_(r), read off
/// modulo r^precision: exponents below the precision are exact.
struct LocalSmithForm {
  std::uint64_t prime = 0;
  std::uint64_t precision = 0;
  /// valuation -> multiplicity for valuations < precision
  std::map<std::uint64_t, std::uint64_t> multiplicities;
  /// Diagonal entries that vanish modulo r^precision (zero or deeper).
  std::uint64_t saturated = 0;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= (std::uint64_t{1} << 32)) return a * b % m;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid; a is a unit modulo m.
  __int128 t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 quo = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quo * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quo * new_r);
  }
  if (r != 1) throw Error(ErrorCode::InvalidArgument, "not a unit");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

inline std::uint64_t u64_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > UINT64_MAX / b) throw Error(ErrorCode::BoundExceeded, "modulus overflow");
    r *= b;
  }
  return r;
}

template <class T>
std::uint64_t reduce_mod(const T& x, std::uint64_t m) {
  if constexpr (std::is_same_v<T, BigInt>) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(m).get_mpz_t());
    return to_u64(r);
  } else {
    const auto sm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((static_cast<std::int64_t>(x) % sm) + sm) % sm);
  }
}

}  // namespace detail

/// Local Smith form at the prime r, working modulo r^precision with
/// minimal-valuation pivots (first in row-major order). Only row operations
/// are needed: once the pivot column is cleared, the pivot row never
/// influences the remaining block.
template <class T>
LocalSmithForm local_smith_form(const Matrix<T>& m, std::uint64_t prime, std::uint64_t precision) {
  if (!is_prime_u64(prime)) throw Error(ErrorCode::NotPrime, "local SNF needs a prime");
  if (precision == 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  const std::uint64_t mod = detail::u64_pow(prime, precision);
  if (mod >= (std::uint64_t{1} << 62)) throw Error(ErrorCode::BoundExceeded, "prime power too large");
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<std::uint64_t> a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = detail::reduce_mod(m(r, c), mod);

  auto val = [&](std::uint64_t x) -> std::uint64_t {
    if (x == 0) return precision;
    std::uint64_t v = 0;
    while (x % prime == 0) {
      x /= prime;
      ++v;
    }
    return v;
  };

  LocalSmithForm out;
  out.prime = prime;
  out.precision = precision;
  std::size_t s = 0;
  const std::size_t steps = std::min(rows, cols);
  for (; s < steps; ++s) {
    std::size_t pr = rows, pc = cols;
    std::uint64_t best = precision;
    for (std::size_t r = s; r < rows && best > 0; ++r)
      for (std::size_t c = s; c < cols; ++c) {
        const std::uint64_t v = val(a(r, c));
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
          if (v == 0) break;
        }
      }
    if (pr == rows) break;
    a.swap_rows(s, pr);
    a.swap_cols(s, pc);
    ++out.multiplicities[best];

    const std::uint64_t scale = detail::u64_pow(prime, best);
    const std::uint64_t unit_inv = detail::inverse_mod((a(s, s) / scale) % mod, mod);
    std::vector<std::size_t> support;
    for (std::size_t c = s + 1; c < cols; ++c)
      if (a(s, c) != 0) support.push_back(c);
    for (std::size_t r = s + 1; r < rows; ++r) {
      if (a(r, s) == 0) continue;
      const std::uint64_t f = detail::mulmod((a(r, s) / scale) % mod, unit_inv, mod);
      for (std::size_t c : support) {
        const std::uint64_t sub = detail::mulmod(f, a(s, c), mod);
        a(r, c) = a(r, c) >= sub ? a(r, c) - sub : a(r, c) + mod - sub;
      }
      a(r, s) = 0;
    }
  }
  out.saturated = steps - s;
  return out;
}

/// Rank over F_p by plain Gaussian elimination.
template <class T>
std::uint64_t p_rank(const Matrix<T>& m, std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::NotPrime, "p-rank needs a prime");
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<std::uint64_t> a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = detail::reduce_mod(m(r, c), p);
  std::uint64_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(rank, piv);
    const std::uint64_t inv = detail::inverse_mod(a(rank, c), p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a(r, c) == 0) continue;
      const std::uint64_t f = detail::mulmod(a(r, c), inv, p);
      for (std::size_t cc = c; cc < cols; ++cc)
        a(r, cc) = (a(r, cc) + p - detail::mulmod(f, a(rank, cc), p)) % p;
    }
    ++rank;
  }
  return rank;
}

/// Determinant modulo a prime (used as a Kirchhoff cross-check).
template <class T>
std::uint64_t det_mod_prime(const Matrix<T>& m, std::uint64_t prime) {
  const std::size_t n = m.rows();
  Matrix<std::uint64_t> a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = detail::reduce_mod(m(r, c), prime);
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      a.swap_rows(c, piv);
      det = (prime - det) % prime;
    }
    det = detail::mulmod(det, a(c, c), prime);
    const std::uint64_t inv = detail::inverse_mod(a(c, c), prime);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const std::uint64_t f = detail::mulmod(a(r, c), inv, prime);
      for (std::size_t cc = c; cc < n; ++cc)
        a(r, cc) = (a(r, cc) + prime - detail::mulmod(f, a(c, cc), prime)) % prime;
    }
  }
  return det;
}

/// Exact determinant by Chinese remaindering over primes below 2^32, with
/// enough primes to exceed twice the Hadamard bound.
template <class T>
BigInt determinant(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  double log2_bound = 1;
  for (std::size_t r = 0; r < n; ++r) {
    BigInt norm2 = 0;
    for (std::size_t c = 0; c < n; ++c) norm2 += BigInt(m(r, c)) * BigInt(m(r, c));
    if (norm2 == 0) return 0;
    log2_bound += 0.5 * static_cast<double>(mpz_sizeinbase(norm2.get_mpz_t(), 2));
  }
  BigInt residue = 0, modulus = 1;
  std::uint64_t prime = std::uint64_t{1} << 32;
  while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) < log2_bound + 2) {
    do --prime;
    while (!is_prime_u64(prime));
    const std::uint64_t d = det_mod_prime(m, prime);
    const std::uint64_t have = detail::reduce_mod(residue, prime);
    const std::uint64_t minv = detail::inverse_mod(detail::reduce_mod(modulus, prime), prime);
    const std::uint64_t step = detail::mulmod((d + prime - have) % prime, minv, prime);
    residue += modulus * from_u64(step);
    modulus *= from_u64(prime);
  }
  if (2 * residue > modulus) residue -= modulus;
  return residue;
}

/// Local Smith form at `prime`, raising the precision until every diagonal
/// entry except `expected_zeros` is resolved below it.
template <class T>
LocalSmithForm resolved_local_smith_form(const Matrix<T>& m, std::uint64_t prime, std::uint64_t precision,
                                         std::uint64_t expected_zeros) {
  std::uint64_t cap = 0;
  for (unsigned __int128 pw = prime; pw < (static_cast<unsigned __int128>(1) << 62); pw *= prime) ++cap;
  precision = std::min(std::max<std::uint64_t>(precision, 1), cap);
  for (;;) {
    LocalSmithForm loc = local_smith_form(m, prime, precision);
    if (loc.saturated == expected_zeros) return loc;
    if (loc.saturated < expected_zeros || precision == cap)
      throw Error(ErrorCode::PrecisionInsufficient, "local SNF at " + std::to_string(prime) + " left " +
                                                        std::to_string(loc.saturated) + " entries beyond precision " +
                                                        std::to_string(precision));
    precision = std::min(cap, 2 * precision);
  }
}

}  // namespace cyclo

#include "cyclo/kirchhoff.hpp"

namespace cyclo {

/// Brute-force bound on q; CYCLO_MAX_Q overrides it.
inline std::uint64_t default_bruteforce_bound() {
  if (const char* env = std::getenv("CYCLO_MAX_Q")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw Error(ErrorCode::InvalidArgument, std::string("CYCLO_MAX_Q is not a positive integer: ") + env);
  }
  return 4096;
}

struct BruteforceOptions {
  std::uint64_t max_q = default_bruteforce_bound();
  /// Largest q for the classic integer elimination.
  std::uint64_t full_snf_max_q = 128;
  /// Largest q for which the determinant of the reduced Laplacian is computed
  /// exactly and its prime factors drive the local Smith forms. Above it the
  /// primes come from u v.
  std::uint64_t exact_local_max_q = 256;
  /// Extra digits beyond the largest expected valuation in p-local mode.
  std::uint64_t precision_margin = 5;
};

struct BruteforceResult {
  AbelianGroupDesc group;
  PMultiplicities p_part;
  std::string mode;
  std::vector<std::string> checks;
};

namespace detail {

inline Matrix<std::int64_t> reduced_laplacian(const Matrix<std::int64_t>& lap) {
  Matrix<std::int64_t> reduced(lap.rows() - 1, lap.cols() - 1);
  for (std::size_t r = 1; r < lap.rows(); ++r)
    for (std::size_t c = 1; c < lap.cols(); ++c) reduced(r - 1, c - 1) = lap(r, c);
  return reduced;
}

inline void add_local_part(BruteforceResult& out, const LocalSmithForm& loc, const BigInt& p) {
  const BigInt r = from_u64(loc.prime);
  for (const auto& [j, mult] : loc.multiplicities) {
    if (r == p) out.p_part.set(j, from_u64(mult));
    out.group.add_divisor(r, j, from_u64(mult));
  }
  out.checks.push_back("local SNF at " + r.get_str() + " resolved mod " + r.get_str() + "^" +
                       std::to_string(loc.precision));
}

}  // namespace detail

/// Critical group straight from the Laplacian. Three modes by size:
///   full   classic integer SNF;
///   exact  exact det of the reduced Laplacian, local SNF at each of its primes;
///   p-local  local SNF at the primes of u v plus a det check modulo a large prime.
/// Throws BoundExceeded past the configured q, MismatchFound if the cokernel
/// is not Z + (finite group of the Kirchhoff order).
inline BruteforceResult critical_group_bruteforce(const FieldTable& field, const BruteforceOptions& opt = {}) {
  const Params& prm = field.params();
  prm.q_bounded(opt.max_q);
  const auto lap = laplacian<std::int64_t>(field);
  const BigInt p = from_u64(prm.p());
  const Factorization expected_order = kirchhoff_order(prm);
  BruteforceResult out;

  if (field.size() <= opt.full_snf_max_q) {
    out.mode = "full";
    const SmithForm snf = smith_normal_form(lap.cast<BigInt>());
    out.group = snf.cokernel();
    out.p_part = snf.p_multiplicities(p);
  } else if (field.size() <= opt.exact_local_max_q) {
    out.mode = "exact";
    const BigInt det = determinant(detail::reduced_laplacian(lap));
    if (det == 0) throw Error(ErrorCode::MismatchFound, "reduced Laplacian is singular");
    out.checks.push_back("reduced Laplacian determinant has " +
                         std::to_string(mpz_sizeinbase(det.get_mpz_t(), 2)) + " bits");
    out.group.free_rank = 1;
    for (const auto& [r, e] : factorize(abs(det))) {
      const auto loc = resolved_local_smith_form(lap, to_u64(r), std::min<std::uint64_t>(e + 1, 8), 1);
      detail::add_local_part(out, loc, p);
    }
    if (product(out.group.order_factorization()) != abs(det))
      throw Error(ErrorCode::MismatchFound, "local Smith forms do not multiply to the reduced determinant");
    out.checks.push_back("local parts multiply to the reduced determinant");
  } else {
    out.mode = "p-local";
    Factorization primes = factorize(prm.u());
    for (const auto& [r, e] : factorize(prm.v())) primes[r] = std::max(primes[r], e);
    out.group.free_rank = 1;
    for (const auto& [r, e] : primes) {
      const std::uint64_t prec = (r == p ? prm.top_valuation() : e) + opt.precision_margin;
      detail::add_local_part(out, resolved_local_smith_form(lap, to_u64(r), prec, 1), p);
    }
    // A mismatch modulo a large prime would reveal torsion at primes not
    // dividing u v.
    constexpr std::uint64_t check_prime = 4294967291ULL;  // largest prime below 2^32
    if (det_mod_prime(detail::reduced_laplacian(lap), check_prime) != kirchhoff_order_mod(prm, check_prime))
      throw Error(ErrorCode::MismatchFound, "reduced Laplacian determinant differs from |C| mod 4294967291");
    out.checks.push_back("reduced Laplacian determinant matches |C| mod 4294967291");
  }

  if (out.group.free_rank != 1)
    throw Error(ErrorCode::MismatchFound, "Laplacian cokernel has free rank " + std::to_string(out.group.free_rank));
  if (out.group.order_factorization() != expected_order)
    throw Error(ErrorCode::MismatchFound, "torsion order differs from u^k v^(q-k-1)/q");
  out.checks.push_back("free rank 1");
  out.checks.push_back("torsion order equals u^k v^(q-k-1)/q");
  return out;
}

}  // namespace cyclo
