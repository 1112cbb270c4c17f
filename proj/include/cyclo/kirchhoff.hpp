#pragma once

#include <cstdint>

#include "cyclo/params.hpp"

namespace cyclo {

/// Factorization of |C| = u^k v^(q-k-1) / q, assembled from the
/// factorizations of u and v so that q never has to be materialized as an
/// exponent.
inline Factorization kirchhoff_order(const Params& prm) {
  const BigInt tail = prm.q() - prm.k() - 1;
  std::map<BigInt, BigInt> acc;
  for (const auto& [r, e] : factorize(prm.u())) acc[r] += prm.k() * from_u64(e);
  for (const auto& [r, e] : factorize(prm.v())) acc[r] += tail * from_u64(e);
  acc[from_u64(prm.p())] -= from_u64(prm.degree());
  Factorization f;
  for (const auto& [r, e] : acc) {
    if (e < 0) throw Error(ErrorCode::ConservationViolation, "q does not divide u^k v^(q-k-1)");
    if (e > 0) f[r] = to_u64(e);
  }
  return f;
}

/// |C| modulo a prime P != p, for determinant cross-checks.
inline std::uint64_t kirchhoff_order_mod(const Params& prm, std::uint64_t prime) {
  const BigInt bp = from_u64(prime);
  BigInt a, b, qinv;
  mpz_powm(a.get_mpz_t(), prm.u().get_mpz_t(), prm.k().get_mpz_t(), bp.get_mpz_t());
  const BigInt tail = prm.q() - prm.k() - 1;
  mpz_powm(b.get_mpz_t(), prm.v().get_mpz_t(), tail.get_mpz_t(), bp.get_mpz_t());
  if (mpz_invert(qinv.get_mpz_t(), prm.q().get_mpz_t(), bp.get_mpz_t()) == 0)
    throw Error(ErrorCode::InvalidArgument, "q is not invertible modulo the check prime");
  BigInt r = a * b * qinv % bp;
  return to_u64(r);
}

}  // namespace cyclo
