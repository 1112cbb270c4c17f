#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "cyclo/bigint.hpp"

namespace cyclo {

/// Multiplicative order of `a` modulo the prime `m` (a coprime to m).
constexpr std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  a %= m;
  if (a == 0) return 0;
  std::uint64_t x = a, ord = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * a) % m);
    ++ord;
  }
  return ord;
}

/// A validated triple (p, ell, t) for the graph Cay(F_q, S), with
/// q = p^((ell-1)t) and S the index-ell subgroup of F_q^*, plus the derived
/// constants every pipeline shares. Immutable once built.
class Params {
 public:
  /// Throws Error{NotPrime, NotPrimitive, Disconnected, InvalidArgument}.
  static Params validate(std::uint64_t p, std::uint64_t ell, std::uint64_t t);

  std::uint64_t p() const { return p_; }
  std::uint64_t ell() const { return ell_; }
  std::uint64_t t() const { return t_; }

  /// Degree of F_q over F_p, (ell-1)t.
  std::uint64_t degree() const { return (ell_ - 1) * t_; }
  /// (ell-1)t/2, the common p-adic valuation of v and sqrt(q).
  std::uint64_t half_degree() const { return degree() / 2; }
  /// v_p(ell - 1).
  std::uint64_t d() const { return d_; }
  /// v_p(u v) = (ell-1)t + d.
  std::uint64_t top_valuation() const { return degree() + d_; }
  std::uint64_t vp_u() const { return half_degree() + d_; }
  std::uint64_t vp_v() const { return half_degree(); }

  const BigInt& q() const { return q_; }
  const BigInt& k() const { return k_; }
  const BigInt& sqrt_q() const { return sqrt_q_; }
  const BigInt& u() const { return u_; }
  const BigInt& v() const { return v_; }
  const BigInt& lambda() const { return lambda_; }
  const BigInt& mu() const { return mu_; }

  bool t_even() const { return t_ % 2 == 0; }

  /// q as a machine integer, or BoundExceeded if q > bound.
  std::uint64_t q_bounded(std::uint64_t bound) const {
    if (q_ > from_u64(bound))
      throw Error(ErrorCode::BoundExceeded,
                  "q = " + q_.get_str() + " exceeds the configured bound " + std::to_string(bound));
    return to_u64(q_);
  }

  /// v_p(|C|) = k v_p(u) + (q-k-1) v_p(v) - (ell-1)t.
  BigInt vp_order() const {
    return k_ * from_u64(vp_u()) + (q_ - k_ - 1) * from_u64(vp_v()) - from_u64(degree());
  }

  std::string label() const {
    return "G(" + std::to_string(p_) + "," + std::to_string(ell_) + "," + std::to_string(t_) + ")";
  }

  friend bool operator==(const Params& a, const Params& b) {
    return a.p_ == b.p_ && a.ell_ == b.ell_ && a.t_ == b.t_;
  }

 private:
  Params() = default;

  std::uint64_t p_ = 0, ell_ = 0, t_ = 0, d_ = 0;
  BigInt q_, k_, sqrt_q_, u_, v_, lambda_, mu_;
};

inline Params Params::validate(std::uint64_t p, std::uint64_t ell, std::uint64_t t) {
  if (p == 0 || ell == 0 || t == 0)
    throw Error(ErrorCode::InvalidArgument, "p, ell and t must be positive");
  if (!is_prime_u64(p)) throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (!is_prime_u64(ell)) throw Error(ErrorCode::NotPrime, "ell = " + std::to_string(ell) + " is not prime");
  if (ell <= 2) throw Error(ErrorCode::InvalidArgument, "ell must be an odd prime");
  if (p == ell || multiplicative_order(p, ell) != ell - 1)
    throw Error(ErrorCode::NotPrimitive,
                std::to_string(p) + " is not a primitive root modulo " + std::to_string(ell));

  Params r;
  r.p_ = p;
  r.ell_ = ell;
  r.t_ = t;
  const std::uint64_t n = (ell - 1) * t;
  const BigInt bp = from_u64(p), bell = from_u64(ell);
  r.q_ = big_pow(p, n);
  r.sqrt_q_ = big_pow(p, n / 2);
  r.k_ = (r.q_ - 1) / bell;
  r.d_ = valuation(from_u64(ell - 1), bp);

  if (t % 2 == 1 && r.sqrt_q_ == from_u64(ell - 1))
    throw Error(ErrorCode::Disconnected, r.label() + " is disconnected (sqrt(q) = ell - 1 with t odd)");

  // v = sqrt(q)(sqrt(q) + (-1)^(t+1))/ell, u = v + (-1)^t sqrt(q).
  const int sign_t = (t % 2 == 0) ? 1 : -1;
  BigInt num_v = r.sqrt_q_ * (r.sqrt_q_ - sign_t);
  if (num_v % bell != 0) throw Error(ErrorCode::InvalidArgument, "v is not integral");
  r.v_ = num_v / bell;
  r.u_ = r.v_ + sign_t * r.sqrt_q_;

  const BigInt ell2 = bell * bell;
  BigInt num_lambda = r.q_ - 3 * bell + 1 - sign_t * from_u64((ell - 1) * (ell - 2)) * r.sqrt_q_;
  BigInt num_mu = r.q_ - bell + 1 + sign_t * from_u64(ell - 2) * r.sqrt_q_;
  if (num_lambda % ell2 != 0 || num_mu % ell2 != 0)
    throw Error(ErrorCode::InvalidArgument, "SRG parameters are not integral");
  r.lambda_ = num_lambda / ell2;
  r.mu_ = num_mu / ell2;

  if (r.u_ <= 0 || r.v_ <= 0 || r.mu_ < 0)
    throw Error(ErrorCode::InvalidArgument, "non-positive Laplacian eigenvalue");
  if (valuation(r.u_, bp) != r.vp_u() || valuation(r.v_, bp) != r.vp_v())
    throw Error(ErrorCode::InvalidArgument, "unexpected p-adic valuation of u or v");
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const Params& prm) { return os << prm.label(); }

}  // namespace cyclo
