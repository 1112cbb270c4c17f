#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cyclo/carries.hpp"
#include "cyclo/field.hpp"
#include "cyclo/multiplicities.hpp"
#include "cyclo/parallel.hpp"

namespace cyclo {

/// Element of GR(p^N, n): coefficients of a polynomial of degree < n modulo
/// the lifted field modulus and p^N.
struct GaloisRingElem {
  std::vector<std::uint64_t> coeffs;

  friend bool operator==(const GaloisRingElem&, const GaloisRingElem&) = default;
};

/// p-adic valuation of a ring element; nullopt when the element is 0 mod p^N.
using RingValuation = std::optional<std::uint64_t>;

inline std::string to_string(const RingValuation& v) { return v ? std::to_string(*v) : std::string(">=N"); }

/// Arithmetic in R / p^N R where R is the unramified extension of Z_p whose
/// residue field is the given FieldTable. The lifted modulus has the same
/// integer coefficients as the field modulus.
class GaloisRing {
 public:
  GaloisRing(const FieldTable& field, std::uint64_t precision)
      : field_(&field), p_(field.p()), n_(field.degree()), N_(precision), q_(field.size()) {
    if (N_ == 0) throw Error(ErrorCode::InvalidArgument, "Galois ring precision must be at least 1");
    unsigned __int128 m = 1;
    for (std::uint64_t i = 0; i < N_; ++i) {
      m *= p_;
      if (m >= (static_cast<unsigned __int128>(1) << 62))
        throw Error(ErrorCode::BoundExceeded, "p^N must stay below 2^62");
    }
    mod_ = static_cast<std::uint64_t>(m);
    modulus_.resize(n_);
    for (std::uint64_t i = 0; i < n_; ++i) modulus_[i] = field.modulus()[i] % mod_;
    build_power_table();
  }

  /// Default precision (ell-1)t + d + 4.
  static std::uint64_t default_precision(const Params& prm) { return prm.top_valuation() + 4; }

  const FieldTable& field() const { return *field_; }
  std::uint64_t precision() const { return N_; }
  std::uint64_t characteristic() const { return mod_; }

  GaloisRingElem zero() const { return {std::vector<std::uint64_t>(n_, 0)}; }
  GaloisRingElem one() const { return from_integer(1); }
  GaloisRingElem from_integer(std::int64_t a) const {
    GaloisRingElem e = zero();
    const auto m = static_cast<std::int64_t>(mod_);
    e.coeffs[0] = static_cast<std::uint64_t>(((a % m) + m) % m);
    return e;
  }
  /// Coefficientwise lift of a field element with digits in 0..p-1.
  GaloisRingElem lift(FieldTable::Elem x) const { return {field_->coefficients(x)}; }
  FieldTable::Elem reduce(const GaloisRingElem& a) const {
    std::vector<std::uint64_t> c(n_);
    for (std::uint64_t i = 0; i < n_; ++i) c[i] = a.coeffs[i] % p_;
    return field_->from_coefficients(c);
  }

  GaloisRingElem add(const GaloisRingElem& a, const GaloisRingElem& b) const {
    GaloisRingElem r = a;
    add_to(r, b);
    return r;
  }
  void add_to(GaloisRingElem& a, const GaloisRingElem& b) const {
    for (std::uint64_t i = 0; i < n_; ++i) {
      const std::uint64_t s = a.coeffs[i] + b.coeffs[i];
      a.coeffs[i] = s >= mod_ ? s - mod_ : s;
    }
  }
  GaloisRingElem neg(const GaloisRingElem& a) const {
    GaloisRingElem r = a;
    for (auto& c : r.coeffs) c = c == 0 ? 0 : mod_ - c;
    return r;
  }
  GaloisRingElem sub(const GaloisRingElem& a, const GaloisRingElem& b) const { return add(a, neg(b)); }
  GaloisRingElem scale(const GaloisRingElem& a, std::uint64_t s) const {
    GaloisRingElem r = a;
    s %= mod_;
    for (auto& c : r.coeffs) c = mulmod(c, s);
    return r;
  }

  GaloisRingElem mul(const GaloisRingElem& a, const GaloisRingElem& b) const {
    std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
    for (std::uint64_t i = 0; i < n_; ++i) {
      if (a.coeffs[i] == 0) continue;
      for (std::uint64_t j = 0; j < n_; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a.coeffs[i], b.coeffs[j]));
    }
    // x^n = -sum c_i x^i
    for (std::uint64_t d = prod.size(); d-- > n_;) {
      const std::uint64_t top = prod[d];
      if (top == 0) continue;
      prod[d] = 0;
      for (std::uint64_t i = 0; i < n_; ++i) {
        const std::uint64_t s = mulmod(top, modulus_[i]);
        prod[d - n_ + i] = prod[d - n_ + i] >= s ? prod[d - n_ + i] - s : prod[d - n_ + i] + mod_ - s;
      }
    }
    prod.resize(n_);
    return {std::move(prod)};
  }

  GaloisRingElem pow(GaloisRingElem base, std::uint64_t e) const {
    GaloisRingElem r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  RingValuation valuation(const GaloisRingElem& a) const {
    std::uint64_t best = N_;
    for (auto c : a.coeffs) {
      if (c == 0) continue;
      std::uint64_t v = 0;
      while (c % p_ == 0) {
        c /= p_;
        ++v;
      }
      best = std::min(best, v);
    }
    if (best >= N_) return std::nullopt;
    return best;
  }

  /// Exact division by p^v of an element of valuation >= v.
  GaloisRingElem divide_by_p_power(const GaloisRingElem& a, std::uint64_t v) const {
    std::uint64_t pv = 1;
    for (std::uint64_t i = 0; i < v; ++i) pv *= p_;
    GaloisRingElem r = a;
    for (auto& c : r.coeffs) c /= pv;
    return r;
  }

  /// Inverse of a unit: invert modulo p in F_q, then Newton-lift.
  GaloisRingElem inverse(const GaloisRingElem& u) const {
    const FieldTable::Elem r = reduce(u);
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "inverse of a non-unit in the Galois ring");
    GaloisRingElem y = lift(field_->inv(r));
    const GaloisRingElem two = from_integer(2);
    for (std::uint64_t prec = 1; prec < N_; prec *= 2) y = mul(y, sub(two, mul(u, y)));
    return y;
  }

  /// Teichmuller lift by iterating y -> y^q from the coefficientwise lift.
  GaloisRingElem teichmuller_iterate(FieldTable::Elem x) const {
    if (x == 0) throw Error(ErrorCode::ZeroElement, "Teichmuller lift of zero");
    GaloisRingElem y = lift(x);
    for (std::uint64_t it = 0; it <= N_ + 1; ++it) {
      GaloisRingElem next = pow(y, q_);
      if (next == y) return y;
      y = std::move(next);
    }
    throw Error(ErrorCode::PrecisionInsufficient, "Teichmuller iteration did not stabilise");
  }

  /// omega(x), read from the table of powers of omega(generator).
  const GaloisRingElem& teichmuller(FieldTable::Elem x) const {
    if (x == 0) throw Error(ErrorCode::ZeroElement, "Teichmuller lift of zero");
    return powers_[field_->dlog(x)];
  }
  /// omega(generator)^e.
  const GaloisRingElem& omega_power(std::int64_t e) const { return powers_[reduce_exponent(e)]; }

  /// T^a(x) with T^0 identically 1 (also at 0) and T^a(0) = 0 for a != 0.
  GaloisRingElem character(std::int64_t a, FieldTable::Elem x) const {
    if (a == 0) return one();
    if (x == 0) return zero();
    return powers_[mulmod_exponent(reduce_exponent(a), field_->dlog(x))];
  }

  /// J(T^a, T^b) = sum_x T^a(x) T^b(1 - x).
  GaloisRingElem jacobi_sum(std::int64_t a, std::int64_t b) const {
    GaloisRingElem acc = zero();
    if (a == 0) add_to(acc, one());  // x = 0
    if (b == 0) add_to(acc, one());  // x = 1
    const std::uint64_t ra = reduce_exponent(a), rb = reduce_exponent(b);
    for (std::uint64_t x = 2; x < q_; ++x) {
      const std::uint64_t e = (mulmod_exponent(ra, field_->dlog(static_cast<FieldTable::Elem>(x))) +
                               mulmod_exponent(rb, one_minus_dlog_[x])) %
                              (q_ - 1);
      add_to(acc, powers_[e]);
    }
    return acc;
  }

 private:
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    if (mod_ <= (std::uint64_t{1} << 32)) return a * b % mod_;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
  }
  std::uint64_t addmod(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  std::uint64_t reduce_exponent(std::int64_t e) const {
    const auto m = static_cast<std::int64_t>(q_ - 1);
    return static_cast<std::uint64_t>(((e % m) + m) % m);
  }
  std::uint64_t mulmod_exponent(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % (q_ - 1));
  }

  void build_power_table() {
    const GaloisRingElem w = teichmuller_iterate(field_->generator());
    powers_.reserve(q_ - 1);
    powers_.push_back(one());
    for (std::uint64_t e = 1; e + 1 < q_; ++e) powers_.push_back(mul(powers_.back(), w));
    one_minus_dlog_.assign(q_, 0);
    for (std::uint64_t x = 2; x < q_; ++x) {
      const auto y = field_->sub(1, static_cast<FieldTable::Elem>(x));
      one_minus_dlog_[x] = field_->dlog(y);
    }
  }

  const FieldTable* field_;
  std::uint64_t p_, n_, N_, q_, mod_ = 1;
  std::vector<std::uint64_t> modulus_;
  std::vector<GaloisRingElem> powers_;
  std::vector<std::uint64_t> one_minus_dlog_;
};

struct StickelbergerReport {
  std::uint64_t pairs_checked = 0;
  bool exhaustive = false;
  /// First (a, b) where the valuation of J(T^-a, T^-b) differs from c(a, b).
  std::optional<std::string> failure;

  bool passed() const { return !failure; }
};

/// Compares v_p(J(T^-a, T^-b)) with the carry count c(a, b) over all
/// admissible pairs when q <= exhaustive_max_q, otherwise over `samples`
/// pairs drawn from a seeded generator.
inline StickelbergerReport stickelberger_check(const GaloisRing& ring, std::uint64_t exhaustive_max_q = 256,
                                               std::uint64_t samples = 20000, std::uint64_t seed = 1) {
  const Params& prm = ring.field().params();
  if (ring.precision() <= prm.degree())
    throw Error(ErrorCode::PrecisionInsufficient, "Stickelberger check needs N > (ell-1)t");
  const CarryEngine eng(prm);
  const std::uint64_t m = eng.modulus();
  StickelbergerReport rep;
  auto check = [&](std::uint64_t a, std::uint64_t b) {
    if ((a + b) % m == 0) return true;
    const auto sa = static_cast<std::int64_t>(a), sb = static_cast<std::int64_t>(b);
    const RingValuation v = ring.valuation(ring.jacobi_sum(-sa, -sb));
    const std::uint64_t c = eng.carry_count(sa, sb);
    ++rep.pairs_checked;
    if (v && *v == c) return true;
    rep.failure = "v_p(J(T^-" + std::to_string(a) + ", T^-" + std::to_string(b) + ")) = " + to_string(v) +
                  " but c(" + std::to_string(a) + ", " + std::to_string(b) + ") = " + std::to_string(c);
    return false;
  };
  if (ring.field().size() <= exhaustive_max_q) {
    rep.exhaustive = true;
    for (std::uint64_t a = 1; a < m; ++a)
      for (std::uint64_t b = 1; b < m; ++b)
        if (!check(a, b)) return rep;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, m - 1);
    for (std::uint64_t s = 0; s < samples; ++s)
      if (!check(dist(rng), dist(rng))) return rep;
  }
  return rep;
}

using BlockMatrix = std::vector<std::vector<GaloisRingElem>>;

/// ell L_i on the basis f_{i+mk}, m = 0..ell-1, where f_j = T^{-j}: entry
/// (m, m') is the coefficient of f_{i+m'k} in ell L f_{i+mk}.
inline BlockMatrix block_L(const GaloisRing& ring, std::uint64_t i) {
  const Params& prm = ring.field().params();
  const std::uint64_t ell = prm.ell(), k = to_u64(prm.k());
  if (i == 0 || i >= k) throw Error(ErrorCode::InvalidArgument, "block_L needs 1 <= i <= k-1");
  const std::int64_t q = static_cast<std::int64_t>(ring.field().size());
  BlockMatrix b(ell, std::vector<GaloisRingElem>(ell, ring.zero()));
  for (std::uint64_t m = 0; m < ell; ++m)
    for (std::uint64_t m2 = 0; m2 < ell; ++m2) {
      if (m == m2) {
        b[m][m2] = ring.from_integer(q);
        continue;
      }
      const auto a = -static_cast<std::int64_t>(i + m * k);
      const auto c = -static_cast<std::int64_t>(((m2 + ell - m) % ell) * k);
      b[m][m2] = ring.neg(ring.jacobi_sum(a, c));
    }
  return b;
}

/// ell L on the basis (1, [0], f_k, ..., f_{(ell-1)k}) of the trivial
/// isotypic component; [0] is the indicator of 0.
inline BlockMatrix block_L0(const GaloisRing& ring) {
  const Params& prm = ring.field().params();
  const std::uint64_t ell = prm.ell(), k = to_u64(prm.k());
  const std::int64_t q = static_cast<std::int64_t>(ring.field().size());
  BlockMatrix b(ell + 1, std::vector<GaloisRingElem>(ell + 1, ring.zero()));
  auto f = [](std::uint64_t j) { return j + 1; };  // column of f_{jk}
  b[1][0] = ring.from_integer(-1);
  b[1][1] = ring.from_integer(q);
  for (std::uint64_t m = 1; m < ell; ++m) b[1][f(m)] = ring.from_integer(-1);
  for (std::uint64_t j = 1; j < ell; ++j) {
    auto& row = b[f(j)];
    row[0] = ring.from_integer(1);
    row[1] = ring.from_integer(-q);
    row[f(j)] = ring.from_integer(q);
    for (std::uint64_t m = 1; m < ell; ++m) {
      if ((j + m) % ell == 0) continue;
      const auto a = -static_cast<std::int64_t>(j * k), c = -static_cast<std::int64_t>(m * k);
      row[f((j + m) % ell)] = ring.add(row[f((j + m) % ell)], ring.neg(ring.jacobi_sum(a, c)));
    }
  }
  return b;
}

/// Diagonal valuations of a square block over R / p^N R, ascending, with
/// nullopt (>= N) last. Pivots on minimal valuation, ties broken by (row, col).
inline std::vector<RingValuation> local_smith_valuations(const GaloisRing& ring, BlockMatrix a) {
  const std::size_t n = a.size();
  std::vector<RingValuation> out;
  std::size_t s = 0;
  for (; s < n; ++s) {
    std::size_t pr = n, pc = n;
    std::uint64_t best = ring.precision();
    for (std::size_t r = s; r < n; ++r)
      for (std::size_t c = s; c < n; ++c) {
        const RingValuation v = ring.valuation(a[r][c]);
        if (v && *v < best) {
          best = *v;
          pr = r;
          pc = c;
        }
      }
    if (pr == n) break;
    std::swap(a[s], a[pr]);
    for (auto& row : a) std::swap(row[s], row[pc]);
    out.push_back(best);
    const GaloisRingElem unit_inv = ring.inverse(ring.divide_by_p_power(a[s][s], best));
    for (std::size_t r = s + 1; r < n; ++r) {
      if (!ring.valuation(a[r][s])) continue;
      const GaloisRingElem f = ring.mul(ring.divide_by_p_power(a[r][s], best), unit_inv);
      for (std::size_t c = s; c < n; ++c) a[r][c] = ring.sub(a[r][c], ring.mul(f, a[s][c]));
    }
  }
  for (; s < n; ++s) out.push_back(std::nullopt);
  return out;
}

/// ell L f_i computed pointwise from the Laplacian, compared with the block
/// row q f_i - sum_m J(T^-i, T^-mk) f_{i+mk}.
inline bool laplacian_action_check(const GaloisRing& ring, std::uint64_t i) {
  const FieldTable& field = ring.field();
  const Params& prm = field.params();
  const std::uint64_t q = field.size(), ell = prm.ell(), k = to_u64(prm.k());
  const auto f = [&](std::uint64_t j, FieldTable::Elem x) { return ring.character(-static_cast<std::int64_t>(j), x); };
  std::vector<GaloisRingElem> coeff(ell);
  coeff[0] = ring.from_integer(static_cast<std::int64_t>(q));
  for (std::uint64_t m = 1; m < ell; ++m)
    coeff[m] = ring.neg(ring.jacobi_sum(-static_cast<std::int64_t>(i), -static_cast<std::int64_t>(m * k)));
  for (std::uint64_t x = 0; x < q; ++x) {
    const auto xe = static_cast<FieldTable::Elem>(x);
    GaloisRingElem lhs = ring.scale(f(i, xe), ell * k);
    for (auto s : field.subgroup()) lhs = ring.sub(lhs, ring.scale(f(i, field.add(xe, s)), ell));
    GaloisRingElem rhs = ring.zero();
    for (std::uint64_t m = 0; m < ell; ++m) ring.add_to(rhs, ring.mul(coeff[m], f(i + m * k, xe)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

struct BlockReport {
  /// Block index: 0 for the trivial component, i for L_i.
  std::uint64_t index = 0;
  std::vector<RingValuation> valuations;
  std::vector<RingValuation> expected;

  bool passed() const { return valuations == expected; }
};

inline std::vector<RingValuation> expected_block_valuations(const Params& prm, std::uint64_t i, std::uint64_t min_i) {
  std::vector<RingValuation> e;
  if (i == 0) {
    e = {0, 0};
    for (std::uint64_t j = 0; j + 3 < prm.ell(); ++j) e.push_back(prm.half_degree());
    e.push_back(prm.vp_u());
    std::sort(e.begin(), e.end());
    e.push_back(std::nullopt);
    return e;
  }
  e.push_back(min_i);
  for (std::uint64_t j = 0; j + 2 < prm.ell(); ++j) e.push_back(prm.half_degree());
  e.push_back(prm.top_valuation() - min_i);
  std::sort(e.begin(), e.end());
  return e;
}

/// Local Smith form of L_0 and of every L_i against the min-profile pattern.
inline std::vector<BlockReport> block_snf_check(const GaloisRing& ring, unsigned threads = 1) {
  const Params& prm = ring.field().params();
  if (ring.precision() <= prm.top_valuation())
    throw Error(ErrorCode::PrecisionInsufficient, "block check needs N > v_p(uv)");
  const CarryEngine eng(prm);
  const std::uint64_t k = eng.k();
  std::vector<BlockReport> reports(k);
  reports[0] = {0, local_smith_valuations(ring, block_L0(ring)), expected_block_valuations(prm, 0, 0)};
  parallel_chunks(k - 1, threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t idx = b; idx < e; ++idx) {
      const std::uint64_t i = idx + 1;
      reports[i] = {i, local_smith_valuations(ring, block_L(ring, i)),
                    expected_block_valuations(prm, i, eng.min_profile(i))};
    }
  });
  return reports;
}

/// p-multiplicities summed over all block Smith forms; the saturated entry
/// of L_0 is the free part and is not counted.
inline PMultiplicities block_p_multiplicities(const std::vector<BlockReport>& reports) {
  PMultiplicities m;
  for (const auto& r : reports)
    for (const auto& v : r.valuations)
      if (v) m.add(*v, 1);
  return m;
}

}  // namespace cyclo
