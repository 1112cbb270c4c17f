#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cyclo/bivar_poly.hpp"
#include "cyclo/carries.hpp"
#include "cyclo/multiplicities.hpp"
#include "cyclo/params.hpp"

namespace cyclo {

/// The three integers (p+1)/3, (p-2)/3, (2p-1)/3 for p = 2 mod 3.
struct ThirdDigits {
  std::uint64_t a, b, c;
};

inline ThirdDigits third_digits(std::uint64_t p) {
  if (p % 3 != 2) throw Error(ErrorCode::BadResidue, "p = " + std::to_string(p) + " is not 2 mod 3");
  return {(p + 1) / 3, (p - 2) / 3, (2 * p - 1) / 3};
}

struct PQR {
  BivarPoly P, Q, R;
};

inline PQR pqr(std::uint64_t p) {
  const auto [a, b, c] = third_digits(p);
  const BivarPoly x = BivarPoly::x(), y = BivarPoly::y(), xy = x * y;
  const BivarPoly B = xy * xy + x * xy + xy * y + x + y + BivarPoly(1);
  const BigInt a2 = from_u64(a) * from_u64(a), b2 = from_u64(b) * from_u64(b), c2 = from_u64(c) * from_u64(c);
  PQR out;
  out.P = a2 * B + 3 * b2 * xy;
  out.Q = a2 * (xy * B) + 3 * c2 * (xy * xy);
  out.R = from_u64(p) * from_u64(p) * (xy * xy * xy);
  return out;
}

/// C(2), C(4), ..., C(2t) from the seeds and the three-term recursion.
inline std::vector<BivarPoly> c_sequence(std::uint64_t p, std::uint64_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "t must be positive");
  const auto [P, Q, R] = pqr(p);
  std::vector<BivarPoly> c;
  c.push_back(BigInt(2) * P);
  if (t >= 2) c.push_back(BigInt(2) * (P * P - BigInt(2) * Q));
  if (t >= 3) c.push_back(BigInt(6) * R + BigInt(2) * (P * P * P) - BigInt(6) * (P * Q));
  for (std::uint64_t n = 4; n <= t; ++n) {
    const std::size_t i = n - 1;
    c.push_back(P * c[i - 1] - Q * c[i - 2] + R * c[i - 3]);
  }
  return c;
}

/// C(2t): weighted count of closed walks of length 2t.
inline BivarPoly c_poly(std::uint64_t p, std::uint64_t t) { return c_sequence(p, t).back(); }

/// Bipartite digraph on A_1 (side 0) and A_2 (side 1), each with vertices
/// (alpha, gamma, delta) for alpha in 0..p-1 and carries in {0, 1}.
class WeightedDigraph {
 public:
  struct Vertex {
    std::uint32_t side, alpha, gamma, delta;
  };
  struct Arc {
    std::uint32_t from, to, label, x_exp, y_exp;
  };

  explicit WeightedDigraph(std::uint64_t p) : p_(p) {}

  std::uint64_t p() const { return p_; }
  std::size_t vertex_count() const { return 8 * p_; }
  std::uint32_t index(const Vertex& v) const {
    return static_cast<std::uint32_t>(((v.side * p_ + v.alpha) * 2 + v.gamma) * 2 + v.delta);
  }
  Vertex vertex(std::uint32_t i) const {
    return {static_cast<std::uint32_t>(i / (4 * p_)), static_cast<std::uint32_t>(i / 4 % p_), i / 2 % 2, i % 2};
  }
  const std::vector<Arc>& arcs() const { return arcs_; }
  void add_arc(const Arc& a) { arcs_.push_back(a); }

 private:
  std::uint64_t p_;
  std::vector<Arc> arcs_;
};

namespace detail {

/// The six printed threshold rules: which carry pair (gamma', delta') the
/// arcs leaving a vertex carry.
inline std::pair<std::uint32_t, std::uint32_t> threshold_target(const WeightedDigraph::Vertex& v, std::uint64_t p) {
  const auto a = static_cast<std::int64_t>((p + 1) / 3);
  const auto alpha = static_cast<std::int64_t>(v.alpha);
  const std::int64_t g = v.gamma, d = v.delta;
  if (v.side == 0) {
    if (alpha < a - g) return {0, 0};
    if (alpha < 2 * a - d) return {1, 0};
    return {1, 1};
  }
  if (alpha < a - d) return {0, 0};
  if (alpha < 2 * a - g) return {0, 1};
  return {1, 1};
}

}  // namespace detail

/// Builds D from the add-with-carry equations and checks every arc against
/// the six threshold rules.
inline WeightedDigraph build_digraph(std::uint64_t p) {
  const ThirdDigits third = third_digits(p);
  WeightedDigraph g(p);
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    const auto v = g.vertex(i);
    // A_1 adds (2p-1)/3 to the gamma row and (p-2)/3 to the delta row; A_2 swaps them.
    const std::uint64_t add_g = v.side == 0 ? third.c : third.b, add_d = v.side == 0 ? third.b : third.c;
    const auto gp = static_cast<std::uint32_t>((v.alpha + add_g + v.gamma) / p);
    const auto dp = static_cast<std::uint32_t>((v.alpha + add_d + v.delta) / p);
    if (detail::threshold_target(v, p) != std::pair{gp, dp})
      throw Error(ErrorCode::MismatchFound, "arc rule disagrees with the carry equations at alpha = " +
                                                std::to_string(v.alpha));
    for (std::uint32_t alpha2 = 0; alpha2 < p; ++alpha2)
      g.add_arc({i, g.index({1 - v.side, alpha2, gp, dp}), v.alpha, gp, dp});
  }
  return g;
}

/// Sum of the weights of closed walks of length n: trace of the n-th power
/// of the weighted adjacency operator, one start vertex at a time.
inline BivarPoly walk_oracle(const WeightedDigraph& g, std::uint64_t n) {
  const std::size_t V = g.vertex_count();
  std::vector<std::vector<const WeightedDigraph::Arc*>> out(V);
  for (const auto& a : g.arcs()) out[a.from].push_back(&a);
  BivarPoly total;
  for (std::size_t s = 0; s < V; ++s) {
    std::vector<BivarPoly> cur(V);
    cur[s] = BivarPoly(1);
    for (std::uint64_t step = 0; step < n; ++step) {
      std::vector<BivarPoly> next(V);
      for (std::size_t u = 0; u < V; ++u) {
        if (cur[u].is_zero()) continue;
        for (const auto* a : out[u]) next[a->to] += cur[u] * BivarPoly::monomial(1, a->x_exp, a->y_exp);
      }
      cur = std::move(next);
    }
    total += cur[s];
  }
  return total;
}

inline BivarPoly walk_oracle(std::uint64_t p, std::uint64_t t) { return walk_oracle(build_digraph(p), 2 * t); }

using TransferMatrix = std::array<std::array<BivarPoly, 6>, 6>;

/// M_[beta] from the printed images; indices 0..2 are h_1..h_3 and 3..5 are
/// h'_1..h'_3, column j holds the image of basis vector j.
inline TransferMatrix transfer_matrix_printed(std::uint64_t p) {
  const ThirdDigits third = third_digits(p);
  const BigInt A = from_u64(third.a), B = from_u64(third.b);
  const BivarPoly x = BivarPoly::x(), y = BivarPoly::y(), xy = x * y;
  TransferMatrix m{};
  auto set_col = [&](std::size_t col, std::size_t base, const std::array<BivarPoly, 3>& img) {
    for (std::size_t r = 0; r < 3; ++r) m[base + r][col] = img[r];
  };
  set_col(3, 0, {BivarPoly::constant(A), A * x, B * xy});
  set_col(4, 0, {BivarPoly::constant(A), B * x, A * xy});
  set_col(5, 0, {BivarPoly::constant(B), A * x, A * xy});
  set_col(0, 3, {BivarPoly::constant(A), A * y, B * xy});
  set_col(1, 3, {BivarPoly::constant(A), B * y, A * xy});
  set_col(2, 3, {BivarPoly::constant(B), A * y, A * xy});
  return m;
}

/// The same operator read off the digraph: h_1..h_3 are the sums of the A_2
/// vertices with carries (0,0), (1,0), (1,1) and h'_1..h'_3 the sums of the
/// A_1 vertices with carries (0,0), (0,1), (1,1). Throws MismatchFound if the
/// span of these six vectors is not invariant.
inline TransferMatrix transfer_matrix_from_digraph(const WeightedDigraph& g) {
  const std::uint64_t p = g.p();
  using Carry = std::pair<std::uint32_t, std::uint32_t>;
  const std::array<Carry, 3> cls2{{{0, 0}, {1, 0}, {1, 1}}}, cls1{{{0, 0}, {0, 1}, {1, 1}}};
  auto basis_side = [](std::size_t j) { return j < 3 ? 1u : 0u; };
  auto basis_carry = [&](std::size_t j) { return j < 3 ? cls2[j] : cls1[j - 3]; };

  std::vector<std::vector<const WeightedDigraph::Arc*>> out(g.vertex_count());
  for (const auto& a : g.arcs()) out[a.from].push_back(&a);

  TransferMatrix m{};
  for (std::size_t col = 0; col < 6; ++col) {
    std::vector<BivarPoly> image(g.vertex_count());
    const auto [gc, dc] = basis_carry(col);
    for (std::uint32_t alpha = 0; alpha < p; ++alpha)
      for (const auto* a : out[g.index({basis_side(col), alpha, gc, dc})])
        image[a->to] += BivarPoly::monomial(1, a->x_exp, a->y_exp);
    std::vector<bool> covered(g.vertex_count(), false);
    for (std::size_t row = 0; row < 6; ++row) {
      if (basis_side(row) == basis_side(col)) continue;
      const auto [gr, dr] = basis_carry(row);
      const BivarPoly coeff = image[g.index({basis_side(row), 0, gr, dr})];
      for (std::uint32_t alpha = 0; alpha < p; ++alpha) {
        const auto idx = g.index({basis_side(row), alpha, gr, dr});
        if (!(image[idx] == coeff)) throw Error(ErrorCode::MismatchFound, "class sums are not M-invariant");
        covered[idx] = true;
      }
      m[row][col] = coeff;
    }
    for (std::size_t v = 0; v < image.size(); ++v)
      if (!covered[v] && !image[v].is_zero())
        throw Error(ErrorCode::MismatchFound, "image leaves the span of the class sums");
  }
  return m;
}

/// Polynomial in z with BivarPoly coefficients, lowest degree first.
using ZPoly = std::vector<BivarPoly>;

namespace detail {

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace detail

/// det(zI - M) by the Leibniz expansion.
inline ZPoly characteristic_polynomial(const TransferMatrix& m) {
  std::array<std::array<ZPoly, 6>, 6> a;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) {
      a[r][c] = {-m[r][c]};
      if (r == c) a[r][c].push_back(BivarPoly(1));
    }
  std::array<std::size_t, 6> perm;
  std::iota(perm.begin(), perm.end(), 0);
  ZPoly total(7);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j) inversions += perm[i] > perm[j];
    ZPoly term{BivarPoly(inversions % 2 ? -1 : 1)};
    for (std::size_t r = 0; r < 6 && !term.empty(); ++r) term = detail::zmul(term, a[r][perm[r]]);
    for (std::size_t i = 0; i < term.size(); ++i) total[i] += term[i];
  } while (std::next_permutation(perm.begin(), perm.end()));
  while (total.size() > 1 && total.back().is_zero()) total.pop_back();
  return total;
}

struct TransferReport {
  bool matches_digraph = false;
  bool charpoly_matches = false;
  bool det_matches = false;
  ZPoly charpoly;
  BivarPoly det;

  bool passed() const { return matches_digraph && charpoly_matches && det_matches; }
};

/// Checks that the printed M_[beta] is the digraph's operator on the class
/// sums, that det(zI - M) = z^6 - P z^4 + Q z^2 - R and det M = -p^2 x^3 y^3.
inline TransferReport transfer_matrix_check(std::uint64_t p) {
  const TransferMatrix printed = transfer_matrix_printed(p);
  const auto [P, Q, R] = pqr(p);
  TransferReport rep;
  rep.matches_digraph = transfer_matrix_from_digraph(build_digraph(p)) == printed;
  rep.charpoly = characteristic_polynomial(printed);
  const ZPoly expected{-R, BivarPoly(), Q, BivarPoly(), -P, BivarPoly(), BivarPoly(1)};
  rep.charpoly_matches = rep.charpoly == expected;
  // det(M) = det(-(0 I - M)) = (-1)^6 charpoly(0)
  rep.det = rep.charpoly.empty() ? BivarPoly() : rep.charpoly[0];
  rep.det_matches = rep.det == BigInt(-1) * from_u64(p) * from_u64(p) * BivarPoly::monomial(1, 3, 3);
  return rep;
}

/// ((p+1)/3)^(2t) (2^(t+1) - 2), the p-rank of the Laplacian for ell = 3.
inline BigInt e3_p_rank(std::uint64_t p, std::uint64_t t) {
  return big_pow(from_u64(third_digits(p).a), 2 * t) * (big_pow(BigInt(2), t + 1) - 2);
}

/// p-elementary divisor multiplicities of the critical group of G(p, 3, t)
/// from the coefficients of C(2t).
inline PMultiplicities theorem_e3(std::uint64_t p, std::uint64_t t) {
  third_digits(p);
  const Params prm = Params::validate(p, 3, t);
  const BivarPoly C = c_poly(p, t);
  const std::uint64_t delta = p == 2 ? 1 : 0;
  PMultiplicities e;
  const BigInt e0 = e3_p_rank(p, t);
  e.set(0, e0);
  e.set(2 * t + delta, e0 - 2);
  for (std::uint64_t a = 1; a < t; ++a) {
    BigInt s = 0;
    for (std::uint64_t b = a + 1; b <= t; ++b) s += C.coeff(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    e.set(a, s);
    e.set(2 * t + delta - a, s);
  }
  BigInt below = 0;  // sum_{j < t} e_j
  for (std::uint64_t j = 0; j < t; ++j) below += e.get(j);
  if (delta) {
    e.set(t + 1, prm.k() + 2 - below);
    e.set(t, 2 * prm.k() - below);
  } else {
    e.set(t, 3 * prm.k() + 2 - 2 * below);
  }
  check_conservation(prm, e);
  return e;
}

}  // namespace cyclo
