#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/field.hpp"
#include "cyclo/matrix.hpp"

namespace cyclo {

/// Adjacency lists of Cay(K, S): y is adjacent to x iff x - y lies in S.
/// Vertices are field element indices.
inline std::vector<std::vector<std::uint32_t>> neighbors(const FieldTable& field) {
  const std::uint64_t q = field.size();
  std::vector<std::vector<std::uint32_t>> adj(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    adj[x].reserve(field.subgroup().size());
    for (auto s : field.subgroup()) adj[x].push_back(field.add(static_cast<FieldTable::Elem>(x), s));
    std::sort(adj[x].begin(), adj[x].end());
  }
  return adj;
}

template <class T = BigInt>
Matrix<T> adjacency(const FieldTable& field) {
  const std::uint64_t q = field.size();
  Matrix<T> a(q, q);
  for (std::uint64_t x = 0; x < q; ++x)
    for (auto s : field.subgroup()) a(x, field.add(static_cast<FieldTable::Elem>(x), s)) = T(1);
  return a;
}

/// L = kI - A.
template <class T = BigInt>
Matrix<T> laplacian(const FieldTable& field) {
  const std::uint64_t q = field.size();
  Matrix<T> l(q, q);
  const T k = T(static_cast<long>(field.k()));
  for (std::uint64_t x = 0; x < q; ++x) {
    l(x, x) = k;
    for (auto s : field.subgroup()) l(x, field.add(static_cast<FieldTable::Elem>(x), s)) -= T(1);
  }
  return l;
}

struct SrgViolation {
  std::string identity;
  std::uint64_t row = 0, col = 0;
  std::int64_t expected = 0, actual = 0;
};

struct SrgReport {
  std::uint64_t v = 0, k = 0;
  std::int64_t lambda = 0, mu = 0;
  bool symmetric = false;
  std::optional<SrgViolation> violation;

  bool passed() const { return symmetric && !violation; }
};

/// Checks A^2 = kI + lambda A + mu (J - I - A) and
/// L (L - (u+v) I) = -uv I + mu J entry by entry, using sparse row products.
/// The second sign is forced by the spectrum {0, u, v} of L.
inline SrgReport verify_srg(const FieldTable& field) {
  const Params& prm = field.params();
  const auto adj = neighbors(field);
  const std::uint64_t q = field.size();
  SrgReport rep;
  rep.v = q;
  rep.k = field.k();
  rep.lambda = prm.lambda().get_si();
  rep.mu = prm.mu().get_si();
  const std::int64_t k = static_cast<std::int64_t>(rep.k);
  const std::int64_t u = prm.u().get_si(), v = prm.v().get_si();

  rep.symmetric = true;
  for (std::uint64_t x = 0; x < q && rep.symmetric; ++x)
    for (auto y : adj[x])
      if (y == x || !std::binary_search(adj[y].begin(), adj[y].end(), static_cast<std::uint32_t>(x)))
        rep.symmetric = false;

  std::vector<std::int64_t> a2(q), l2(q);
  std::vector<std::uint8_t> is_nbr(q);
  for (std::uint64_t x = 0; x < q && !rep.violation; ++x) {
    std::fill(a2.begin(), a2.end(), 0);
    std::fill(l2.begin(), l2.end(), 0);
    std::fill(is_nbr.begin(), is_nbr.end(), 0);
    for (auto y : adj[x]) {
      is_nbr[y] = 1;
      for (auto z : adj[y]) ++a2[z];
    }
    // Row x of L is k e_x - sum_{y ~ x} e_y.
    auto add_l_row = [&](std::uint64_t y, std::int64_t w) {
      l2[y] += w * k;
      for (auto z : adj[y]) l2[z] -= w;
    };
    add_l_row(x, k);
    for (auto y : adj[x]) add_l_row(y, -1);

    for (std::uint64_t z = 0; z < q; ++z) {
      const bool diag = z == x;
      const std::int64_t want_a2 = diag ? k : (is_nbr[z] ? rep.lambda : rep.mu);
      if (a2[z] != want_a2) {
        rep.violation = SrgViolation{"A^2 = kI + lambda A + mu (J - I - A)", x, z, want_a2, a2[z]};
        break;
      }
      const std::int64_t l_xz = diag ? k : (is_nbr[z] ? -1 : 0);
      const std::int64_t lhs = l2[z] - (u + v) * l_xz;
      const std::int64_t rhs = (diag ? -u * v : 0) + rep.mu;
      if (lhs != rhs) {
        rep.violation = SrgViolation{"L (L - (u+v) I) = -uv I + mu J", x, z, rhs, lhs};
        break;
      }
    }
  }
  return rep;
}

inline void require_srg(const FieldTable& field) {
  const SrgReport rep = verify_srg(field);
  if (!rep.symmetric) throw Error(ErrorCode::SrgViolation, "adjacency matrix is not symmetric");
  if (rep.violation) {
    const auto& v = *rep.violation;
    throw Error(ErrorCode::SrgViolation, v.identity + " fails at (" + std::to_string(v.row) + ", " +
                                             std::to_string(v.col) + "): expected " +
                                             std::to_string(v.expected) + ", got " + std::to_string(v.actual));
  }
}

}  // namespace cyclo
