#include <gtest/gtest.h>

#include <optional>
#include <set>

#include "cyclo/carries.hpp"

using namespace cyclo;

namespace {

std::optional<std::uint64_t> carry_or_none(const CarryEngine& eng, std::int64_t a, std::int64_t b) {
  try {
    return eng.carry_count(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Carries, Digits) {
  const Params p531 = Params::validate(5, 3, 1), p232 = Params::validate(2, 3, 2);
  auto d = digits_mod(1, p232);
  EXPECT_EQ(d.digits, (std::vector<std::uint32_t>{1, 0, 0, 0}));
  EXPECT_EQ(d.digit_sum(), 1u);
  d = digits_mod(8, p531);
  EXPECT_EQ(d.digits, (std::vector<std::uint32_t>{3, 1}));
  EXPECT_EQ(d.digit_sum(), 4u);
  d = digits_mod(14, p232);
  EXPECT_EQ(d.digits, (std::vector<std::uint32_t>{0, 1, 1, 1}));
  EXPECT_EQ(d.digit_sum(), 3u);
  d = digits_mod(-1, p232);
  EXPECT_EQ(d.value, 14u);
  EXPECT_THROW(digits_mod(15, p232), Error);
}

TEST(Carries, CountExamples) {
  const Params p232 = Params::validate(2, 3, 2), p531 = Params::validate(5, 3, 1);
  EXPECT_EQ(carry_count(3, 5, p232), 3u);
  EXPECT_EQ(carry_count(1, 2, p531), 0u);
  try {
    carry_count(3, 12, p232);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedSum);
  }
  try {
    carry_count(0, 1, p232);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroResidue);
  }
}

TEST(Carries, FormulaMatchesCyclicAddition) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}, {2, 3, 3}, {11, 3, 1}}) {
    const CarryEngine eng(Params::validate(p, ell, t));
    const auto m = static_cast<std::int64_t>(eng.modulus());
    for (std::int64_t a = 1; a < m; ++a)
      for (std::int64_t b = 1; b < m; ++b) {
        if ((a + b) % m == 0) continue;
        ASSERT_EQ(eng.carry_count(a, b), eng.carry_count_cyclic(a, b)) << a << " " << b;
        ASSERT_EQ(eng.carry_count(a, b), eng.carry_count(b, a));
        ASSERT_EQ(eng.carry_count(a, b), eng.carry_count(a * static_cast<std::int64_t>(p), b * static_cast<std::int64_t>(p)));
      }
  }
}

TEST(Carries, CosetDigitSum) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}, {2, 3, 3}, {5, 3, 2}, {3, 7, 1}, {2, 11, 1}}) {
    const Params prm = Params::validate(p, ell, t);
    const CarryEngine eng(prm);
    for (std::uint64_t n = 1; n < prm.ell(); ++n)
      EXPECT_EQ(eng.digit_sum(n * eng.k()), eng.coset_digit_sum()) << prm << " n=" << n;
  }
  const CarryEngine e3(Params::validate(5, 3, 1));
  EXPECT_EQ(e3.coset_digit_sum(), 4u);
}

TEST(Carries, CompIdentities) {
  for (auto [p, t] : {std::pair{2, 2}, {5, 1}, {2, 3}, {11, 1}, {5, 2}}) {
    const Params prm = Params::validate(p, 3, t);
    const CarryEngine eng(prm);
    const auto k = static_cast<std::int64_t>(eng.k()), m = static_cast<std::int64_t>(eng.modulus());
    const auto tt = static_cast<std::uint64_t>(t);
    for (std::int64_t j = 1; j < m; ++j)
      for (std::int64_t s : {-1, 1}) {
        const std::int64_t mk = s * k;
        const auto c1 = carry_or_none(eng, j, mk), c2 = carry_or_none(eng, j + mk, -mk),
                   c3 = carry_or_none(eng, j + mk, mk), c4 = carry_or_none(eng, j, -mk),
                   c5 = carry_or_none(eng, -j - mk, mk);
        if (c1 && c2) {
          EXPECT_EQ(*c1 + *c2, 2 * tt) << prm << " j=" << j;
        }
        if (c1 && c3 && c4) {
          EXPECT_EQ(*c1 + *c3, tt + *c4) << prm << " j=" << j;
        }
        if (c1 && c5) {
          EXPECT_EQ(*c1, *c5) << prm << " j=" << j;
        }
      }
  }
}

// |R_a| = |Y_a| - |{j : g(j) = {a}}| for a < t, with g(j) = {c(j,k), c(j,2k)}.
TEST(Carries, TransversalCounts) {
  for (auto [p, t] : {std::pair{2, 2}, {2, 3}, {5, 2}, {2, 4}}) {
    const Params prm = Params::validate(p, 3, t);
    const CarryEngine eng(prm);
    const auto k = eng.k(), m = eng.modulus();
    const auto counts = min_profile_counts(prm);
    for (std::uint64_t a = 0; a < static_cast<std::uint64_t>(t); ++a) {
      std::uint64_t y = 0, single = 0;
      for (std::uint64_t j = 1; j < m; ++j) {
        if (j == k || j == 2 * k) continue;
        const auto x1 = eng.carry_count(static_cast<std::int64_t>(j), static_cast<std::int64_t>(k));
        const auto x2 = eng.carry_count(static_cast<std::int64_t>(j), static_cast<std::int64_t>(2 * k));
        const std::set<std::uint64_t> g{x1, x2};
        if (*g.begin() == a && *g.rbegin() <= static_cast<std::uint64_t>(t)) ++y;
        if (g == std::set<std::uint64_t>{a}) ++single;
      }
      EXPECT_EQ(counts[a], y - single) << prm << " a=" << a;
    }
  }
}

TEST(Carries, MinProfile) {
  const Params p531 = Params::validate(5, 3, 1), p232 = Params::validate(2, 3, 2);
  std::multiset<std::uint64_t> ms;
  for (std::uint64_t i = 1; i <= 7; ++i) ms.insert(min_profile(i, p531));
  EXPECT_EQ(ms, (std::multiset<std::uint64_t>{0, 0, 0, 0, 0, 0, 1}));
  for (std::uint64_t i = 1; i <= 4; ++i) EXPECT_EQ(min_profile(i, p232), 0u);
  EXPECT_THROW(min_profile(0, p232), Error);
  EXPECT_THROW(min_profile(5, p232), Error);

  // Brute-force definition over all ell (ell-1) translates.
  for (auto [p, ell, t] : {std::tuple{3, 5, 1}, {2, 3, 3}, {3, 7, 1}}) {
    const Params prm = Params::validate(p, ell, t);
    const CarryEngine eng(prm);
    const auto k = static_cast<std::int64_t>(eng.k());
    for (std::int64_t i = 1; i < k; ++i) {
      std::uint64_t best = UINT64_MAX;
      for (std::int64_t mm = 0; mm < static_cast<std::int64_t>(ell); ++mm)
        for (std::int64_t n = 1; n < static_cast<std::int64_t>(ell); ++n)
          best = std::min(best, eng.carry_count_cyclic(i + mm * k, n * k));
      EXPECT_EQ(eng.min_profile(static_cast<std::uint64_t>(i)), best);
      EXPECT_LE(best, prm.half_degree());
    }
  }
}

TEST(Carries, TheoremM) {
  PMultiplicities want;
  want.set(0, 8);
  want.set(1, 10);
  want.set(2, 6);
  EXPECT_EQ(theorem_m(Params::validate(5, 3, 1)), want);

  want = {};
  want.set(0, 6);
  want.set(2, 4);
  want.set(3, 1);
  want.set(5, 4);
  EXPECT_EQ(theorem_m(Params::validate(2, 3, 2)), want);

  const auto e = theorem_m(Params::validate(2, 3, 4));
  EXPECT_EQ(e[0], 30);
  const std::vector<long> tail{32, 8, 16, 84, 1, 16, 8, 32, 28};
  for (std::uint64_t j = 1; j <= 9; ++j) EXPECT_EQ(e[j], tail[j - 1]) << "e_" << j;
}

TEST(Carries, ThreadsAndBounds) {
  const Params prm = Params::validate(3, 5, 2);
  EXPECT_EQ(theorem_m(prm, kDefaultEnumerationBound, 1), theorem_m(prm, kDefaultEnumerationBound, 4));
  try {
    theorem_m(prm, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundExceeded);
  }
  PMultiplicities bad;
  bad.set(0, 1);
  EXPECT_THROW(check_conservation(prm, bad), Error);
}

TEST(Carries, ConservationAcrossFamilies) {
  for (auto [p, ell, t] : {std::tuple{2, 5, 3}, {3, 7, 1}, {5, 7, 1}, {2, 13, 1}, {7, 5, 1}, {13, 5, 1}, {2, 3, 7}}) {
    const Params prm = Params::validate(p, ell, t);
    EXPECT_NO_THROW(theorem_m(prm)) << prm;
  }
}
