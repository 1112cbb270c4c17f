#include <gtest/gtest.h>

#include <random>

#include "cyclo/galois_ring.hpp"

using namespace cyclo;

namespace {

struct Ctx {
  FieldTable field;
  GaloisRing ring;
  Ctx(std::uint64_t p, std::uint64_t ell, std::uint64_t t, std::uint64_t n)
      : field(Params::validate(p, ell, t)), ring(field, n) {}
};

}  // namespace

TEST(Galois, RingBasics) {
  Ctx c(2, 3, 2, 8);
  const auto& r = c.ring;
  EXPECT_EQ(r.characteristic(), 256u);
  EXPECT_EQ(r.valuation(r.from_integer(2)), RingValuation(1));
  EXPECT_EQ(r.valuation(r.from_integer(-12)), RingValuation(2));
  EXPECT_EQ(r.valuation(r.one()), RingValuation(0));
  EXPECT_EQ(r.valuation(r.zero()), std::nullopt);
  EXPECT_EQ(r.valuation(r.from_integer(256)), std::nullopt);
  EXPECT_EQ(to_string(std::nullopt), ">=N");
  std::mt19937_64 rng(1);
  for (int n = 0; n < 200; ++n) {
    const auto x = static_cast<FieldTable::Elem>(1 + rng() % 15);
    GaloisRingElem u = r.lift(x);
    u = r.add(u, r.scale(r.lift(static_cast<FieldTable::Elem>(rng() % 16)), 2));
    EXPECT_EQ(r.mul(u, r.inverse(u)), r.one());
    EXPECT_EQ(r.reduce(u), x);
  }
  EXPECT_THROW(GaloisRing(c.field, 0), Error);
  EXPECT_THROW(GaloisRing(c.field, 70), Error);
}

TEST(Galois, Teichmuller) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}}) {
    Ctx c(p, ell, t, 6);
    const auto& r = c.ring;
    const std::uint64_t q = c.field.size();
    EXPECT_EQ(r.teichmuller(1), r.one());
    for (FieldTable::Elem x = 1; x < q; ++x) {
      const auto& w = r.teichmuller(x);
      EXPECT_EQ(r.reduce(w), x);
      EXPECT_EQ(r.pow(w, q), w);
      EXPECT_EQ(r.teichmuller_iterate(x), w);
      for (FieldTable::Elem y = 1; y < q; y += 3) EXPECT_EQ(r.mul(w, r.teichmuller(y)), r.teichmuller(c.field.mul(x, y)));
    }
    EXPECT_EQ(r.omega_power(static_cast<std::int64_t>(q - 1)), r.one());
    EXPECT_THROW(r.teichmuller(0), Error);
  }
}

TEST(Galois, JacobiConventions) {
  Ctx c(5, 3, 1, 6);
  const auto& r = c.ring;
  const std::int64_t q = 25, k = 8;
  for (std::int64_t a = 1; a < q - 1; ++a) {
    EXPECT_EQ(r.jacobi_sum(a, 0), r.zero()) << a;
    EXPECT_EQ(r.jacobi_sum(a, q - 1), r.from_integer(-1)) << a;
  }
  EXPECT_EQ(r.jacobi_sum(0, 0), r.from_integer(q));
  for (std::int64_t m = 1; m < 3; ++m) EXPECT_EQ(r.jacobi_sum(-m * k, m * k), r.from_integer(-1));
}

TEST(Galois, JacobiSymmetryAndNorm) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}}) {
    Ctx c(p, ell, t, 8);
    const auto& r = c.ring;
    const auto m = static_cast<std::int64_t>(c.field.size() - 1);
    for (std::int64_t a = 1; a < m; a += 2)
      for (std::int64_t b = 1; b < m; b += 3) {
        const auto j = r.jacobi_sum(a, b);
        EXPECT_EQ(j, r.jacobi_sum(b, a));
        if ((a + b) % m != 0) {
          EXPECT_EQ(r.mul(j, r.jacobi_sum(-a, -b)), r.from_integer(m + 1)) << a << " " << b;
        }
      }
  }
}

TEST(Galois, JacobiValuationExample) {
  Ctx c(2, 3, 2, 8);
  EXPECT_EQ(c.ring.valuation(c.ring.jacobi_sum(-3, -5)), RingValuation(3));
}

TEST(Galois, Stickelberger) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}}) {
    Ctx c(p, ell, t, GaloisRing::default_precision(Params::validate(p, ell, t)));
    const auto rep = stickelberger_check(c.ring);
    EXPECT_TRUE(rep.passed()) << rep.failure.value_or("");
    EXPECT_TRUE(rep.exhaustive);
    EXPECT_GT(rep.pairs_checked, 0u);
  }
  Ctx c(2, 3, 2, 4);
  EXPECT_THROW(stickelberger_check(c.ring), Error);
  Ctx s(2, 3, 3, 10);
  const auto rep = stickelberger_check(s.ring, 16, 500, 3);
  EXPECT_FALSE(rep.exhaustive);
  EXPECT_LE(rep.pairs_checked, 500u);
  EXPECT_GT(rep.pairs_checked, 450u);
  EXPECT_TRUE(rep.passed());
}

TEST(Galois, BlocksFiveThreeOne) {
  Ctx c(5, 3, 1, 6);
  const Params& prm = c.field.params();
  const CarryEngine eng(prm);
  for (std::uint64_t i = 1; i < 8; ++i) {
    const auto v = local_smith_valuations(c.ring, block_L(c.ring, i));
    if (eng.min_profile(i) == 0)
      EXPECT_EQ(v, (std::vector<RingValuation>{0, 1, 2})) << i;
    else
      EXPECT_EQ(v, (std::vector<RingValuation>{1, 1, 1})) << i;
  }
  EXPECT_EQ(local_smith_valuations(c.ring, block_L0(c.ring)), (std::vector<RingValuation>{0, 0, 1, std::nullopt}));
  EXPECT_THROW(block_L(c.ring, 0), Error);
  EXPECT_THROW(block_L(c.ring, 8), Error);
}

TEST(Galois, LaplacianAction) {
  Ctx c(2, 3, 2, 8);
  for (std::uint64_t i = 1; i < 5; ++i) EXPECT_TRUE(laplacian_action_check(c.ring, i));
}

TEST(Galois, BlockSnfAndMultiplicities) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}, {2, 3, 3}}) {
    const Params prm = Params::validate(p, ell, t);
    Ctx c(p, ell, t, GaloisRing::default_precision(prm));
    const auto reports = block_snf_check(c.ring, 2);
    for (const auto& r : reports) EXPECT_TRUE(r.passed()) << prm << " block " << r.index;
    EXPECT_EQ(block_p_multiplicities(reports), theorem_m(prm)) << prm;
  }
  Ctx low(2, 3, 2, 5);
  EXPECT_THROW(block_snf_check(low.ring), Error);
}
