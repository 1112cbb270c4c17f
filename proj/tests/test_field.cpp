#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cyclo/field.hpp"

using namespace cyclo;

namespace {

void check_field(const FieldTable& f) {
  const std::uint64_t q = f.size();
  std::set<FieldTable::Elem> seen;
  for (std::uint64_t e = 0; e < q - 1; ++e) seen.insert(f.power_of_generator(static_cast<std::int64_t>(e)));
  EXPECT_EQ(seen.size(), q - 1);
  EXPECT_EQ(seen.count(0), 0u);
  for (FieldTable::Elem x = 1; x < q; ++x) {
    EXPECT_EQ(f.power_of_generator(static_cast<std::int64_t>(f.dlog(x))), x);
    EXPECT_EQ(f.mul(x, f.inv(x)), 1u);
    EXPECT_EQ(f.add(x, f.neg(x)), 0u);
  }
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    const auto a = static_cast<FieldTable::Elem>(rng() % q), b = static_cast<FieldTable::Elem>(rng() % q),
               c = static_cast<FieldTable::Elem>(rng() % q);
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    EXPECT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
    EXPECT_EQ(f.add(a, b), f.add(b, a));
  }
  // p * 1 = 0
  FieldTable::Elem s = 0;
  for (std::uint64_t i = 0; i < f.p(); ++i) s = f.add(s, 1);
  EXPECT_EQ(s, 0u);
}

}  // namespace

TEST(Field, AxiomsSmall) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}, {2, 3, 3}, {2, 3, 4}, {2, 11, 1}, {11, 3, 1}}) {
    SCOPED_TRACE(testing::Message() << p << "," << ell << "," << t);
    check_field(FieldTable(Params::validate(p, ell, t)));
  }
}

TEST(Field, ModulusIsIrreducible) {
  const FieldTable f(Params::validate(3, 5, 1));
  polymod::Poly m(f.modulus().begin(), f.modulus().end());
  m.push_back(1);
  EXPECT_TRUE(polymod::is_irreducible(m, 3));
  EXPECT_FALSE(polymod::is_irreducible({1, 0, 1}, 2));  // x^2 + 1 = (x + 1)^2
  EXPECT_TRUE(polymod::is_irreducible({1, 1, 1}, 2));
}

TEST(Field, Cosets) {
  const FieldTable f(Params::validate(2, 3, 2));
  const auto alpha = f.generator();
  EXPECT_EQ(f.coset_index(1), 0u);
  EXPECT_EQ(f.coset_index(alpha), 1u);
  EXPECT_EQ(f.coset_index(f.mul(alpha, alpha)), 2u);
  EXPECT_TRUE(f.in_subgroup(1));
  EXPECT_EQ(f.subgroup().size(), 5u);
  for (auto s : f.subgroup()) EXPECT_TRUE(f.in_subgroup(s));
  for (FieldTable::Elem x = 1; x < 16; ++x)
    for (FieldTable::Elem y = 1; y < 16; ++y)
      EXPECT_EQ(f.coset_index(f.mul(x, y)), (f.coset_index(x) + f.coset_index(y)) % 3);
}

TEST(Field, MinusOneInSubgroup) {
  for (auto [p, ell, t] : {std::tuple{2, 3, 2}, {5, 3, 1}, {3, 5, 1}, {5, 3, 2}}) {
    const FieldTable f(Params::validate(p, ell, t));
    EXPECT_TRUE(f.in_subgroup(f.neg(1)));
  }
}

TEST(Field, Errors) {
  const FieldTable f(Params::validate(5, 3, 1));
  EXPECT_THROW(f.inv(0), Error);
  EXPECT_THROW(f.dlog(0), Error);
  try {
    FieldTable big(Params::validate(2, 3, 10), 1024);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundExceeded);
  }
}
