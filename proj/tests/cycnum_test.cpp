#include <gtest/gtest.h>

#include <random>

#include "acceptcert/cycnum.hpp"

using namespace acceptcert;

namespace {

CycNum random_cyc(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rational> c(static_cast<std::size_t>(n));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return CycNum::make(n, c);
}

}  // namespace

TEST(CycNum, ZetaFourSquaredIsMinusOne) {
  const CycNum z = cyc_make(4, {0, 1});
  EXPECT_EQ(z * z, CycNum(-1));
}

TEST(CycNum, TwiceCosPiOverFourSquaredIsTwo) {
  const CycNum x = CycNum::zeta(8) + CycNum::zeta(8, 7);
  EXPECT_EQ(x * x, CycNum(2));
  EXPECT_EQ(x, CycNum::sqrt2());
}

TEST(CycNum, FifthRootsSumToZero) {
  CycNum s;
  for (int k = 0; k < 5; ++k) s += CycNum::zeta(5, k);
  EXPECT_TRUE(s.is_zero());
}

TEST(CycNum, MakeRejectsBadConductor) {
  EXPECT_THROW(cyc_make(0, {1}), ExactAlgebraError);
  EXPECT_THROW(cyc_make(-3, {1}), ExactAlgebraError);
}

TEST(CycNum, EmbedIntoLargerConductor) {
  const CycNum i8 = cyc_embed(CycNum::i(), 8);
  EXPECT_EQ(i8, CycNum::zeta(8, 2));
  const auto c = i8.coeffs_at(8);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[2], 1);
  EXPECT_EQ(cyc_embed(CycNum(1), 12), CycNum(1));
  const CycNum w = cyc_embed(CycNum::zeta(3), 12);
  EXPECT_EQ(w.pow(3), CycNum(1));
  EXPECT_EQ(w, CycNum::zeta(12, 4));
  EXPECT_THROW(cyc_embed(CycNum::zeta(3), 8), ExactAlgebraError);
}

TEST(CycNum, CanonicalFormIsMinimalConductor) {
  // zeta_6 = -zeta_3^2 lives in Q(zeta_3).
  EXPECT_EQ(CycNum::zeta(6).conductor(), 3);
  EXPECT_EQ((CycNum::zeta(8) * CycNum::zeta(8)).conductor(), 4);
  EXPECT_TRUE((CycNum::zeta(12, 3) * CycNum::zeta(12, 3)).is_rational());
}

TEST(CycNum, CosSinIdentity) {
  for (int m : {1, 2, 3, 4, 5, 6, 8, 12}) {
    for (int k = 0; k < m; ++k) {
      const CycNum c = CycNum::cos2pi(k, m), s = CycNum::sin2pi(k, m);
      EXPECT_EQ(c * c + s * s, CycNum(1)) << k << "/" << m;
      EXPECT_TRUE(c.is_real());
      EXPECT_TRUE(s.is_real());
    }
  }
  EXPECT_EQ(CycNum::cos2pi(1, 6), CycNum(Rational(1, 2)));
  EXPECT_EQ(CycNum::sin2pi(1, 4), CycNum(1));
}

TEST(CycNum, ZetaHasExactOrder) {
  for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 24}) {
    const CycNum z = CycNum::zeta(n);
    CycNum p = z;
    int ord = 1;
    while (!p.is_one()) {
      p *= z;
      ++ord;
      ASSERT_LE(ord, n);
    }
    EXPECT_EQ(ord, n);
  }
}

TEST(CycNum, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(12345);
  for (int n : {1, 3, 4, 5, 8, 12, 20}) {
    for (int trial = 0; trial < 25; ++trial) {
      const CycNum a = random_cyc(rng, n), b = random_cyc(rng, n), c = random_cyc(rng, n);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    }
  }
}

TEST(CycNum, MixedConductorArithmetic) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CycNum a = random_cyc(rng, 3), b = random_cyc(rng, 4), c = random_cyc(rng, 5);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(CycNum, ConjugationProperties) {
  std::mt19937 rng(99);
  for (int n : {3, 4, 5, 8, 12}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CycNum x = random_cyc(rng, n), y = random_cyc(rng, n);
      EXPECT_EQ(x.conj().conj(), x);
      EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
      EXPECT_TRUE((x * x.conj()).is_real());
      EXPECT_TRUE(x.imag_part().is_real());
      EXPECT_EQ(x.real_part() + CycNum::i() * x.imag_part(), x);
    }
  }
}

TEST(CycNum, EmbeddingIsRingHomomorphism) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CycNum x = random_cyc(rng, 5), y = random_cyc(rng, 5);
    const auto lhs = cyc_embed(x + y, 20).coeffs_at(20);
    auto ex = cyc_embed(x, 20).coeffs_at(20), ey = cyc_embed(y, 20).coeffs_at(20);
    for (std::size_t i = 0; i < ex.size(); ++i) ex[i] += ey[i];
    EXPECT_EQ(lhs, ex);
    EXPECT_EQ(cyc_embed(x * y, 20), cyc_embed(x, 20) * cyc_embed(y, 20));
  }
}

TEST(CycNum, ConductorCapIsEnforced) {
  const CycNum a = CycNum::zeta(16), b = CycNum::zeta(17);
  EXPECT_THROW(a * b, ExactAlgebraError);
}

TEST(CycNum, JsonRoundTrip) {
  std::mt19937 rng(3);
  for (int n : {1, 3, 4, 7, 8, 12}) {
    const CycNum x = random_cyc(rng, n);
    const auto j = x.to_json();
    EXPECT_EQ(CycNum::from_json(j), x);
    EXPECT_EQ(CycNum::from_json(j).to_json().dump(), j.dump());
  }
  const auto j = (CycNum(1) / CycNum(2)).to_json();
  EXPECT_EQ(j.dump(), R"({"n":1,"c":["1/2"]})");
  EXPECT_THROW(CycNum::from_json(nlohmann::ordered_json::parse(R"({"n":4})")),
               ExactAlgebraError);
  EXPECT_THROW(CycNum::from_json(nlohmann::ordered_json::parse(R"({"n":0,"c":["1"]})")),
               ExactAlgebraError);
  EXPECT_THROW(parse_rational("1/0"), ExactAlgebraError);
  EXPECT_THROW(parse_rational("abc"), ExactAlgebraError);
}

TEST(CycNum, OrderIsTotalAndDeterministic) {
  const CycNum a = CycNum::zeta(4), b = -CycNum::zeta(4);
  EXPECT_NE(a <=> b, std::strong_ordering::equal);
  EXPECT_EQ((a <=> b) == std::strong_ordering::less, (b <=> a) == std::strong_ordering::greater);
}
