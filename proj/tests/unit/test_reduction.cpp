#include <gtest/gtest.h>

#include <random>

#include "expderham/error.hpp"
#include "expderham/reduction/reduction.hpp"

using namespace expderham;

namespace {
ExactComplex q(const char* s) { return ExactComplex::parse(s); }
LaurentData mono(const char* c, int e) { return LaurentData::monomial(q(c), e); }

LaurentData random_laurent(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::map<int, ExactComplex> c;
  for (int e = lo; e <= hi; ++e) c.emplace(e, ExactComplex(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
  return LaurentData(std::move(c));
}
}  // namespace

TEST(ReducePoly, Examples) {
  auto a = reduce_poly(Poly({q("1")}), 1);
  EXPECT_EQ(a.primitive, mono("1", 0));
  EXPECT_TRUE(a.all_zero());
  auto b = reduce_poly(Poly({q("0"), q("0"), q("1")}), 3);
  EXPECT_EQ(b.primitive, mono("1/3", 0));
  EXPECT_TRUE(b.all_zero());
  auto c = reduce_poly(Poly({q("0"), q("1")}), 1);
  EXPECT_EQ(c.primitive, mono("1", 1) + mono("-1", 0));
  EXPECT_TRUE(c.all_zero());
}

TEST(ReduceLaurent, Examples) {
  auto a = reduce_laurent(mono("1", -2), 2);
  EXPECT_EQ(a.canonical.at(0), q("2"));
  EXPECT_EQ(a.canonical.at(-1), q("0"));
  EXPECT_EQ(a.primitive[-1], q("-1"));
  auto b = reduce_laurent(mono("1", -1), 2);
  EXPECT_EQ(b.canonical.at(-1), q("1"));
  EXPECT_TRUE(b.primitive.empty());
  auto c = reduce_laurent(mono("1", -4), 2);
  EXPECT_EQ(c.canonical.at(0), q("4/3"));
}

TEST(ReduceLaurent, RoundTripExact) {
  std::mt19937_64 rng(2024);
  for (int d = 1; d <= 6; ++d)
    for (int sign : {1, -1})
      for (int trial = 0; trial < 10; ++trial) {
        const LaurentData g = random_laurent(rng, -12, 12);
        const auto r = reduce_laurent(g, d, sign);
        EXPECT_TRUE(reduction_residual(g, r).empty()) << d << " " << sign;
        for (const auto& [j, c] : r.canonical) EXPECT_TRUE(j >= -1 && j <= d - 2);
      }
}

TEST(ReduceLaurent, BasisAndLinearity) {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 5; ++d) {
    for (int j = -1; j <= d - 2; ++j) {
      const auto r = reduce_laurent(mono("1", j), d);
      for (const auto& [i, c] : r.canonical) EXPECT_EQ(c, ExactComplex(i == j ? 1 : 0));
    }
    const LaurentData g1 = random_laurent(rng, -6, 6), g2 = random_laurent(rng, -6, 6);
    const ExactComplex a = q("3/2-i"), b = q("-2/5");
    const auto r = reduce_laurent(a * g1 + b * g2, d);
    const auto r1 = reduce_laurent(g1, d), r2 = reduce_laurent(g2, d);
    for (int j = -1; j <= d - 2; ++j) EXPECT_EQ(r.canonical.at(j), a * r1.canonical.at(j) + b * r2.canonical.at(j));
  }
}

TEST(AlphaBeta, Examples) {
  for (int d = 1; d <= 6; ++d) EXPECT_EQ(alpha_beta(1, 2, d).first, Rational(-1));
  EXPECT_EQ(alpha_beta(0, 2, 2).second, Rational(2));
  EXPECT_EQ(alpha_beta(2, 2, 2).first, Rational(0));
  EXPECT_EQ(alpha_beta(0, 4, 2).second, Rational(4, 3));
  EXPECT_THROW(alpha_beta(0, 1, 2), DomainError);
}

TEST(AlphaBeta, MatchesChains) {
  for (int d = 1; d <= 6; ++d)
    for (int sign : {1, -1})
      for (int k = 2; k <= 40; ++k) {
        const auto r = reduce_laurent(mono("1", -k), d, sign);
        for (int j = -1; j <= d - 2; ++j) EXPECT_EQ(ExactComplex(alpha_beta(j, k, d, sign).second), r.canonical.at(j));
        for (int j = 1; j <= k; ++j) EXPECT_EQ(ExactComplex(alpha_beta(j, k, d, sign).first), r.primitive[-j]);
      }
}

TEST(ReduceGerm, Threshold) {
  LaurentData g(std::map<int, ExactComplex>{{-2, q("1")}}, TailBound{1.0, 1.0});
  EXPECT_EQ(minimal_truncation(1.0, 2), 10);
  try {
    reduce_germ(g, 2, 5);
    FAIL();
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.minimal(), 10);
  }
}

TEST(ReduceGerm, VacuousTailMatchesLaurent) {
  const LaurentData stored(std::map<int, ExactComplex>{{-3, q("1/2")}, {1, q("2")}});
  LaurentData g(stored.coeffs(), TailBound{1e-300, 1.0}, 3);
  const auto a = reduce_germ(g, 2, 12), b = reduce_laurent(stored, 2);
  EXPECT_EQ(a.canonical, b.canonical);
  for (const auto& [j, e] : a.truncation_error) EXPECT_LT(e, 1e-290);
  const auto z = reduce_germ(LaurentData({}, TailBound{1e-300, 1.0}), 2, 12);
  EXPECT_TRUE(z.all_zero());
}

TEST(ReduceGerm, TwoTruncationsAgree) {
  std::map<int, ExactComplex> c;
  for (int k = 1; k <= 80; ++k) c.emplace(-k, ExactComplex(Rational(mpz_class(1), mpz_class(1) << k)));
  LaurentData g(c, TailBound{1.0, 0.5});
  const auto a = reduce_germ(g, 2, 40), b = reduce_germ(g, 2, 80);
  for (int j = -1; j <= 0; ++j) {
    const double diff = (a.canonical.at(j) - b.canonical.at(j)).abs();
    EXPECT_LE(diff, a.truncation_error.at(j) + b.truncation_error.at(j));
    EXPECT_LE(b.truncation_error.at(j), a.truncation_error.at(j));
  }
  double prev = INFINITY;
  for (int n = 4; n <= 90; n += 3) {
    const double e = reduce_germ(g, 2, n).truncation_error.at(0);
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(ExactLocal, Classification) {
  // d(z e^{z^2}) = (1 + 2 z^2) e^{z^2} dz
  auto a = is_exact_local(ExpDifferential::local(1, 2, mono("1", 0) + mono("2", 2)));
  EXPECT_EQ(a.status, Exactness::exact);
  EXPECT_EQ(a.reduction.primitive, mono("1", 1));
  auto b = is_exact_local(ExpDifferential::local(1, 2, mono("1", -1)));
  EXPECT_EQ(b.status, Exactness::not_exact);
  EXPECT_EQ(b.nonzero.at(-1), q("1"));
  auto c = is_exact_local(ExpDifferential::local(1, 2, mono("1", -2)));
  EXPECT_EQ(c.status, Exactness::not_exact);
  EXPECT_EQ(c.nonzero.at(0), q("2"));
}

TEST(ExactLocal, UndecidedInsideBand) {
  LaurentData g(std::map<int, ExactComplex>{{-2, q("1/1000000000000")}}, TailBound{1.0, 1.0});
  auto r = is_exact_local(ExpDifferential::local(1, 2, g), 12);
  EXPECT_EQ(r.status, Exactness::undecided);
}

TEST(ExactLocal, RationalCoefficient) {
  // 1/(z - 1/2) = z^{-1} + (1/2) z^{-2} + ...; c_{-1} = 1 for d = 1.
  const RationalFunction r(Poly::constant(1), Poly::linear_factor(q("1/2")));
  ExpDifferential w{LocalExpType(1, 1), r};
  auto e = is_exact_local(w);
  EXPECT_EQ(e.status, Exactness::not_exact);
  EXPECT_TRUE(e.nonzero.count(-1));
}
