#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "expderham/error.hpp"
#include "expderham/model/differential.hpp"

using namespace expderham;

namespace {
constexpr double kPi = std::numbers::pi;
ExactComplex q(const char* s) { return ExactComplex::parse(s); }
Poly z_poly() { return Poly({ExactComplex(0), ExactComplex(1)}); }
}  // namespace

TEST(Ramification, Monomials) {
  auto a = ramification_directions(LocalExpType(1, 2));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_NEAR(a[0].direction, kPi / 2, 1e-15);
  EXPECT_NEAR(a[1].direction, 3 * kPi / 2, 1e-15);
  auto b = ramification_directions(LocalExpType(-1, 1));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(b[0].direction, 0.0, 1e-15);
  auto c = ramification_directions(LocalExpType(-1, 3));
  ASSERT_EQ(c.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(c[j].direction, 2 * kPi * j / 3, 1e-14);
    EXPECT_EQ(c[j].sheet, j);
  }
}

TEST(Ramification, SeparatedAndDecaying) {
  for (int d = 1; d <= 7; ++d)
    for (int s : {1, -1}) {
      const auto w = ramification_directions(LocalExpType(s, d));
      for (int j = 0; j < d; ++j) {
        if (j > 0) EXPECT_NEAR(w[j].direction - w[j - 1].direction, 2 * kPi / d, 1e-13);
        // Re(s z^d) at unit modulus on the ray is -1.
        EXPECT_NEAR(s * std::cos(d * w[j].direction), -1.0, 1e-12);
      }
    }
}

TEST(Ramification, FinitePuncture) {
  // h = -1/z at 0: e^{-1/z} decays as z -> 0 along the positive axis.
  GlobalExpType t{{Puncture{ExactComplex(0), Poly({q("0"), q("-1")})}}};
  const auto w = ramification_directions(t, 0);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NEAR(w[0].direction, 0.0, 1e-15);
  const RationalFunction h = t.H();
  EXPECT_LT(std::real(h(Complex(1e-2, 0.0))), -50.0);
}

TEST(StandardCurves, Shapes) {
  auto c1 = standard_local_curves(LocalExpType(-1, 1));
  EXPECT_TRUE(c1.gamma_k.empty());
  auto c2 = standard_local_curves(LocalExpType(-1, 2));
  ASSERT_EQ(c2.gamma_k.size(), 1u);
  const auto& g = c2.gamma_k[0];
  ASSERT_EQ(g.pieces.size(), 3u);
  const auto& in = std::get<Ray>(g.pieces[0]);
  EXPECT_TRUE(in.inward);
  EXPECT_NEAR(in.theta, 0.0, 1e-15);
  const auto& arc = std::get<Arc>(g.pieces[1]);
  EXPECT_NEAR(arc.theta2, kPi, 1e-15);
  EXPECT_NEAR(std::get<Ray>(g.pieces[2]).theta, kPi, 1e-15);
  EXPECT_NO_THROW(validate(g));
  auto c3 = standard_local_curves(LocalExpType(-1, 3));
  ASSERT_EQ(c3.gamma_k.size(), 2u);
  EXPECT_NEAR(std::get<Ray>(c3.gamma_k[1].pieces[2]).theta, 4 * kPi / 3, 1e-14);
}

TEST(StandardCurves, RadiusPerturbation) {
  auto c = standard_local_curves(LocalExpType(-1, 2), 1.0, {Complex(0.0, 1.0)});
  EXPECT_NEAR(c.rho, 1.1, 1e-15);
  EXPECT_THROW(standard_local_curves(LocalExpType(-1, 2), 1.0, {Complex(3.0, 0.0)}), PoleOnPathError);
}

TEST(Curve, ValidateAndReverse) {
  CurveSpec c{"c", {Segment{0.0, 1.0}, Segment{1.0, Complex(1.0, 1.0)}}};
  EXPECT_NO_THROW(validate(c));
  const auto r = reversed(c);
  EXPECT_EQ(*piece_start(r.pieces[0]), Complex(1.0, 1.0));
  EXPECT_NO_THROW(validate(r));
  CurveSpec broken{"b", {Segment{0.0, 1.0}, Segment{2.0, 3.0}}};
  EXPECT_THROW(validate(broken), InputError);
  RamificationPoint w{0, 0, 0.0, 2};
  CurveSpec edge{"e", {Ray{{0.0, 0.0}, kPi / 4 + 0.01, 1.0, RayEnd::infinity, false, w}}};
  EXPECT_THROW(validate(edge), DomainError);
}

TEST(Convention, RotationMapsBasis) {
  // z^{-1} dz is rotation invariant; z^0 dz picks up zeta.
  LaurentData g(std::map<int, ExactComplex>{{-1, q("1")}, {0, q("1")}});
  auto r = rotate_convention(g, 2);
  EXPECT_NEAR(std::abs(r.at(-1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.at(0) - Complex(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Divisor, Examples) {
  GlobalExpType t{{Puncture{std::nullopt, Poly({q("0"), q("1")})}}};
  const Poly z = z_poly();
  EXPECT_EQ(divisor_degree(RationalFunction(z - Poly::constant(1), z - Poly::constant(2)), t), 0);
  EXPECT_EQ(divisor_degree(RationalFunction(Poly::constant(1)), t), 0);
  EXPECT_THROW(divisor_degree(RationalFunction(), t), DomainError);
}

TEST(Divisor, RandomRationalDegreeZero) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4), deg(0, 5);
  GlobalExpType t{{Puncture{std::nullopt, Poly({q("0"), q("0"), q("-1")})},
                   Puncture{ExactComplex(0), Poly({q("0"), q("1")})}}};
  for (int trial = 0; trial < 50; ++trial) {
    auto rp = [&] {
      std::vector<ExactComplex> v;
      const int n = deg(rng);
      for (int i = 0; i <= n; ++i) v.emplace_back(Rational(c(rng)), Rational(c(rng)));
      v.back() += ExactComplex(5);
      return Poly(v);
    };
    EXPECT_EQ(divisor_degree(RationalFunction(rp(), rp()), t), 0);
  }
}

TEST(SecondKind, ResidueCheck) {
  GlobalExpType t{{Puncture{std::nullopt, Poly({q("0"), q("0"), q("-1")})}}};
  const Poly z = z_poly();
  const RationalFunction inv(Poly::constant(1), z - Poly::constant(1));
  EXPECT_FALSE(second_kind_report(inv, t).second_kind);
  // (z-1)^{-2} - H'(1) (z-1)^{-1} has zero residue against e^{-z^2}.
  const RationalFunction ok = RationalFunction::pole_term(q("1"), q("1"), 2) + RationalFunction::pole_term(q("2"), q("1"), 1);
  EXPECT_TRUE(second_kind_report(ok, t).second_kind);
  EXPECT_TRUE(is_holomorphic_off_punctures(RationalFunction(z), t));
  EXPECT_FALSE(is_holomorphic_off_punctures(inv, t));
}
