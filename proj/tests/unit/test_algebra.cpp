#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expderham/algebra/gamma.hpp"
#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"

using namespace expderham;

namespace {
ExactComplex q(const char* s) { return ExactComplex::parse(s); }
Poly z_poly() { return Poly({ExactComplex(0), ExactComplex(1)}); }
}  // namespace

TEST(Exact, ParseAndPrint) {
  EXPECT_EQ(q("3/6").str(), "1/2");
  EXPECT_EQ(q("1/2-3/4i").im(), Rational(-3, 4));
  EXPECT_EQ(q("-i"), ExactComplex(0, -1));
  EXPECT_EQ(q("2i").str(), "2i");
  EXPECT_EQ(q("-1+i").str(), "-1+i");
  EXPECT_THROW(q("1/0"), InputError);
  EXPECT_THROW(q("abc"), InputError);
  EXPECT_THROW(ExactComplex(1) / ExactComplex(0), DomainError);
  EXPECT_EQ(pow(ExactComplex::i(), 3), ExactComplex(0, -1));
  EXPECT_EQ(pow(ExactComplex(2), -2), q("1/4"));
}

TEST(Poly, DivmodAndGcd) {
  const Poly a = Poly({q("-1"), q("0"), q("1")});  // z^2 - 1
  const Poly b = Poly({q("-1"), q("1")});
  auto [qq, r] = a.divmod(b);
  EXPECT_EQ(qq, Poly({q("1"), q("1")}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, b * b), b);
  EXPECT_EQ(a.shifted(q("1")), Poly({q("0"), q("2"), q("1")}));
}

TEST(Poly, SquarefreeDecomposition) {
  const Poly l1 = Poly::linear_factor(q("1")), l2 = Poly::linear_factor(q("i"));
  const auto f = squarefree_decomposition(q("3") * (l1 * l2 * l2 * l2));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], l1);
  EXPECT_EQ(f[1].degree(), 0);
  EXPECT_EQ(f[2], l2);
}

TEST(Gamma, KnownValues) {
  EXPECT_NEAR(gamma_real(0.5), 1.7724538509055160, 1.7724538509055160 * 1e-12);
  EXPECT_DOUBLE_EQ(gamma_real(1.0), 1.0);
  const double p = gamma_real(1.0 / 3.0) * gamma_real(2.0 / 3.0);
  EXPECT_NEAR(p, std::numbers::pi / std::sin(std::numbers::pi / 3.0), 1e-11);
  EXPECT_THROW(gamma_real(0.0), DomainError);
  EXPECT_THROW(gamma_real(1.5), DomainError);
}

TEST(Gamma, ReflectionGrid) {
  for (int k = 1; k < 64; ++k) {
    const double x = k / 64.0;
    const double v = gamma_real(x) * gamma_real(1.0 - x) * std::sin(std::numbers::pi * x) / std::numbers::pi;
    EXPECT_NEAR(v, 1.0, 1e-11) << x;
  }
}

TEST(Gamma, AgainstStdTgamma) {
  for (int k = 1; k <= 100; ++k) {
    const double x = k / 100.0;
    EXPECT_NEAR(gamma_real(x) / std::tgamma(x), 1.0, 1e-12) << x;
  }
}

TEST(Residue, Basic) {
  const RationalFunction inv_z(Poly::constant(1), z_poly());
  EXPECT_NEAR(std::abs(residue_at(inv_z, {0.0, 0.0}) - 1.0), 0.0, 1e-14);
  const RationalFunction inv_z2(Poly::constant(1), z_poly() * z_poly());
  EXPECT_NEAR(std::abs(residue_at(inv_z2, {0.0, 0.0})), 0.0, 1e-14);
  const RationalFunction ez(z_poly());
  EXPECT_NEAR(std::abs(residue_at(inv_z, ez, {0.0, 0.0}) - 1.0), 0.0, 1e-14);
  // e^z/z^3: coefficient z^2/2 of the exponential.
  const RationalFunction inv_z3(Poly::constant(1), z_poly() * z_poly() * z_poly());
  EXPECT_NEAR(std::abs(residue_at(inv_z3, ez, {0.0, 0.0}) - 0.5), 0.0, 1e-14);
}

TEST(Residue, OrderCap) {
  Poly den = Poly::monomial(ExactComplex(1), 70);
  const RationalFunction r(Poly::constant(1), den);
  EXPECT_THROW(residue_at(r, {0.0, 0.0}), ExpansionOrderError);
  EXPECT_THROW(residue_at(RationalFunction(Poly::constant(1)), RationalFunction(), {0, 0}, 65), ExpansionOrderError);
}

TEST(Residue, LinearAndKillsDerivatives) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const ExactComplex p(Rational(c(rng), 3), Rational(c(rng), 2));
    const RationalFunction f = RationalFunction::pole_term(ExactComplex(c(rng), c(rng)), p, 3) +
                               RationalFunction::pole_term(ExactComplex(c(rng)), p, 1);
    const RationalFunction g = RationalFunction::pole_term(ExactComplex(c(rng)), p, 2);
    const Complex pf = p.to_complex();
    EXPECT_NEAR(std::abs(residue_at(f.derivative(), pf)), 0.0, 1e-9);
    const Complex lhs = residue_at(f + RationalFunction::constant(3) * g, pf);
    const Complex rhs = residue_at(f, pf) + 3.0 * residue_at(g, pf);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
  }
}

TEST(Series, LaurentAtPointAndInfinity) {
  const Poly z = z_poly();
  const RationalFunction r(Poly::constant(1), z * (z - Poly::constant(1)));
  const auto at0 = laurent_at(r, ExactComplex(0), 2);
  EXPECT_EQ(at0.at(-1), ExactComplex(-1));
  EXPECT_EQ(at0.at(0), ExactComplex(-1));
  EXPECT_EQ(at0.at(2), ExactComplex(-1));
  const auto atinf = laurent_at_infinity(r, -5);
  EXPECT_EQ(atinf.count(-1), 0u);
  EXPECT_EQ(atinf.at(-2), ExactComplex(1));
  EXPECT_EQ(atinf.at(-5), ExactComplex(1));
  EXPECT_EQ(order_at(r, ExactComplex(1)), -1);
  EXPECT_EQ(order_at_infinity(r), 2);
}

TEST(Series, GermTailBoundHolds) {
  const RationalFunction r(Poly::constant(1), Poly::linear_factor(q("1/2")));
  const LaurentData g = germ_at_infinity(r, 6, 1.0);
  ASSERT_TRUE(g.tail().has_value());
  EXPECT_EQ(g.tail_start(), 6);
  for (int k = 7; k < 40; ++k)
    EXPECT_LE(std::pow(0.5, k - 1), g.tail()->C * std::pow(g.tail()->R, k));
  EXPECT_THROW(germ_at_infinity(r, 6, 0.4), DomainError);
}

TEST(PartialFractions, SimplePoles) {
  const Poly z = z_poly();
  const RationalFunction r(Poly::constant(1), z * z - Poly::constant(1));
  const auto pf = partial_fractions(r);
  ASSERT_EQ(pf.poles.size(), 2u);
  EXPECT_NEAR(std::abs(pf.poles[0].pole + 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(pf.poles[0].coeffs[0] + 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(pf.poles[1].coeffs[0] - 0.5), 0.0, 1e-14);
  // clear denominators: (1/2)(z+1) - (1/2)(z-1) = 1
  const auto ex = partial_fractions_exact(r, {q("1"), q("-1")});
  EXPECT_EQ(ex.poles[0].coeffs[0], q("1/2"));
  EXPECT_EQ(ex.poles[1].coeffs[0], q("-1/2"));
  EXPECT_EQ(ex.to_rational(), r);
}

TEST(PartialFractions, PolynomialAndDivision) {
  const Poly z = z_poly();
  const auto pf = partial_fractions(RationalFunction(z * z + Poly::constant(3)));
  EXPECT_TRUE(pf.poles.empty());
  EXPECT_EQ(pf.polynomial.degree(), 2);
  const auto ex = partial_fractions_exact(RationalFunction(z * z + Poly::constant(1), z), {q("0")});
  EXPECT_EQ(ex.polynomial, z);
  EXPECT_EQ(ex.poles[0].coeffs[0], q("1"));
}

TEST(PartialFractions, RepeatedPolesResample) {
  const Poly l1 = Poly::linear_factor(q("1/2+i")), l2 = Poly::linear_factor(q("-2"));
  const RationalFunction r(Poly({q("1"), q("2"), q("0"), q("1")}), l1 * l1 * l1 * l2);
  const auto pf = partial_fractions(r);
  EXPECT_LT(pf.residual, 1e-12);
  const auto ex = partial_fractions_exact(r, {q("1/2+i"), q("-2")});
  EXPECT_EQ(ex.to_rational(), r);
  for (const auto& pp : pf.poles)
    for (const auto& ep : ex.poles)
      if (std::abs(pp.pole - ep.pole.to_complex()) < 1e-8)
        for (std::size_t k = 0; k < pp.coeffs.size(); ++k)
          EXPECT_NEAR(std::abs(pp.coeffs[k] - ep.coeffs[k].to_complex()), 0.0, 1e-8);
  EXPECT_THROW(partial_fractions_exact(r, {q("-2")}), InputError);
}
