#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expderham/error.hpp"
#include "expderham/localperiods/periods.hpp"
#include "expderham/reduction/reduction.hpp"

using namespace expderham;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
ExactComplex q(const char* s) { return ExactComplex::parse(s); }
LaurentData mono(const char* c, int e) { return LaurentData::monomial(q(c), e); }

LaurentData random_laurent(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  std::map<int, ExactComplex> c;
  for (int e = lo; e <= hi; ++e) c.emplace(e, ExactComplex(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
  return LaurentData(std::move(c));
}
}  // namespace

TEST(RayMoment, Values) {
  EXPECT_NEAR(std::abs(ray_moment(0, 0, 2) - 0.5 * kSqrtPi), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ray_moment(1, 0, 2) + 0.5 * kSqrtPi), 0.0, 1e-15);
  EXPECT_THROW(ray_moment(0, 0, 1), DomainError);
}

TEST(RowSum, Identity) {
  for (int d : {2, 3, 5, 8}) EXPECT_TRUE(row_sum_identity_check(d));
}

TEST(PeriodMatrix, SmallCases) {
  auto p1 = period_matrix(1);
  EXPECT_NEAR(std::abs(p1.entries(0, 0) - Complex(0.0, 2 * kPi)), 0.0, 1e-15);
  const Complex expect(0.0, -2 * kPi * kSqrtPi);
  EXPECT_NEAR(std::abs(period_matrix(2).determinant() - expect), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(det_pi_closed_form(2) - expect), 0.0, 1e-12);
}

TEST(PeriodMatrix, DeterminantMatchesProduct) {
  for (int d = 1; d <= 8; ++d) {
    const Complex det = period_matrix(d).determinant();
    EXPECT_GT(std::abs(det), 0.0);
    EXPECT_NEAR(std::abs(det) / std::abs(det_pi_closed_form(d)), 1.0, 1e-9) << d;
  }
}

TEST(PeriodMatrix, LogColumnIsArcAngle) {
  // The gamma_k period of z^{-1} e^{-z^d} dz is 2 pi i k / d for every radius.
  for (int d = 2; d <= 6; ++d) {
    const auto pm = period_matrix(d);
    for (int k = 1; k < d; ++k) EXPECT_NEAR(std::abs(pm.entries(k, 0) - Complex(0.0, 2 * kPi * k / d)), 0.0, 1e-9);
    const auto quad = period_matrix_quadrature(d, 0.7);
    EXPECT_LE((quad.entries - pm.entries).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LocalPeriodMap, Examples) {
  auto a = local_period_map(ExpDifferential::local(-1, 2, mono("1", -1)), PeriodMode::both);
  EXPECT_NEAR(std::abs(a.values[0] - Complex(0.0, 2 * kPi)), 0.0, 1e-12);
  auto b = local_period_map(ExpDifferential::local(-1, 2, mono("1", 0)), PeriodMode::both);
  EXPECT_NEAR(std::abs(b.values[1] + kSqrtPi), 0.0, 1e-12);
  EXPECT_LT(b.agreement_residual, 1e-7);
  auto c = local_period_map(ExpDifferential::local(-1, 2, mono("1", 0) + mono("-2", 2)), PeriodMode::quadrature);
  for (const auto& v : c.values) EXPECT_NEAR(std::abs(v), 0.0, 1e-10);
}

TEST(LocalPeriodMap, AnalyticMatchesQuadrature) {
  std::mt19937_64 rng(31);
  for (int d = 1; d <= 5; ++d)
    for (int sign : {-1, 1})
      for (int trial = 0; trial < 3; ++trial) {
        const auto w = ExpDifferential::local(sign, d, random_laurent(rng, -5, 5));
        const auto an = local_period_map(w, PeriodMode::analytic);
        const auto qu = local_period_map(w, PeriodMode::quadrature);
        for (int i = 0; i < d; ++i) {
          const double m = std::abs(an.values[i]);
          if (m < 1e-3) continue;
          EXPECT_LE(std::abs(an.values[i] - qu.values[i]), 1e-7 * m) << d << " " << sign << " " << i;
        }
      }
}

TEST(LocalPeriodMap, ExactIffPeriodsVanish) {
  std::mt19937_64 rng(77);
  for (int d = 1; d <= 4; ++d)
    for (int trial = 0; trial < 4; ++trial) {
      // exact: g = F' - d z^{d-1} F for a random Laurent F (h = -z^d)
      const LaurentData F = random_laurent(rng, -3, 3);
      LaurentData g = F.derivative();
      for (const auto& [m, c] : F.coeffs()) g.add(m + d - 1, ExactComplex(-d) * c);
      const auto ex = ExpDifferential::local(-1, d, g);
      EXPECT_EQ(is_exact_local(ex).status, Exactness::exact);
      for (const auto& v : local_period_map(ex, PeriodMode::quadrature).values) EXPECT_LT(std::abs(v), 1e-8);
      LaurentData g2 = g;
      g2.add(std::uniform_int_distribution<int>(-1, d - 2)(rng), q("1/3"));
      const auto nx = ExpDifferential::local(-1, d, g2);
      EXPECT_EQ(is_exact_local(nx).status, Exactness::not_exact);
      double mx = 0.0;
      for (const auto& v : local_period_map(nx, PeriodMode::quadrature).values) mx = std::max(mx, std::abs(v));
      EXPECT_GT(mx, 1e-8);
    }
}

TEST(LocalPeriodMap, RationalCoefficient) {
  // 1/(z - 1/2) against e^{-z}: the circle must enclose the pole; residue e^{-1/2}.
  const RationalFunction r(Poly::constant(1), Poly::linear_factor(q("1/2")));
  ExpDifferential w{LocalExpType(-1, 1), r};
  auto p = local_period_map(w, PeriodMode::both);
  EXPECT_NEAR(std::abs(p.values[0] - Complex(0.0, 2 * kPi * std::exp(-0.5))), 0.0, 1e-9);
  EXPECT_LT(p.agreement_residual, 1e-7);
}
