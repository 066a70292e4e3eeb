#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expderham/error.hpp"
#include "expderham/quadrature/integrate.hpp"
#include "expderham/quadrature/kernels.hpp"

using namespace expderham;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
ExactComplex q(const char* s) { return ExactComplex::parse(s); }
LaurentData mono(const char* c, int e) { return LaurentData::monomial(q(c), e); }
Ray ray_out(double theta, double rho = 1e-9) { return Ray{{0.0, 0.0}, theta, rho, RayEnd::infinity, false, std::nullopt}; }
}  // namespace

TEST(Integrate, ResidueOnCircle) {
  auto w = ExpDifferential::local(-1, 2, mono("1", -1));
  auto r = integrate(w, CurveSpec{"c", {Circle{{0.0, 0.0}, 1.0, true}}});
  EXPECT_NEAR(std::abs(r.value - Complex(0.0, 2 * kPi)), 0.0, 1e-10);
  EXPECT_LE(r.error_estimate, 1e-10);
}

TEST(Integrate, HalfGaussian) {
  auto w = ExpDifferential::local(-1, 2, mono("1", 0));
  CurveSpec c{"r", {Segment{0.0, 1.0}, ray_out(0.0, 1.0)}};
  auto r = integrate(w, c);
  EXPECT_NEAR(std::abs(r.value - 0.5 * kSqrtPi), 0.0, 1e-10);
  EXPECT_GT(r.truncation_radius, 4.0);
}

TEST(Integrate, ExactFormAlongGamma1) {
  // d(z e^{-z^2}) = (1 - 2 z^2) e^{-z^2} dz
  auto w = ExpDifferential::local(-1, 2, mono("1", 0) + mono("-2", 2));
  const auto curves = standard_local_curves(LocalExpType(-1, 2));
  auto r = integrate(w, curves.gamma_k[0]);
  EXPECT_NEAR(std::abs(r.value), 0.0, 1e-10);
}

TEST(Integrate, Gamma1PeriodOfGaussian) {
  auto w = ExpDifferential::local(-1, 2, mono("1", 0));
  const auto curves = standard_local_curves(LocalExpType(-1, 2));
  auto r = integrate(w, curves.gamma_k[0]);
  EXPECT_NEAR(std::abs(r.value + kSqrtPi), 0.0, 1e-10);
}

TEST(Integrate, Errors) {
  auto w = ExpDifferential::local(-1, 2, mono("1", -1));
  EXPECT_THROW(integrate(w, CurveSpec{"s", {Segment{-1.0, 1.0}}}), PoleOnPathError);
  EXPECT_THROW(integrate(w, CurveSpec{"r", {ray_out(kPi / 2, 1.0)}}), DivergentEndError);
  EXPECT_THROW(integrate(w, CurveSpec{"r", {ray_out(kPi / 4, 1.0)}}), StokesEdgeError);
  QuadratureOptions tiny;
  tiny.budget = 100;
  tiny.tol = 1e-14;
  auto osc = ExpDifferential::local(-1, 1, mono("1", 40));
  EXPECT_THROW(integrate(osc, CurveSpec{"c", {Circle{{0.0, 0.0}, 30.0, true}}}, tiny), BudgetExhaustedError);
}

TEST(Integrate, SplittingAndOrientation) {
  auto w = ExpDifferential::local(-1, 3, mono("1", -2) + mono("3/2", 1));
  const auto curves = standard_local_curves(LocalExpType(-1, 3));
  const auto& g = curves.gamma_k[1];
  auto whole = integrate(w, g);
  CurveSpec a{"a", {g.pieces[0], g.pieces[1]}}, b{"b", {g.pieces[2]}};
  auto pa = integrate(w, a), pb = integrate(w, b);
  EXPECT_LE(std::abs(whole.value - pa.value - pb.value), whole.error_estimate + pa.error_estimate + pb.error_estimate + 1e-14);
  auto rev = integrate(w, reversed(g));
  EXPECT_LE(std::abs(whole.value + rev.value), whole.error_estimate + rev.error_estimate + 1e-14);
}

TEST(Integrate, HomotopyInRadius) {
  auto w = ExpDifferential::local(-1, 3, mono("1", -3) + mono("2", 0) + mono("-1", 4));
  const auto c1 = standard_local_curves(LocalExpType(-1, 3), 1.0);
  const auto c2 = standard_local_curves(LocalExpType(-1, 3), 1.3);
  for (int k = 0; k < 2; ++k) {
    auto a = integrate(w, c1.gamma_k[k]), b = integrate(w, c2.gamma_k[k]);
    EXPECT_LE(std::abs(a.value - b.value), a.error_estimate + b.error_estimate + 1e-14);
  }
}

TEST(Truncation, Radius) {
  auto w = ExpDifferential::local(-1, 2, mono("1", 0));
  const double r = decay_truncation_radius(w, 0.0, 1e-12);
  EXPECT_GT(r, 5.0);
  EXPECT_LT(r, 6.0);
  EXPECT_LT(std::exp(-r * r), 1e-13);
  EXPECT_THROW(decay_truncation_radius(w, kPi / 4, 1e-12), StokesEdgeError);
  auto w3 = ExpDifferential::local(-1, 2, mono("1", 3));
  EXPECT_GT(decay_truncation_radius(w3, 0.0, 1e-12), r);
}

TEST(Integrate, FinitePunctureRay) {
  // int_0^1 e^{-1/z} dz/z^2 along the positive axis = e^{-1}.
  GlobalExpType t{{Puncture{ExactComplex(0), Poly({q("0"), q("-1")})}}};
  const RationalFunction g(Poly::constant(1), Poly::monomial(ExactComplex(1), 2));
  auto w = ExpDifferential::global(t, g);
  CurveSpec c{"p", {Ray{{0.0, 0.0}, 0.0, 1.0, RayEnd::center, true, std::nullopt}}};
  auto r = integrate(w, c);
  EXPECT_NEAR(std::abs(r.value - std::exp(-1.0)), 0.0, 1e-10);
}

TEST(Integrate, AlgebraicEnd) {
  // int_1^inf dz / z^2 = 1 with no exponential at inf.
  auto f = make_rational_integrand(CPoly::constant(1.0), CPoly::monomial(1.0, 2), CPoly(), CPoly::constant(1.0));
  auto r = integrate(f, CurveSpec{"a", {ray_out(0.0, 1.0)}});
  EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-10);
}

TEST(Kernels, AvxMatchesScalar) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "no avx2";
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0), big(-600.0, 600.0), ang(-2e4, 2e4);
  constexpr int n = 1003;
  std::vector<double> zr(n), zi(n), r1(n), i1(n), r2(n), i2(n), w(n);
  for (int k = 0; k < n; ++k) {
    zr[k] = u(rng);
    zi[k] = u(rng);
    w[k] = u(rng);
  }
  std::vector<std::complex<double>> c(9);
  for (auto& x : c) x = {u(rng), u(rng)};
  kernels::scalar::horner(c.data(), 9, zr.data(), zi.data(), r1.data(), i1.data(), n);
  kernels::avx2::horner(c.data(), 9, zr.data(), zi.data(), r2.data(), i2.data(), n);
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(std::complex<double>(r1[k], i1[k])) + 1e-300;
    double scale = 0.0;
    double zp = 1.0;
    for (int j = 0; j < 9; ++j, zp *= std::hypot(zr[k], zi[k])) scale += std::abs(c[j]) * zp;
    EXPECT_LE(std::abs(std::complex<double>(r1[k] - r2[k], i1[k] - i2[k])), 1e-13 * std::max(m, scale));
  }
  for (int k = 0; k < n; ++k) {
    zr[k] = big(rng);
    zi[k] = k % 7 == 0 ? 2e5 : ang(rng);
  }
  kernels::scalar::cexp(zr.data(), zi.data(), r1.data(), i1.data(), n);
  kernels::avx2::cexp(zr.data(), zi.data(), r2.data(), i2.data(), n);
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(std::complex<double>(r1[k], i1[k]));
    EXPECT_LE(std::abs(std::complex<double>(r1[k] - r2[k], i1[k] - i2[k])), 1e-13 * m) << zr[k] << " " << zi[k];
  }
  const auto s1 = kernels::scalar::weighted_sum(w.data(), r1.data(), i1.data(), n);
  const auto s2 = kernels::avx2::weighted_sum(w.data(), r1.data(), i1.data(), n);
  double mag = 0.0;
  for (int k = 0; k < n; ++k) mag += std::abs(w[k]) * std::abs(std::complex<double>(r1[k], i1[k]));
  EXPECT_LE(std::abs(s1 - s2), 1e-13 * mag);
}

TEST(Kernels, ExtremeExponents) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "no avx2";
  std::vector<double> ar = {-699.5, 699.5, -1000.0, 0.0, -708.3, 1e-300, -0.0, 3.0};
  std::vector<double> ai = {0.1, -0.1, 5.0, 1e5 - 1.0, 2.0, 0.0, -kPi, 1e-300};
  std::vector<double> r1(8), i1(8), r2(8), i2(8);
  kernels::scalar::cexp(ar.data(), ai.data(), r1.data(), i1.data(), 8);
  kernels::avx2::cexp(ar.data(), ai.data(), r2.data(), i2.data(), 8);
  for (int k = 0; k < 8; ++k) {
    const double m = std::abs(std::complex<double>(r1[k], i1[k]));
    EXPECT_LE(std::abs(std::complex<double>(r1[k] - r2[k], i1[k] - i2[k])), 1e-13 * m + 1e-320) << k;
  }
}
