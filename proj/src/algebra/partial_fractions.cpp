#include "expderham/algebra/partial_fractions.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"

namespace expderham {

namespace {

std::vector<Complex> companion_roots(const CPoly& monic) {
  const int n = monic.degree();
  if (n == 1) return {-monic[0]};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  if (es.info() != Eigen::Success) throw IllConditionedError("companion eigenvalue solve failed", 0.0);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

Complex newton_polish(const CPoly& p, const CPoly& dp, Complex z) {
  for (int it = 0; it < 8; ++it) {
    const Complex f = p(z), df = dp(z);
    if (df == Complex(0.0, 0.0)) break;
    const Complex step = f / df;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::vector<Root> polynomial_roots(const Poly& p, double root_tol) {
  std::vector<Root> out;
  const auto factors = squarefree_decomposition(p);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].degree() < 1) continue;
    const CPoly f = to_floating(factors[k]);
    const CPoly df = f.derivative();
    for (Complex z : companion_roots(f)) {
      z = newton_polish(f, df, z);
      const double scale = std::max(1.0, std::abs(z));
      if (std::abs(f(z)) > std::sqrt(root_tol) * scale * std::max(1.0, std::abs(df(z))))
        throw IllConditionedError("root refinement did not converge", std::abs(f(z)));
      out.push_back({z, static_cast<int>(k) + 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

Complex PartialFractions::operator()(Complex z) const {
  Complex acc = polynomial(z);
  for (const auto& pp : poles) {
    const Complex w = 1.0 / (z - pp.pole);
    Complex wk = w;
    for (const auto& c : pp.coeffs) {
      acc += c * wk;
      wk *= w;
    }
  }
  return acc;
}

PartialFractions partial_fractions(const RationalFunction& r, double root_tol) {
  PartialFractions out;
  auto [quot, rem] = r.num().divmod(r.den());
  out.polynomial = to_floating(quot);
  if (r.den().degree() == 0 || rem.is_zero()) return out;
  const auto roots = polynomial_roots(r.den(), root_tol);
  const CPoly frem = to_floating(rem);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Complex p = roots[i].value;
    const int m = roots[i].multiplicity;
    CPoly rest = CPoly::constant(1.0);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      for (int e = 0; e < roots[j].multiplicity; ++e) rest = rest * CPoly::linear_factor(roots[j].value);
    }
    const auto a = series_divide(frem.shifted(p).coeffs(), rest.shifted(p).coeffs(), m);
    PolePart pp{p, std::vector<Complex>(static_cast<std::size_t>(m))};
    for (int k = 0; k < m; ++k) pp.coeffs[k] = a[m - 1 - k];
    out.poles.push_back(std::move(pp));
  }
  double reach = 1.0;
  for (const auto& rt : roots) reach = std::max(reach, 2.0 * std::abs(rt.value));
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-reach, reach);
  double worst = 0.0, mag = 0.0;
  for (int s = 0; s < 24; ++s) {
    const Complex z(u(rng), u(rng));
    bool near = false;
    for (const auto& rt : roots) near = near || std::abs(z - rt.value) < 1e-3 * reach;
    if (near) continue;
    const Complex exact = r(z);
    worst = std::max(worst, std::abs(exact - out(z)));
    mag = std::max(mag, std::abs(exact));
  }
  out.residual = mag > 0.0 ? worst / mag : worst;
  if (out.residual > 100.0 * root_tol) throw IllConditionedError("partial-fraction resampling mismatch", out.residual);
  return out;
}

RationalFunction ExactPartialFractions::to_rational() const {
  RationalFunction acc(polynomial);
  for (const auto& pp : poles)
    for (std::size_t k = 0; k < pp.coeffs.size(); ++k)
      if (!pp.coeffs[k].is_zero()) acc += RationalFunction::pole_term(pp.coeffs[k], pp.pole, static_cast<int>(k) + 1);
  return acc;
}

ExactPartialFractions partial_fractions_exact(const RationalFunction& r, const std::vector<ExactComplex>& roots) {
  ExactPartialFractions out;
  auto [quot, rem] = r.num().divmod(r.den());
  out.polynomial = quot;
  int total = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (roots[j] == roots[i]) throw InputError("repeated root " + roots[i].str() + " in supplied list");
    const int m = r.den().multiplicity_of(roots[i]);
    if (m == 0) throw InputError("supplied value " + roots[i].str() + " is not a pole");
    total += m;
  }
  if (total != r.den().degree()) throw InputError("supplied roots do not split the denominator");
  const RationalFunction proper(rem, r.den());
  for (const auto& p : roots) {
    const int m = r.den().multiplicity_of(p);
    const auto lau = laurent_at(proper, p, -1);
    ExactPolePart pp{p, std::vector<ExactComplex>(static_cast<std::size_t>(m))};
    for (const auto& [e, c] : lau) pp.coeffs[-e - 1] = c;
    out.poles.push_back(std::move(pp));
  }
  return out;
}

}  // namespace expderham
