#include "expderham/algebra/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/error.hpp"

namespace expderham {

namespace {

template <class T>
int lowest_nonzero(const std::vector<T>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!detail::is_zero(c[i])) return static_cast<int>(i);
  return -1;
}

template <class T>
std::vector<T> drop_front(const std::vector<T>& c, int n) {
  return std::vector<T>(c.begin() + n, c.end());
}

}  // namespace

std::map<int, ExactComplex> laurent_at(const RationalFunction& r, const ExactComplex& p, int max_exponent) {
  std::map<int, ExactComplex> out;
  if (r.is_zero()) return out;
  const auto n = r.num().shifted(p).coeffs();
  const auto d = r.den().shifted(p).coeffs();
  const int u = lowest_nonzero(n), v = lowest_nonzero(d);
  const int e0 = u - v;
  const int terms = max_exponent - e0 + 1;
  if (terms <= 0) return out;
  const auto q = series_divide(drop_front(n, u), drop_front(d, v), terms);
  for (int i = 0; i < terms; ++i)
    if (!q[i].is_zero()) out.emplace(e0 + i, q[i]);
  return out;
}

std::map<int, ExactComplex> laurent_at_infinity(const RationalFunction& r, int min_exponent) {
  std::map<int, ExactComplex> out;
  if (r.is_zero()) return out;
  std::vector<ExactComplex> n(r.num().coeffs().rbegin(), r.num().coeffs().rend());
  std::vector<ExactComplex> d(r.den().coeffs().rbegin(), r.den().coeffs().rend());
  const int e0 = r.num().degree() - r.den().degree();
  const int terms = e0 - min_exponent + 1;
  if (terms <= 0) return out;
  const auto q = series_divide(n, d, terms);
  for (int i = 0; i < terms; ++i)
    if (!q[i].is_zero()) out.emplace(e0 - i, q[i]);
  return out;
}

int order_at(const RationalFunction& r, const ExactComplex& p) {
  if (r.is_zero()) throw DomainError("order of the zero function");
  return r.num().multiplicity_of(p) - r.den().multiplicity_of(p);
}

int order_at_infinity(const RationalFunction& r) {
  if (r.is_zero()) throw DomainError("order of the zero function");
  return r.den().degree() - r.num().degree();
}

LaurentData germ_at_infinity(const RationalFunction& r, int terms, double radius) {
  if (terms < 1) throw DomainError("germ needs at least one negative term");
  if (r.den().degree() > 0) {
    for (const auto& root : polynomial_roots(r.den()))
      if (std::abs(root.value) >= radius) throw DomainError("tail radius does not enclose every pole");
  }
  auto stored = laurent_at_infinity(r, -terms);
  Poly poly_part = r.num().divmod(r.den()).first;
  const FloatRational fr(r);
  const CPoly fp = to_floating(poly_part);
  // Cauchy estimate: g_{-k} = (1/2 pi i) \oint (r - poly) z^{k-1} dz on |z| = radius.
  constexpr int kSamples = 4096;
  double c = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const Complex z = std::polar(radius, 2.0 * std::numbers::pi * s / kSamples);
    c = std::max(c, std::abs(fr(z) - fp(z)));
  }
  c = std::max(1.05 * c, 1e-300);
  return LaurentData(std::move(stored), TailBound{c, radius}, terms);
}

std::vector<Complex> exp_series(const std::vector<Complex>& s, int n) {
  std::vector<Complex> e(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  if (n == 0) return e;
  e[0] = std::exp(s.empty() ? Complex(0.0, 0.0) : s[0]);
  for (int k = 1; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (int j = 1; j <= k && j < static_cast<int>(s.size()); ++j) acc += static_cast<double>(j) * s[j] * e[k - j];
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

Complex residue_at(const RationalFunction& r, const RationalFunction& q, Complex p, int order_hint, int order_cap) {
  if (r.is_zero()) return {0.0, 0.0};
  if (order_hint > order_cap) throw ExpansionOrderError(order_hint, order_cap);
  const auto n = to_floating(r.num()).shifted(p).coeffs();
  const auto d = to_floating(r.den()).shifted(p).coeffs();
  double scale = 0.0;
  for (const auto& x : d) scale = std::max(scale, std::abs(x));
  int m = 0;
  while (m < static_cast<int>(d.size()) - 1 && std::abs(d[m]) <= 1e-9 * scale) ++m;
  m = std::max(m, order_hint);
  if (m > order_cap) throw ExpansionOrderError(m, order_cap);
  if (m == 0) return {0.0, 0.0};
  const auto a = series_divide(n, drop_front(d, m), m);
  const auto qn = to_floating(q.num()).shifted(p).coeffs();
  const auto qd = to_floating(q.den()).shifted(p).coeffs();
  double qscale = 0.0;
  for (const auto& x : qd) qscale = std::max(qscale, std::abs(x));
  if (std::abs(qd.at(0)) <= 1e-9 * qscale) throw DomainError("exponential factor is singular at the residue point");
  const auto e = exp_series(series_divide(qn, qd, m), m);
  Complex res(0.0, 0.0);
  for (int i = 0; i < m; ++i) res += a[i] * e[m - 1 - i];
  return res;
}

Complex residue_at(const RationalFunction& r, Complex p, int order_hint) {
  return residue_at(r, RationalFunction(), p, order_hint);
}

}  // namespace expderham
