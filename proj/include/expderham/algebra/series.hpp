#pragma once

#include <map>
#include <vector>

#include "expderham/algebra/laurent.hpp"
#include "expderham/algebra/rational.hpp"

namespace expderham {

inline constexpr int kDefaultExpansionCap = 64;

/// First n coefficients of a(t)/b(t) as power series; b[0] must be nonzero.
template <class T>
std::vector<T> series_divide(const std::vector<T>& a, const std::vector<T>& b, int n) {
  std::vector<T> q(static_cast<std::size_t>(n), T(0));
  const T b0 = b.at(0);
  for (int k = 0; k < n; ++k) {
    T s = k < static_cast<int>(a.size()) ? a[k] : T(0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) s -= b[j] * q[k - j];
    q[k] = s / b0;
  }
  return q;
}

/// Laurent coefficients of r at p: exponents from the pole order up to max_exponent inclusive.
std::map<int, ExactComplex> laurent_at(const RationalFunction& r, const ExactComplex& p, int max_exponent);

/// Expansion at inf in descending powers of z, down to min_exponent inclusive.
std::map<int, ExactComplex> laurent_at_infinity(const RationalFunction& r, int min_exponent);

/// Order of vanishing of r at p (negative for poles). r must be nonzero.
int order_at(const RationalFunction& r, const ExactComplex& p);
/// Order at inf in the coordinate 1/z: deg den - deg num.
int order_at_infinity(const RationalFunction& r);

/// LaurentData for r at inf with the stored part reaching z^{-terms} and a Cauchy
/// tail bound measured on |z| = radius, which must exceed every pole modulus.
LaurentData germ_at_infinity(const RationalFunction& r, int terms, double radius);

/// Coefficient of (z-p)^{-1} in r(z) * exp(q(z)) with q holomorphic at p.
/// The pole order of r at p must not exceed `order_cap`; exceeding it throws.
Complex residue_at(const RationalFunction& r, const RationalFunction& q, Complex p,
                   int order_hint = 0, int order_cap = kDefaultExpansionCap);
Complex residue_at(const RationalFunction& r, Complex p, int order_hint = 0);

/// Taylor coefficients e_0..e_{n-1} of exp(s(t)) given s_0..s_{n-1}.
std::vector<Complex> exp_series(const std::vector<Complex>& s, int n);

}  // namespace expderham
