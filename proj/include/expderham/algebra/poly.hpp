#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "expderham/algebra/exact.hpp"
#include "expderham/error.hpp"

namespace expderham {

namespace detail {
inline bool is_zero(const ExactComplex& c) { return c.is_zero(); }
inline bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
}  // namespace detail

/// Dense univariate polynomial, coefficients indexed by degree. Trailing zeros
/// are always trimmed, so the zero polynomial has no coefficients and degree -1.
template <class T>
class BasicPoly {
 public:
  BasicPoly() = default;
  explicit BasicPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  BasicPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  static BasicPoly constant(T value) { return BasicPoly(std::vector<T>{std::move(value)}); }
  static BasicPoly monomial(T value, int degree) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = std::move(value);
    return BasicPoly(std::move(c));
  }
  /// z - root
  static BasicPoly linear_factor(const T& root) { return BasicPoly({-root, T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  template <class U>
  U operator()(const U& z) const {
    U acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if constexpr (std::is_same_v<T, ExactComplex> && std::is_same_v<U, Complex>)
        acc = acc * z + it->to_complex();
      else
        acc = acc * z + U(*it);
    }
    return acc;
  }

  BasicPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return BasicPoly(std::move(d));
  }

  /// p(z + shift), via repeated synthetic division (Taylor coefficients at shift).
  BasicPoly shifted(const T& shift) const {
    std::vector<T> a = c_;
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
      for (int k = n - 2; k >= i; --k) a[k] += shift * a[k + 1];
    return BasicPoly(std::move(a));
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(const BasicPoly& a) { return BasicPoly() - a; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPoly(std::move(c));
  }
  friend BasicPoly operator*(const T& s, const BasicPoly& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x = s * x;
    return BasicPoly(std::move(c));
  }
  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const BasicPoly& a, const BasicPoly& b) { return !(a == b); }

  /// Euclidean division over a field: *this = q * divisor + r, deg r < deg divisor.
  std::pair<BasicPoly, BasicPoly> divmod(const BasicPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<T> r = c_;
    const int dd = divisor.degree();
    if (degree() < dd) return {BasicPoly(), *this};
    std::vector<T> q(static_cast<std::size_t>(degree() - dd) + 1, T(0));
    const T lead = divisor.leading();
    for (int k = degree(); k >= dd; --k) {
      if (detail::is_zero(r[k])) continue;
      T f = r[k] / lead;
      for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * divisor.c_[j];
      r[k] = T(0);
      q[k - dd] = std::move(f);
    }
    r.resize(static_cast<std::size_t>(dd));
    return {BasicPoly(std::move(q)), BasicPoly(std::move(r))};
  }

  BasicPoly monic() const {
    if (is_zero()) return {};
    const T inv = T(1) / leading();
    return inv * (*this);
  }

  /// Multiplicity of `root` as a zero (exact coefficients only make this meaningful).
  int multiplicity_of(const T& root) const {
    if (is_zero()) throw DomainError("multiplicity in zero polynomial");
    int m = 0;
    BasicPoly p = *this;
    const BasicPoly factor = linear_factor(root);
    while (true) {
      auto [q, r] = p.divmod(factor);
      if (!r.is_zero()) break;
      p = std::move(q);
      ++m;
    }
    return m;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using Poly = BasicPoly<ExactComplex>;
using CPoly = BasicPoly<Complex>;

inline CPoly to_floating(const Poly& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(x.to_complex());
  return CPoly(std::move(c));
}

/// Monic gcd over Q(i).
Poly gcd(Poly a, Poly b);

/// Yun square-free decomposition: returns factors f_1, f_2, ... with
/// p = lead * prod f_k^k, each f_k square-free and monic (possibly constant 1).
std::vector<Poly> squarefree_decomposition(const Poly& p);

}  // namespace expderham
