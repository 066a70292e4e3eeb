#pragma once

#include "expderham/algebra/poly.hpp"

namespace expderham {

/// num/den over Q(i), kept in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(Poly::constant(1)) {}
  RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}  // NOLINT
  RationalFunction(Poly num, Poly den);

  static RationalFunction constant(const ExactComplex& c) { return RationalFunction(Poly::constant(c)); }
  /// c * (z - p)^(-order)
  static RationalFunction pole_term(const ExactComplex& c, const ExactComplex& p, int order);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  Complex operator()(Complex z) const { return num_(z) / den_(z); }
  ExactComplex operator()(const ExactComplex& z) const;

  RationalFunction derivative() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

/// Floating copy for fast repeated evaluation.
struct FloatRational {
  CPoly num;
  CPoly den;
  FloatRational() : den(CPoly::constant(1.0)) {}
  explicit FloatRational(const RationalFunction& r) : num(to_floating(r.num())), den(to_floating(r.den())) {}
  Complex operator()(Complex z) const { return num(z) / den(z); }
};

}  // namespace expderham
