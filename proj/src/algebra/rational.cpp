#include "expderham/algebra/rational.hpp"

namespace expderham {

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

RationalFunction RationalFunction::pole_term(const ExactComplex& c, const ExactComplex& p, int order) {
  Poly den = Poly::constant(1);
  const Poly f = Poly::linear_factor(p);
  for (int k = 0; k < order; ++k) den = den * f;
  return {Poly::constant(c), den};
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  const ExactComplex lead = den_.leading();
  if (lead != ExactComplex(1)) {
    const ExactComplex inv = ExactComplex(1) / lead;
    num_ = inv * num_;
    den_ = inv * den_;
  }
}

ExactComplex RationalFunction::operator()(const ExactComplex& z) const {
  const ExactComplex dv = den_(z);
  if (dv.is_zero()) throw DomainError("rational function evaluated at a pole");
  return num_(z) / dv;
}

RationalFunction RationalFunction::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

}  // namespace expderham
