#pragma once

// Exact Gaussian-rational scalars. The floating regime uses std::complex<double>;
// conversion between the two is always spelled out with to_complex().

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

namespace expderham {

using Complex = std::complex<double>;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
/// n/d in lowest terms (mpq_class(n, d) alone does not reduce).
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}
std::string to_string(const Rational& q);

class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  ExactComplex conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  /// "p/q" for real values, otherwise "p/q+r/si" style; see parse().
  std::string str() const;
  /// Accepts "a", "a/b", "a/b+c/di", "c/di", "i", "-i".
  static ExactComplex parse(std::string_view text);

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

ExactComplex pow(const ExactComplex& base, int exponent);
inline std::ostream& operator<<(std::ostream& os, const ExactComplex& c) { return os << c.str(); }

}  // namespace expderham
