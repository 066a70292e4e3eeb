#include "expderham/algebra/exact.hpp"

#include <cctype>

#include "expderham/error.hpp"

namespace expderham {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_rational_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  bool digits = false, slash = false, denom_digits = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? denom_digits : digits) = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || denom_digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (!valid_rational_text(s)) throw InputError("malformed rational '" + std::string(text) + "'");
  Rational q;
  if (q.set_str(std::string(s), 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  const Rational n = o.norm2();
  if (sgn(n) == 0) throw DomainError("exact division by zero");
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string ExactComplex::str() const {
  if (sgn(im_) == 0) return to_string(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = to_string(im_) + "i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag.front() != '-') imag = "+" + imag;
  return to_string(re_) + imag;
}

ExactComplex ExactComplex::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty exact complex");
  if (s.back() != 'i') return ExactComplex(parse_rational(s));
  s.remove_suffix(1);
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return {re, im};
}

ExactComplex pow(const ExactComplex& base, int exponent) {
  if (exponent < 0) return pow(ExactComplex(1) / base, -exponent);
  ExactComplex result(1), b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace expderham
