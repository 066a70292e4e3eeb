#include "expderham/algebra/laurent.hpp"

#include <cmath>

#include "expderham/error.hpp"

namespace expderham {

LaurentData::LaurentData(std::map<int, ExactComplex> coeffs) : c_(std::move(coeffs)) { prune(); }

LaurentData::LaurentData(std::map<int, ExactComplex> coeffs, TailBound tail, int tail_start)
    : c_(std::move(coeffs)), tail_(tail) {
  prune();
  if (!(tail.C > 0.0) || !(tail.R > 0.0) || !std::isfinite(tail.C) || !std::isfinite(tail.R))
    throw InputError("tail bound needs C > 0 and R > 0");
  const int lowest = c_.empty() ? 0 : -c_.begin()->first;
  tail_start_ = std::max({1, tail_start, lowest});
}

LaurentData LaurentData::monomial(const ExactComplex& c, int exponent) {
  return LaurentData(std::map<int, ExactComplex>{{exponent, c}});
}

ExactComplex LaurentData::operator[](int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? ExactComplex() : it->second;
}

void LaurentData::add(int k, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = c_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

int LaurentData::min_exponent() const { return c_.empty() ? 0 : c_.begin()->first; }
int LaurentData::max_exponent() const { return c_.empty() ? 0 : c_.rbegin()->first; }

LaurentData LaurentData::derivative() const {
  LaurentData out;
  for (const auto& [k, c] : c_)
    if (k != 0) out.add(k - 1, c * ExactComplex(static_cast<long>(k)));
  return out;
}

LaurentData& LaurentData::operator+=(const LaurentData& o) {
  for (const auto& [k, c] : o.c_) add(k, c);
  return *this;
}

LaurentData& LaurentData::operator-=(const LaurentData& o) {
  for (const auto& [k, c] : o.c_) add(k, -c);
  return *this;
}

LaurentData operator*(const LaurentData& a, const LaurentData& b) {
  LaurentData out;
  for (const auto& [i, x] : a.c_)
    for (const auto& [j, y] : b.c_) out.add(i + j, x * y);
  return out;
}

LaurentData operator*(const ExactComplex& s, const LaurentData& a) {
  LaurentData out;
  if (s.is_zero()) return out;
  for (const auto& [k, c] : a.c_) out.c_.emplace(k, s * c);
  return out;
}

Complex LaurentData::operator()(Complex z) const {
  Complex acc(0.0, 0.0);
  for (const auto& [k, c] : c_) acc += c.to_complex() * std::pow(z, k);
  return acc;
}

void LaurentData::prune() {
  for (auto it = c_.begin(); it != c_.end();) it = it->second.is_zero() ? c_.erase(it) : std::next(it);
}

}  // namespace expderham
