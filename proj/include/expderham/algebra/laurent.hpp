#pragma once

#include <map>
#include <optional>

#include "expderham/algebra/exact.hpp"

namespace expderham {

/// |g_{-k}| <= C * R^k for every k beyond the stored range.
struct TailBound {
  double C = 1.0;
  double R = 1.0;
};

/// Finite Laurent polynomial sum_k g_k z^k, optionally standing for a convergent
/// germ at z = inf whose unseen coefficients g_{-k}, k > tail_start(), obey the tail bound.
class LaurentData {
 public:
  LaurentData() = default;
  explicit LaurentData(std::map<int, ExactComplex> coeffs);
  LaurentData(std::map<int, ExactComplex> coeffs, TailBound tail, int tail_start = 0);

  static LaurentData monomial(const ExactComplex& c, int exponent);

  /// Coefficient of z^k (zero if absent).
  ExactComplex operator[](int k) const;
  void add(int k, const ExactComplex& c);

  const std::map<int, ExactComplex>& coeffs() const { return c_; }
  const std::optional<TailBound>& tail() const { return tail_; }
  /// N such that the tail bound covers k > N.
  int tail_start() const { return tail_start_; }
  bool empty() const { return c_.empty(); }
  bool is_zero() const { return c_.empty() && !tail_; }
  int min_exponent() const;
  int max_exponent() const;

  LaurentData derivative() const;
  /// Drops the tail; arithmetic below is exact on the stored part only.
  LaurentData truncated() const { return LaurentData(c_); }

  LaurentData& operator+=(const LaurentData& o);
  LaurentData& operator-=(const LaurentData& o);
  friend LaurentData operator+(LaurentData a, const LaurentData& b) { return a += b; }
  friend LaurentData operator-(LaurentData a, const LaurentData& b) { return a -= b; }
  friend LaurentData operator*(const LaurentData& a, const LaurentData& b);
  friend LaurentData operator*(const ExactComplex& s, const LaurentData& a);
  friend bool operator==(const LaurentData& a, const LaurentData& b) { return a.c_ == b.c_; }

  Complex operator()(Complex z) const;

 private:
  void prune();
  std::map<int, ExactComplex> c_;
  std::optional<TailBound> tail_;
  int tail_start_ = 0;
};

}  // namespace expderham
