#include "expderham/algebra/gamma.hpp"

#include <cmath>
#include <numbers>

#include "expderham/error.hpp"

namespace expderham {

namespace {

// Lanczos g = 7, n = 9.
constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Gamma(y) for y in (1, 2].
double lanczos(double y) {
  const double x = y - 1.0;
  double a = kCoef[0];
  const double t = x + kG + 0.5;
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_real(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("gamma_real needs 0 < x <= 1");
  if (x == 1.0) return 1.0;
  return lanczos(x + 1.0) / x;
}

}  // namespace expderham
