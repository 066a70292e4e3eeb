#pragma once

#include <vector>

#include "expderham/algebra/rational.hpp"

namespace expderham {

struct PolePart {
  Complex pole;
  /// coeffs[k] multiplies (z - pole)^{-(k+1)}
  std::vector<Complex> coeffs;
};

struct PartialFractions {
  CPoly polynomial;
  std::vector<PolePart> poles;
  /// Max relative mismatch against r at the resampling points.
  double residual = 0.0;
  Complex operator()(Complex z) const;
};

struct ExactPolePart {
  ExactComplex pole;
  std::vector<ExactComplex> coeffs;
};

struct ExactPartialFractions {
  Poly polynomial;
  std::vector<ExactPolePart> poles;
  RationalFunction to_rational() const;
};

/// Floating decomposition: companion-matrix roots of the square-free factors,
/// Newton-polished, then checked by resampling.
PartialFractions partial_fractions(const RationalFunction& r, double root_tol = 1e-10);

/// Exact decomposition when all roots of the denominator are supplied.
ExactPartialFractions partial_fractions_exact(const RationalFunction& r, const std::vector<ExactComplex>& roots);

/// Roots of a polynomial, each listed once, with multiplicities from square-free factoring.
struct Root {
  Complex value;
  int multiplicity;
};
std::vector<Root> polynomial_roots(const Poly& p, double root_tol = 1e-10);

}  // namespace expderham
