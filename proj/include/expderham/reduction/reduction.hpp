#pragma once

#include <map>
#include <utility>

#include "expderham/algebra/laurent.hpp"
#include "expderham/algebra/poly.hpp"
#include "expderham/model/differential.hpp"

namespace expderham {

/// g e^{h} dz = sum_j c_j z^j e^{h} dz + d(F e^{h}) for h = sign * z^d.
struct ReductionResult {
  int d = 1;
  int sign = 1;
  /// Every j in -1..d-2 is present.
  std::map<int, ExactComplex> canonical;
  LaurentData primitive;
  /// Per canonical index; zero for tail-free input.
  std::map<int, double> truncation_error;
  /// Smallest admissible truncation order (0 when no tail was involved).
  int k0 = 0;
  int truncation_order = 0;

  Convention convention() const { return convention_of(sign); }
  bool all_zero() const;
};

ReductionResult reduce_laurent(const LaurentData& g, int d, int sign = 1);
ReductionResult reduce_poly(const Poly& p, int d, int sign = 1);

/// Closed forms: alpha = coefficient of z^{-j} in F and beta = c_j, both for g = z^{-k}.
std::pair<Rational, Rational> alpha_beta(int j, int k, int d, int sign = 1);

/// Smallest integer k0 with k0 - 1 > d (2R)^d.
int minimal_truncation(double R, int d);

/// Tailed germ at inf. Stored coefficients g_{-k} with k > N_trunc and the unseen
/// tail only enter the per-coefficient error bound.
ReductionResult reduce_germ(const LaurentData& g, int d, int N_trunc, int sign = 1);

/// Dispatch on the coefficient kind of a local differential. A rational coefficient is
/// expanded at inf as a tailed germ with N_trunc stored terms.
ReductionResult reduce(const ExpDifferential& w, int N_trunc = 0);

/// g - (sum c_j z^j + F' + sign d z^{d-1} F); zero exactly for tail-free input.
LaurentData reduction_residual(const LaurentData& g, const ReductionResult& r);

enum class Exactness { exact, not_exact, undecided, no_solution_within_bound };
const char* to_string(Exactness e);

struct LocalExactness {
  Exactness status = Exactness::undecided;
  ReductionResult reduction;
  /// Canonical coefficients that are certainly nonzero (certificate for not_exact).
  std::map<int, ExactComplex> nonzero;
};

LocalExactness is_exact_local(const ExpDifferential& w, int N_trunc = 0);

}  // namespace expderham
