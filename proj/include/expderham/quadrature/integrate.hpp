#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "expderham/model/curve.hpp"
#include "expderham/model/differential.hpp"

namespace expderham {

/// e^{h} blows up or decays like exp(a (z - p)^{-d}) at a finite p, or exp(a z^d) at inf.
struct ExpSingularity {
  std::optional<Complex> location;  // nullopt means inf
  int order = 1;
  Complex leading{1.0, 0.0};
};

/// Batch evaluator of g(z) e^{h(z)} plus what the path checks need to know.
struct Integrand {
  std::function<void(const Complex* z, Complex* out, int n)> eval;
  std::vector<ExpSingularity> exp_singularities;
  std::vector<Complex> coefficient_poles;
  /// deg den - deg num of g at inf when g is rational; used for ends without an exponential.
  std::optional<int> coefficient_order_at_infinity;

  Complex operator()(Complex z) const {
    Complex out;
    eval(&z, &out, 1);
    return out;
  }
};

/// g = gn/gd and h = hn/hd with floating polynomial data; uses the batch kernels.
Integrand make_rational_integrand(const CPoly& gn, const CPoly& gd, const CPoly& hn, const CPoly& hd);
Integrand make_integrand(const ExpDifferential& w);

struct QuadratureOptions {
  double tol = 1e-10;
  long budget = 2'000'000;
  double pole_clearance = 1e-6;
  double stokes_guard = 1e-9;
};

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
  /// Largest truncation parameter used on any ray (0 without rays).
  double truncation_radius = 0.0;
  /// Integral of |integrand| |dz|, as far as sampled.
  double abs_integral = 0.0;
};

QuadratureResult integrate(const Integrand& f, const CurveSpec& c, const QuadratureOptions& opt = {});
QuadratureResult integrate(const ExpDifferential& w, const CurveSpec& c, const QuadratureOptions& opt = {});

/// Ray parameter T beyond which the tail of |f dz| integrates below tol/100.
/// The ray is center + T e^{i theta} (end = infinity) or center + e^{i theta}/T (end = center).
double decay_truncation_radius(const Integrand& f, Complex center, double theta, RayEnd end, double t0, double tol,
                               const QuadratureOptions& opt = {});
/// Local form, ray from the origin to inf.
double decay_truncation_radius(const ExpDifferential& w, double theta, double tol);

}  // namespace expderham
