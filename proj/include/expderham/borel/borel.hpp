#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "expderham/model/differential.hpp"
#include "expderham/quadrature/integrate.hpp"

namespace expderham {

struct Estimate {
  Complex value{0.0, 0.0};
  double error = 0.0;
};

/// phi(t) dt for omega = e^{t^d} phi(t) dt. A form given with h = -z^d is
/// pulled back along z = zeta t, zeta = e^{i pi/d}.
class BorelForm {
 public:
  explicit BorelForm(const ExpDifferential& w);

  int d() const { return d_; }
  Convention source() const { return source_; }
  const CPoly& num() const { return num_; }
  const CPoly& den() const { return den_; }
  const std::vector<Complex>& poles() const { return poles_; }
  double pole_radius() const { return pole_radius_; }
  bool is_zero() const { return num_.is_zero(); }

  Complex operator()(Complex t) const { return num_(t) / den_(t); }
  /// phi(t) e^{c t^d}
  Integrand integrand(Complex c) const;

 private:
  int d_ = 1;
  Convention source_ = Convention::plus;
  CPoly num_;
  CPoly den_;
  std::vector<Complex> poles_;
  double pole_radius_ = 0.0;
};

/// Radius of the arc and opening parameter of the contour; 0 picks the defaults
/// max(1, 1.25 * pole radius) and pi/(2d). epsilon must lie in (0, pi/d).
/// The contour is turned by -direction, arg xi unless given.
struct BorelTemplate {
  double radius = 0.0;
  double epsilon = 0.0;
  std::optional<double> direction;
};

struct BorelOptions {
  QuadratureOptions quad;
  BorelTemplate contour;
};

struct BorelEvaluation {
  Complex xi{0.0, 0.0};
  Complex value{0.0, 0.0};
  CurveSpec contour;
  double error_estimate = 0.0;
};

double template_radius(const BorelForm& f, const BorelTemplate& t);
double template_epsilon(int d, const BorelTemplate& t);
/// In from inf at -direction - (pi/2d + eps), arc to -direction + (pi/2d + eps), out again.
CurveSpec template_contour(int d, double direction, double radius, double epsilon);

/// Direction of the ramification point w*_j for h = z^d: (2j - 1) pi / d.
double ramification_angle(int d, int j);

/// f(z) = z^d e^{-z^d} int_{w*_base}^{z} omega, through a ray from inf and an arc to arg z.
Estimate f_from_omega(const BorelForm& f, Complex z, int base = 1, const QuadratureOptions& opt = {});
Estimate f_from_omega(const ExpDifferential& w, Complex z, int base = 1, const QuadratureOptions& opt = {});

/// A(xi) = (-1/2 pi i) int phi(t) e^{xi^d t^d} dt on the template turned by -arg xi.
BorelEvaluation A_function(const BorelForm& f, Complex xi, const BorelOptions& opt = {});

/// B_d f(xi) = A(xi) / (xi^d - 1).
BorelEvaluation borel_eval(const BorelForm& f, Complex xi, const BorelOptions& opt = {});
BorelEvaluation borel_eval(const ExpDifferential& w, Complex xi, const BorelOptions& opt = {});

/// The transform straight from its definition: (1/2 pi i) int z^{-d} f(z) e^{(xi z)^d} d(z^d)
/// on the template in direction 0. Needs |xi| > 1 and |d arg xi| below min(d eps, pi - d eps).
BorelEvaluation borel_direct(const BorelForm& f, Complex xi, const BorelOptions& opt = {});

/// Res at xi_k = e^{2 pi i k/d}: A(xi_k) / (d xi_k^{d-1}), k = 0..d-1.
std::vector<Estimate> borel_residues(const BorelForm& f, const BorelOptions& opt = {});
std::vector<Estimate> borel_residues(const ExpDifferential& w, const BorelOptions& opt = {});

struct ResiduePeriod {
  int k = 0;
  Complex residue{0.0, 0.0};
  /// int omega from w*_{-k} to w*_{1-k}, in the coordinates of the input form.
  Complex period{0.0, 0.0};
  /// (1 / (d xi_k^{d-1})) (-1 / 2 pi i) period
  Complex predicted{0.0, 0.0};
  /// |residue - predicted| over the largest |predicted|.
  double residual = 0.0;
};

/// Residues from A against periods integrated along ray, arc, ray at radius rho (0: 1.2 template radius).
std::vector<ResiduePeriod> residue_period_check(const ExpDifferential& w, const BorelOptions& opt = {},
                                                double rho = 0.0);

/// g(r e^{i theta}), r in [0, length], as piecewise Chebyshev interpolants.
/// `growth` is k in |g(xi)| = O(exp(k |xi|^d)).
class SampledRay {
 public:
  SampledRay() = default;
  static SampledRay sample(const std::function<Complex(Complex)>& g, double theta, double length, double growth,
                           double tol = 1e-10, int max_nodes = 4096);

  Complex operator()(double r) const;
  double theta() const { return theta_; }
  double length() const { return length_; }
  double growth() const { return growth_; }
  int node_count() const;
  /// Panel endpoints, ascending, from 0 to length.
  std::vector<double> breakpoints() const;
  /// Largest Chebyshev tail left on a panel, relative to max(1, |g|).
  double interpolation_error() const { return interp_error_; }

 private:
  struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::vector<Complex> values;
  };
  double theta_ = 0.0;
  double length_ = 0.0;
  double growth_ = 0.0;
  double interp_error_ = 0.0;
  std::vector<Panel> panels_;
};

inline constexpr int kChebyshevPanelNodes = 17;

/// w^{-d} int_0^{theta inf} g(xi) exp(-(xi/w)^d) d(xi^d) over the sampled ray.
Estimate laplace_eval(const SampledRay& g, int d, Complex w, double tol = 1e-10);

/// Ray length past which the Laplace kernel times the growth bound drops below tol.
double laplace_length(int d, double theta, Complex w, double growth, double tol = 1e-14);

/// Samples of B_d f on the ray at theta; the growth constant is radius^d of the template.
SampledRay borel_samples(const BorelForm& f, double theta, double length, const BorelOptions& opt = {});

/// -pi/(2d): between the poles at 1 and e^{-2 pi i/d}.
inline double default_laplace_direction(int d) { return -3.14159265358979323846 / (2.0 * d); }

}  // namespace expderham
