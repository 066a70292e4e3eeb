#include "expderham/borel/borel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"
#include "expderham/parallel.hpp"

namespace expderham {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// -1 / (2 pi i)
const Complex kMinusInvTwoPiI = kI / (2.0 * kPi);

struct GaussLegendre {
  std::vector<double> x, w;
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.x[i] = x;
    g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

const GaussLegendre& gl24() {
  static const GaussLegendre g = gauss_legendre(24);
  return g;
}

Complex ipow(Complex z, int n) {
  Complex r(1.0, 0.0);
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

// int_{w*_base}^{z} e^{t^d} phi(t) dt to absolute tolerance opt.tol
Estimate omega_integral(const BorelForm& f, Complex z, int base, const QuadratureOptions& opt) {
  if (f.is_zero()) return {};
  const int d = f.d();
  const double rz = std::abs(z);
  if (rz == 0.0) throw DomainError("f is evaluated near z = inf only; got z = 0");
  const double rp = std::max(rz, 1.25 * f.pole_radius());
  const double tb = ramification_angle(d, base);
  const double tz = std::arg(z);
  CurveSpec c{"w*_" + std::to_string(base) + " to z",
              {Ray{{0.0, 0.0}, tb, rp, RayEnd::infinity, true, std::nullopt}, Arc{{0.0, 0.0}, rp, tb, tz}}};
  if (rp > rz) c.pieces.push_back(Segment{std::polar(rp, tz), z});
  const auto r = integrate(f.integrand(1.0), c, opt);
  return {r.value, r.error_estimate};
}

}  // namespace

BorelForm::BorelForm(const ExpDifferential& w) {
  if (!w.is_local()) throw DomainError("Borel transforms take a local form");
  const auto& t = w.local_type();
  d_ = t.d;
  source_ = t.convention();
  std::vector<Complex> num, den;
  if (auto g = std::get_if<LaurentData>(&w.coeff)) {
    if (g->tail()) throw DomainError("phi must be given exactly; pass a rational coefficient instead of a germ");
    if (!g->empty()) {
      if (g->max_exponent() > -2) throw DomainError("phi(t) dt must vanish to order 2 at inf");
      const int lo = g->min_exponent();
      num.assign(static_cast<std::size_t>(-lo), Complex(0.0, 0.0));
      for (const auto& [k, v] : g->coeffs()) num[static_cast<std::size_t>(k - lo)] = v.to_complex();
      den.assign(static_cast<std::size_t>(-lo) + 1, Complex(0.0, 0.0));
      den.back() = 1.0;
      poles_.push_back({0.0, 0.0});
    }
  } else {
    const auto& r = w.rational();
    if (!r.is_zero()) {
      if (order_at_infinity(r) < 2) throw DomainError("phi(t) dt must vanish to order 2 at inf");
      num = to_floating(r.num()).coeffs();
      den = to_floating(r.den()).coeffs();
      if (r.den().degree() > 0)
        for (const auto& root : polynomial_roots(r.den())) poles_.push_back(root.value);
    }
  }
  if (num.empty()) den = {Complex(1.0, 0.0)};
  if (source_ == Convention::minus) {
    const Complex zeta = std::polar(1.0, kPi / d_);
    Complex s = zeta;
    for (auto& c : num) {
      c *= s;
      s *= zeta;
    }
    s = 1.0;
    for (auto& c : den) {
      c *= s;
      s *= zeta;
    }
    for (auto& p : poles_) p /= zeta;
  }
  num_ = CPoly(num);
  den_ = CPoly(den);
  for (const Complex p : poles_) pole_radius_ = std::max(pole_radius_, std::abs(p));
}

Integrand BorelForm::integrand(Complex c) const {
  Integrand f = make_rational_integrand(num_, den_, CPoly::monomial(c, d_), CPoly::constant(1.0));
  f.coefficient_poles = poles_;
  return f;
}

double template_radius(const BorelForm& f, const BorelTemplate& t) {
  if (t.radius > 0.0) {
    if (t.radius <= f.pole_radius() * (1.0 + 1e-9)) throw DomainError("template radius must exceed every pole of phi");
    return t.radius;
  }
  return std::max(1.0, 1.25 * f.pole_radius());
}

double template_epsilon(int d, const BorelTemplate& t) {
  const double eps = t.epsilon > 0.0 ? t.epsilon : kPi / (2.0 * d);
  if (eps >= kPi / d) throw DomainError("template epsilon must lie in (0, pi/d)");
  return eps;
}

CurveSpec template_contour(int d, double direction, double radius, double epsilon) {
  const double h = kPi / (2.0 * d) + epsilon;
  const double lo = -direction - h;
  const double hi = -direction + h;
  return {"borel template",
          {Ray{{0.0, 0.0}, lo, radius, RayEnd::infinity, true, std::nullopt}, Arc{{0.0, 0.0}, radius, lo, hi},
           Ray{{0.0, 0.0}, hi, radius, RayEnd::infinity, false, std::nullopt}}};
}

double ramification_angle(int d, int j) { return (2.0 * j - 1.0) * kPi / d; }

Estimate f_from_omega(const BorelForm& f, Complex z, int base, const QuadratureOptions& opt) {
  const Complex zd = ipow(z, f.d());
  const Complex fac = zd * std::exp(-zd);
  QuadratureOptions q = opt;
  q.tol = opt.tol / std::max(std::abs(fac), 1e-300);
  const Estimate I = omega_integral(f, z, base, q);
  return {fac * I.value, std::abs(fac) * I.error};
}

Estimate f_from_omega(const ExpDifferential& w, Complex z, int base, const QuadratureOptions& opt) {
  return f_from_omega(BorelForm(w), z, base, opt);
}

BorelEvaluation A_function(const BorelForm& f, Complex xi, const BorelOptions& opt) {
  const int d = f.d();
  const double r = template_radius(f, opt.contour);
  const double eps = template_epsilon(d, opt.contour);
  const double dir = opt.contour.direction ? *opt.contour.direction : (xi == Complex(0.0, 0.0) ? 0.0 : std::arg(xi));
  BorelEvaluation out;
  out.xi = xi;
  out.contour = template_contour(d, dir, r, eps);
  if (f.is_zero()) return out;
  const Complex c = ipow(xi, d);
  QuadratureOptions q = opt.quad;
  q.tol = opt.quad.tol * std::max(1.0, std::exp(std::abs(c) * std::pow(r, d)));
  const auto res = integrate(f.integrand(c), out.contour, q);
  out.value = kMinusInvTwoPiI * res.value;
  out.error_estimate = res.error_estimate / (2.0 * kPi);
  return out;
}

BorelEvaluation borel_eval(const BorelForm& f, Complex xi, const BorelOptions& opt) {
  const Complex den = ipow(xi, f.d()) - 1.0;
  if (std::abs(den) < 1e-10)
    throw DomainError("xi is a d-th root of unity, a pole of the Borel transform; use borel_residues");
  BorelEvaluation e = A_function(f, xi, opt);
  e.value /= den;
  e.error_estimate /= std::abs(den);
  return e;
}

BorelEvaluation borel_eval(const ExpDifferential& w, Complex xi, const BorelOptions& opt) {
  return borel_eval(BorelForm(w), xi, opt);
}

BorelEvaluation borel_direct(const BorelForm& f, Complex xi, const BorelOptions& opt) {
  const int d = f.d();
  const double r = template_radius(f, opt.contour);
  const double eps = template_epsilon(d, opt.contour);
  if (std::abs(xi) <= 1.0) throw DomainError("the defining integral converges only for |xi| > 1");
  if (d * std::abs(std::arg(xi)) >= std::min(d * eps, kPi - d * eps))
    throw DomainError("xi lies outside the wedge of the direction-0 template");
  BorelEvaluation out;
  out.xi = xi;
  out.contour = template_contour(d, 0.0, r, eps);
  if (f.is_zero()) return out;
  const Complex c = ipow(xi, d) - 1.0;
  QuadratureOptions inner = opt.quad;
  inner.tol = opt.quad.tol * 1e-2;
  Integrand F;
  F.eval = [&f, c, d, inner](const Complex* z, Complex* o, int n) {
    for (int k = 0; k < n; ++k) {
      const Complex zd1 = ipow(z[k], d - 1);
      const Complex e = std::exp(c * zd1 * z[k]) * static_cast<double>(d) * zd1;
      if (e == Complex(0.0, 0.0)) {
        o[k] = e;
        continue;
      }
      QuadratureOptions q = inner;
      q.tol = std::min(1.0, inner.tol / std::abs(e));
      o[k] = e * omega_integral(f, z[k], 1, q).value;
    }
  };
  F.exp_singularities.push_back({std::nullopt, d, c});
  F.coefficient_poles = f.poles();
  const auto res = integrate(F, out.contour, opt.quad);
  // 1/(2 pi i) = -(-1/(2 pi i))
  out.value = -kMinusInvTwoPiI * res.value;
  out.error_estimate = res.error_estimate / (2.0 * kPi);
  return out;
}

std::vector<Estimate> borel_residues(const BorelForm& f, const BorelOptions& opt) {
  const int d = f.d();
  std::vector<Estimate> out(static_cast<std::size_t>(d));
  parallel_for(d, [&](int k) {
    const Complex xk = std::polar(1.0, 2.0 * kPi * k / d);
    const auto a = A_function(f, xk, opt);
    const Complex s = static_cast<double>(d) * ipow(xk, d - 1);
    out[static_cast<std::size_t>(k)] = {a.value / s, a.error_estimate / d};
  });
  return out;
}

std::vector<Estimate> borel_residues(const ExpDifferential& w, const BorelOptions& opt) {
  return borel_residues(BorelForm(w), opt);
}

std::vector<ResiduePeriod> residue_period_check(const ExpDifferential& w, const BorelOptions& opt, double rho) {
  const BorelForm f(w);
  const int d = f.d();
  const auto res = borel_residues(f, opt);
  if (rho <= 0.0) rho = 1.2 * template_radius(f, opt.contour);
  const Integrand iw = make_integrand(w);
  std::vector<ResiduePeriod> out(static_cast<std::size_t>(d));
  parallel_for(d, [&](int k) {
    const double a = ramification_angle(d, -k);
    const double b = ramification_angle(d, 1 - k);
    CurveSpec c{"w*_-k to w*_1-k",
                {Ray{{0.0, 0.0}, a, rho, RayEnd::infinity, true, std::nullopt}, Arc{{0.0, 0.0}, rho, a, b},
                 Ray{{0.0, 0.0}, b, rho, RayEnd::infinity, false, std::nullopt}}};
    if (f.source() == Convention::minus) c = rotated(c, std::polar(1.0, kPi / d));
    const auto p = integrate(iw, c, opt.quad);
    const Complex xk = std::polar(1.0, 2.0 * kPi * k / d);
    auto& e = out[static_cast<std::size_t>(k)];
    e.k = k;
    e.residue = res[static_cast<std::size_t>(k)].value;
    e.period = p.value;
    e.predicted = kMinusInvTwoPiI * p.value / (static_cast<double>(d) * ipow(xk, d - 1));
  });
  double scale = 0.0;
  for (const auto& e : out) scale = std::max(scale, std::abs(e.predicted));
  if (scale == 0.0) scale = 1.0;
  for (auto& e : out) e.residual = std::abs(e.residue - e.predicted) / scale;
  return out;
}

namespace {

constexpr int kN = kChebyshevPanelNodes;

double cheb_node(double a, double b, int j) {
  return 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * j / (kN - 1));
}

// Sum of the two highest Chebyshev coefficients over max(1, |g|) on the panel.
double cheb_tail(const std::vector<Complex>& v) {
  double scale = 1.0;
  for (const Complex x : v) scale = std::max(scale, std::abs(x));
  double tail = 0.0;
  for (int k = kN - 2; k < kN; ++k) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < kN; ++j) {
      const double h = (j == 0 || j == kN - 1) ? 0.5 : 1.0;
      s += h * v[static_cast<std::size_t>(j)] * std::cos(kPi * j * k / (kN - 1));
    }
    tail += std::abs(s) * 2.0 / (kN - 1) * (k == kN - 1 ? 0.5 : 1.0);
  }
  return tail / scale;
}

}  // namespace

SampledRay SampledRay::sample(const std::function<Complex(Complex)>& g, double theta, double length, double growth,
                              double tol, int max_nodes) {
  if (!(length > 0.0)) throw InputError("sampled ray needs a positive length");
  SampledRay s;
  s.theta_ = theta;
  s.length_ = length;
  s.growth_ = growth;
  const Complex u = std::polar(1.0, theta);
  const int n0 = std::max(1, static_cast<int>(std::ceil(length / 0.25)));
  std::vector<Panel> pending;
  for (int i = 0; i < n0; ++i) pending.push_back({length * i / n0, length * (i + 1) / n0, {}});
  int nodes = 0;
  std::vector<Panel> done;
  while (!pending.empty()) {
    const int m = static_cast<int>(pending.size());
    for (auto& p : pending) p.values.assign(kN, Complex(0.0, 0.0));
    parallel_for(m * kN, [&](int idx) {
      auto& p = pending[static_cast<std::size_t>(idx / kN)];
      const int j = idx % kN;
      p.values[static_cast<std::size_t>(j)] = g(cheb_node(p.a, p.b, j) * u);
    });
    nodes += m * kN;
    std::vector<Panel> next;
    for (auto& p : pending) {
      const double tail = cheb_tail(p.values);
      const int committed = nodes + static_cast<int>(next.size() + 2) * kN;
      if (tail > tol && committed <= max_nodes && p.b - p.a > 1e-6) {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back({p.a, mid, {}});
        next.push_back({mid, p.b, {}});
        nodes -= kN;
      } else {
        s.interp_error_ = std::max(s.interp_error_, tail);
        done.push_back(std::move(p));
      }
    }
    pending = std::move(next);
  }
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  s.panels_ = std::move(done);
  return s;
}

int SampledRay::node_count() const { return static_cast<int>(panels_.size()) * kN; }

std::vector<double> SampledRay::breakpoints() const {
  std::vector<double> b;
  for (const auto& p : panels_) b.push_back(p.a);
  if (!panels_.empty()) b.push_back(panels_.back().b);
  return b;
}

Complex SampledRay::operator()(double r) const {
  if (panels_.empty()) return {0.0, 0.0};
  if (r < -1e-12 || r > length_ * (1.0 + 1e-12)) throw DomainError("sample point outside the sampled ray");
  auto it = std::upper_bound(panels_.begin(), panels_.end(), r, [](double x, const Panel& p) { return x < p.a; });
  const Panel& p = it == panels_.begin() ? panels_.front() : *std::prev(it);
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (int j = 0; j < kN; ++j) {
    const double x = cheb_node(p.a, p.b, j);
    const double diff = r - x;
    if (diff == 0.0) return p.values[static_cast<std::size_t>(j)];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == kN - 1) w *= 0.5;
    num += (w / diff) * p.values[static_cast<std::size_t>(j)];
    den += w / diff;
  }
  return num / den;
}

namespace {

double laplace_rate(int d, double theta, Complex w) {
  return std::pow(std::abs(w), -d) * std::cos(d * (theta - std::arg(w)));
}

}  // namespace

double laplace_length(int d, double theta, Complex w, double growth, double tol) {
  const double rate = laplace_rate(d, theta, w);
  if (rate <= growth) throw DivergentEndError("Laplace kernel does not beat the growth of g for this w");
  return 1.1 * std::pow(std::log(1.0 / tol) / (rate - growth), 1.0 / d);
}

Estimate laplace_eval(const SampledRay& g, int d, Complex w, double tol) {
  if (w == Complex(0.0, 0.0)) throw DomainError("Laplace transform evaluated at w = 0");
  const double theta = g.theta();
  const double rate = laplace_rate(d, theta, w);
  if (rate <= g.growth()) throw DivergentEndError("Laplace kernel does not beat the growth of g for this w");
  const auto br = g.breakpoints();
  if (br.size() < 2) return {};
  const Complex u = std::polar(1.0, theta);
  const auto& gl = gl24();
  auto kernel = [&](double r) {
    const Complex xi = r * u;
    const Complex xd1 = ipow(xi, d - 1);
    return g(r) * std::exp(-ipow(xi / w, d)) * static_cast<double>(d) * xd1 * u;
  };
  auto rule = [&](double a, double b) {
    Complex s(0.0, 0.0);
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * kernel(m + h * gl.x[i]);
    return h * s;
  };
  Complex total(0.0, 0.0);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double a = br[i], b = br[i + 1], m = 0.5 * (a + b);
    const Complex whole = rule(a, b);
    const Complex halves = rule(a, m) + rule(m, b);
    total += halves;
    err += std::abs(halves - whole);
  }
  const double L = g.length();
  const double tail = std::abs(g(L)) * std::exp(-rate * std::pow(L, d)) / (rate - g.growth());
  if (tail > tol) throw DomainError("sampled ray too short for this w");
  err += tail + g.interpolation_error() * std::max(1.0, std::abs(total));
  const Complex s = ipow(1.0 / w, d);
  return {s * total, std::abs(s) * err};
}

SampledRay borel_samples(const BorelForm& f, double theta, double length, const BorelOptions& opt) {
  const double r = template_radius(f, opt.contour);
  auto g = [&](Complex xi) { return borel_eval(f, xi, opt).value; };
  return SampledRay::sample(g, theta, length, std::pow(r, f.d()), 1e-11);
}

}  // namespace expderham
