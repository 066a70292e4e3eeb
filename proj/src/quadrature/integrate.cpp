#include "expderham/quadrature/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <queue>

#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/error.hpp"
#include "expderham/quadrature/kernels.hpp"

namespace expderham {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  double x[15];
  double wk[15];
  double wg[15];
  Rule() {
    for (int i = 0; i < 7; ++i) {
      x[i] = -kXgk[i];
      x[14 - i] = kXgk[i];
      wk[i] = wk[14 - i] = kWgk[i];
      const double g = (i % 2 == 1) ? kWg[i / 2] : 0.0;
      wg[i] = wg[14 - i] = g;
    }
    x[7] = 0.0;
    wk[7] = kWgk[7];
    wg[7] = kWg[3];
  }
};
const Rule& rule() {
  static const Rule r;
  return r;
}

enum class PanelKind { linear, arc, inverse };

// Oriented parameter interval [a, b] with a map t -> z(t).
struct Panel {
  PanelKind kind = PanelKind::linear;
  Complex base{0.0, 0.0};
  Complex dir{1.0, 0.0};  // linear: z = base + t dir; inverse: z = base + dir / t
  double radius = 1.0;    // arc: z = base + radius e^{i t}
  double a = 0.0, b = 1.0;

  void map(double t, Complex* z, Complex* dz) const {
    switch (kind) {
      case PanelKind::linear:
        *z = base + t * dir;
        *dz = dir;
        break;
      case PanelKind::arc: {
        const Complex e = std::polar(radius, t);
        *z = base + e;
        *dz = Complex(0.0, 1.0) * e;
        break;
      }
      case PanelKind::inverse:
        *z = base + dir / t;
        *dz = -dir / (t * t);
        break;
    }
  }
};

struct Interval {
  int panel;
  double a, b;
  Complex value;
  double err;
  double resabs;
  bool converged;
};

struct ByErr {
  bool operator()(const Interval& x, const Interval& y) const { return x.err < y.err; }
};

Interval evaluate(const Integrand& f, const std::vector<Panel>& panels, int pi, double a, double b, long* evals) {
  const Rule& r = rule();
  const Panel& p = panels[pi];
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  Complex z[15], dz[15], fz[15];
  for (int i = 0; i < 15; ++i) p.map(c + hl * r.x[i], &z[i], &dz[i]);
  f.eval(z, fz, 15);
  *evals += 15;
  double fr[15], fi[15], fa[15];
  for (int i = 0; i < 15; ++i) {
    const Complex v = fz[i] * dz[i];
    fr[i] = v.real();
    fi[i] = v.imag();
    fa[i] = std::abs(v);
  }
  const auto isa = kernels::active_isa();
  const Complex k = kernels::weighted_sum(r.wk, fr, fi, 15, isa);
  const Complex g = kernels::weighted_sum(r.wg, fr, fi, 15, isa);
  double resabs = 0.0, resasc = 0.0;
  const Complex mean = 0.5 * k;
  for (int i = 0; i < 15; ++i) resabs += r.wk[i] * fa[i];
  for (int i = 0; i < 15; ++i) resasc += r.wk[i] * std::abs(Complex(fr[i], fi[i]) - mean);
  const double ahl = std::abs(hl);
  resabs *= ahl;
  resasc *= ahl;
  double err = std::abs((k - g) * hl);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * kEps * resabs;
  bool converged = err <= floor;
  err = std::max(err, floor);
  if (!std::isfinite(err) || !std::isfinite(k.real()) || !std::isfinite(k.imag()))
    throw DivergentEndError("integrand is not finite on the path");
  if (std::abs(b - a) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)})) converged = true;
  return {pi, a, b, k * hl, err, resabs, converged};
}

double dist_segment(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double n = std::norm(d);
  double t = n > 0.0 ? std::real((p - a) * std::conj(d)) / n : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double dist_arc(Complex p, Complex c, double r, double t1, double t2) {
  const double lo = std::min(t1, t2), hi = std::max(t1, t2);
  const Complex w = p - c;
  double best = std::min(std::abs(p - (c + std::polar(r, t1))), std::abs(p - (c + std::polar(r, t2))));
  if (std::abs(w) > 0.0) {
    double phi = std::arg(w);
    // bring phi into [lo, lo + 2 pi)
    phi = lo + std::fmod(std::fmod(phi - lo, 2.0 * std::numbers::pi) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    if (phi <= hi || hi - lo >= 2.0 * std::numbers::pi) best = std::min(best, std::abs(std::abs(w) - r));
  } else {
    best = r;
  }
  return best;
}

double dist_ray_inf(Complex p, Complex c, Complex u, double t0) {
  const double t = std::max(t0, std::real((p - c) * std::conj(u)));
  return std::abs(p - (c + t * u));
}

void check_end(const Integrand& f, const Ray& ray, const QuadratureOptions& opt, bool* algebraic) {
  *algebraic = false;
  const ExpSingularity* s = nullptr;
  for (const auto& e : f.exp_singularities) {
    if (ray.end == RayEnd::infinity && !e.location) s = &e;
    if (ray.end == RayEnd::center && e.location && std::abs(*e.location - ray.center) < 1e-12) s = &e;
  }
  if (!s) {
    if (ray.end == RayEnd::infinity && f.coefficient_order_at_infinity && *f.coefficient_order_at_infinity >= 2) {
      *algebraic = true;
      return;
    }
    throw DivergentEndError("no decaying exponential at the end of a ray");
  }
  const double d = s->order;
  const double phase = ray.end == RayEnd::infinity ? std::arg(s->leading) + d * ray.theta
                                                   : std::arg(s->leading) - d * ray.theta;
  const double to_edge = std::abs(std::remainder(phase - 0.5 * std::numbers::pi, std::numbers::pi)) / d;
  if (to_edge < opt.stokes_guard) throw StokesEdgeError("ray direction within guard band of a sector edge");
  if (std::cos(phase) > 0.0) throw DivergentEndError("ray runs into a growth sector");
}

}  // namespace

Integrand make_rational_integrand(const CPoly& gn, const CPoly& gd, const CPoly& hn, const CPoly& hd) {
  Integrand f;
  struct Data {
    std::vector<Complex> gn, gd, hn, hd;
  };
  auto data = std::make_shared<Data>(Data{gn.coeffs(), gd.coeffs(), hn.coeffs(), hd.coeffs()});
  f.eval = [data](const Complex* z, Complex* out, int n) {
    const auto isa = kernels::active_isa();
    std::vector<double> buf(static_cast<std::size_t>(12) * n);
    double* zr = buf.data();
    double* zi = zr + n;
    double* a_r = zi + n;
    double* a_i = a_r + n;
    double* b_r = a_i + n;
    double* b_i = b_r + n;
    double* c_r = b_i + n;
    double* c_i = c_r + n;
    double* d_r = c_i + n;
    double* d_i = d_r + n;
    double* e_r = d_i + n;
    double* e_i = e_r + n;
    for (int k = 0; k < n; ++k) {
      zr[k] = z[k].real();
      zi[k] = z[k].imag();
    }
    auto poly = [&](const std::vector<Complex>& c, double* r, double* i) {
      if (c.empty()) {
        std::fill(r, r + n, 0.0);
        std::fill(i, i + n, 0.0);
      } else {
        kernels::horner(c.data(), static_cast<int>(c.size()), zr, zi, r, i, n, isa);
      }
    };
    poly(data->gn, a_r, a_i);
    poly(data->gd, b_r, b_i);
    poly(data->hn, c_r, c_i);
    poly(data->hd, d_r, d_i);
    for (int k = 0; k < n; ++k) {
      const Complex h = Complex(c_r[k], c_i[k]) / Complex(d_r[k], d_i[k]);
      c_r[k] = h.real();
      c_i[k] = h.imag();
    }
    kernels::cexp(c_r, c_i, e_r, e_i, n, isa);
    for (int k = 0; k < n; ++k) {
      const Complex g = Complex(a_r[k], a_i[k]) / Complex(b_r[k], b_i[k]);
      const Complex e(e_r[k], e_i[k]);
      // e^{h} can underflow to 0 where g overflows; treat the product as 0 then.
      out[k] = (e == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : g * e;
    }
  };
  const int dh = hn.degree() - hd.degree();
  if (!hn.is_zero() && dh > 0) f.exp_singularities.push_back({std::nullopt, dh, hn.leading() / hd.leading()});
  if (!gn.is_zero()) f.coefficient_order_at_infinity = gd.degree() - gn.degree();
  return f;
}

Integrand make_integrand(const ExpDifferential& w) {
  if (w.is_local()) {
    const auto& t = w.local_type();
    CPoly hn = CPoly::monomial(Complex(t.sign, 0.0), t.d);
    if (auto g = std::get_if<LaurentData>(&w.coeff)) {
      const int lo = std::min(0, g->min_exponent());
      std::vector<Complex> c;
      for (const auto& [k, v] : g->coeffs()) {
        const auto idx = static_cast<std::size_t>(k - lo);
        if (c.size() <= idx) c.resize(idx + 1, Complex(0.0, 0.0));
        c[idx] = v.to_complex();
      }
      Integrand f = make_rational_integrand(CPoly(c), CPoly::monomial(1.0, -lo), hn, CPoly::constant(1.0));
      if (lo < 0) f.coefficient_poles.push_back({0.0, 0.0});
      return f;
    }
    const auto& r = w.rational();
    Integrand f = make_rational_integrand(to_floating(r.num()), to_floating(r.den()), hn, CPoly::constant(1.0));
    if (r.den().degree() > 0)
      for (const auto& root : polynomial_roots(r.den())) f.coefficient_poles.push_back(root.value);
    return f;
  }
  const auto& t = w.global_type();
  const RationalFunction H = t.H();
  const auto& r = w.rational();
  Integrand f = make_rational_integrand(to_floating(r.num()), to_floating(r.den()), to_floating(H.num()),
                                        to_floating(H.den()));
  f.exp_singularities.clear();
  for (const auto& p : t.punctures) {
    if (p.at_infinity())
      f.exp_singularities.push_back({std::nullopt, p.d(), p.leading().to_complex()});
    else
      f.exp_singularities.push_back({p.location->to_complex(), p.d(), p.leading().to_complex()});
  }
  if (r.den().degree() > 0) {
    for (const auto& root : polynomial_roots(r.den())) {
      bool at_puncture = false;
      for (const auto& p : t.punctures)
        if (p.location && std::abs(p.location->to_complex() - root.value) < 1e-9) at_puncture = true;
      if (!at_puncture) f.coefficient_poles.push_back(root.value);
    }
  }
  return f;
}

double decay_truncation_radius(const Integrand& f, Complex center, double theta, RayEnd end, double t0, double tol,
                               const QuadratureOptions& opt) {
  Ray probe{center, theta, 1.0, end, false, std::nullopt};
  bool algebraic = false;
  check_end(f, probe, opt, &algebraic);
  if (algebraic) throw DomainError("truncation radius is undefined for algebraically decaying ends");
  const Complex u = std::polar(1.0, theta);
  auto logF = [&](double T) {
    Complex z, dz;
    if (end == RayEnd::infinity) {
      z = center + T * u;
      dz = u;
    } else {
      z = center + u / T;
      dz = -u / (T * T);
    }
    return std::log(std::abs(f(z) * dz));
  };
  const double target = std::log(tol / 100.0);
  const double sup_target = std::log(tol / 10.0);
  double T = std::max(t0, 1e-12);
  for (int iter = 0; iter < 200000; ++iter) {
    const double L = logF(T);
    if (L == -INFINITY) return T;
    const double delta = 1e-5 * std::max(1.0, T);
    const double slope = (logF(T + delta) - L) / delta;
    // tail ~ |F(T)| / |d log F / dT| once the integrand decays; the sup itself must also be small.
    if (slope < 0.0 && L - std::log(-slope) < target && L < sup_target) return T;
    T += std::max(0.02, 0.01 * T);
    if (T > 1e12) break;
  }
  throw DivergentEndError("integrand does not decay along the ray");
}

double decay_truncation_radius(const ExpDifferential& w, double theta, double tol) {
  return decay_truncation_radius(make_integrand(w), {0.0, 0.0}, theta, RayEnd::infinity, 1e-3, tol);
}

QuadratureResult integrate(const Integrand& f, const CurveSpec& c, const QuadratureOptions& opt) {
  validate(c);
  QuadratureResult res;
  std::vector<Panel> panels;
  double tail_error = 0.0;
  std::vector<Complex> forbidden = f.coefficient_poles;
  for (const auto& e : f.exp_singularities)
    if (e.location) forbidden.push_back(*e.location);

  for (const auto& piece : c.pieces) {
    if (auto s = std::get_if<Segment>(&piece)) {
      for (const Complex p : forbidden)
        if (dist_segment(p, s->a, s->b) < opt.pole_clearance) throw PoleOnPathError(p, opt.pole_clearance);
      panels.push_back({PanelKind::linear, s->a, s->b - s->a, 1.0, 0.0, 1.0});
    } else if (auto a = std::get_if<Arc>(&piece)) {
      for (const Complex p : forbidden)
        if (dist_arc(p, a->center, a->radius, a->theta1, a->theta2) < opt.pole_clearance)
          throw PoleOnPathError(p, opt.pole_clearance);
      panels.push_back({PanelKind::arc, a->center, 1.0, a->radius, a->theta1, a->theta2});
    } else if (auto ci = std::get_if<Circle>(&piece)) {
      for (const Complex p : forbidden)
        if (std::abs(std::abs(p - ci->center) - ci->radius) < opt.pole_clearance)
          throw PoleOnPathError(p, opt.pole_clearance);
      const double two_pi = 2.0 * std::numbers::pi;
      panels.push_back({PanelKind::arc, ci->center, 1.0, ci->radius, 0.0, ci->counterclockwise ? two_pi : -two_pi});
    } else {
      const auto& r = std::get<Ray>(piece);
      const Complex u = std::polar(1.0, r.theta);
      for (const Complex p : forbidden) {
        if (r.end == RayEnd::center && std::abs(p - r.center) < 1e-12) continue;
        const double dist = r.end == RayEnd::infinity ? dist_ray_inf(p, r.center, u, r.radius)
                                                      : dist_segment(p, r.center, r.finite_point());
        if (dist < opt.pole_clearance) throw PoleOnPathError(p, opt.pole_clearance);
      }
      bool algebraic = false;
      check_end(f, r, opt, &algebraic);
      Panel p;
      p.base = r.center;
      p.dir = u;
      if (algebraic) {
        // z = center + u / t with t in (0, 1/rho]
        p.kind = PanelKind::inverse;
        p.a = 1.0 / r.radius;
        p.b = 0.0;
      } else {
        const double t0 = r.end == RayEnd::infinity ? r.radius : 1.0 / r.radius;
        const double T = std::max(t0, decay_truncation_radius(f, r.center, r.theta, r.end, t0, opt.tol, opt));
        res.truncation_radius = std::max(res.truncation_radius, T);
        tail_error += opt.tol / 100.0;
        p.kind = r.end == RayEnd::infinity ? PanelKind::linear : PanelKind::inverse;
        p.a = t0;
        p.b = T;
        if (T <= t0) continue;
      }
      if (r.inward) std::swap(p.a, p.b);
      panels.push_back(p);
    }
  }

  long evals = 0;
  std::priority_queue<Interval, std::vector<Interval>, ByErr> active;
  std::vector<Interval> done;
  double total_err = 0.0;
  for (int i = 0; i < static_cast<int>(panels.size()); ++i) {
    // Start every panel with a few pieces so narrow features are not missed.
    constexpr int kStart = 4;
    for (int s = 0; s < kStart; ++s) {
      const double a = panels[i].a + (panels[i].b - panels[i].a) * s / kStart;
      const double b = panels[i].a + (panels[i].b - panels[i].a) * (s + 1) / kStart;
      Interval iv = evaluate(f, panels, i, a, b, &evals);
      total_err += iv.err;
      if (iv.converged)
        done.push_back(iv);
      else
        active.push(iv);
    }
  }
  while (!active.empty() && total_err > opt.tol) {
    if (evals + 30 > opt.budget) {
      Complex best(0.0, 0.0);
      for (const auto& iv : done) best += iv.value;
      auto rest = active;
      while (!rest.empty()) {
        best += rest.top().value;
        rest.pop();
      }
      throw BudgetExhaustedError(best, total_err + tail_error);
    }
    Interval worst = active.top();
    active.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    for (const auto& [a, b] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      Interval iv = evaluate(f, panels, worst.panel, a, b, &evals);
      total_err += iv.err;
      if (iv.converged)
        done.push_back(iv);
      else
        active.push(iv);
    }
  }
  std::vector<Interval> all = done;
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  // Deterministic summation order.
  std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) {
    return x.panel != y.panel ? x.panel < y.panel : std::min(x.a, x.b) < std::min(y.a, y.b);
  });
  double err = 0.0;
  for (const auto& iv : all) {
    res.value += iv.value;
    err += iv.err;
    res.abs_integral += iv.resabs;
  }
  res.error_estimate = err + tail_error;
  res.evaluations = evals;
  return res;
}

QuadratureResult integrate(const ExpDifferential& w, const CurveSpec& c, const QuadratureOptions& opt) {
  return integrate(make_integrand(w), c, opt);
}

}  // namespace expderham
