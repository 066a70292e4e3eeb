#include "expderham/model/differential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"

namespace expderham {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance from p to the ray center + t e^{i theta}, t >= t0.
double distance_to_ray(Complex p, Complex center, double theta, double t0) {
  const Complex u = std::polar(1.0, theta);
  const double t = std::max(t0, std::real((p - center) * std::conj(u)));
  return std::abs(p - (center + t * u));
}

}  // namespace

bool ExpDifferential::is_zero() const {
  if (auto g = std::get_if<LaurentData>(&coeff)) return g->is_zero();
  return std::get<RationalFunction>(coeff).is_zero();
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi - 1e-14) t = 0.0;
  return t;
}

double sector_half_width(int d) { return kPi / (2.0 * d); }

double sector_margin(const RamificationPoint& w, double theta) {
  double diff = std::remainder(theta - w.direction, 2.0 * kPi);
  return sector_half_width(w.d) - std::abs(diff);
}

std::vector<RamificationPoint> ramification_directions(const ExpType& t, int puncture) {
  int d = 0;
  double arg_lead = 0.0;
  bool at_infinity = true;
  if (auto l = std::get_if<LocalExpType>(&t)) {
    if (puncture != 0) throw DomainError("local type has a single puncture");
    d = l->d;
    arg_lead = l->sign > 0 ? 0.0 : kPi;
  } else {
    const auto& g = std::get<GlobalExpType>(t);
    if (puncture < 0 || puncture >= static_cast<int>(g.punctures.size())) throw DomainError("puncture index out of range");
    const auto& p = g.punctures[puncture];
    d = p.d();
    if (d < 1) throw DomainError("puncture without exponential singularity");
    arg_lead = std::arg(p.leading().to_complex());
    at_infinity = p.at_infinity();
  }
  std::vector<double> angles;
  for (int j = 0; j < d; ++j) {
    // Re h -> -inf: arg(a) + d*theta = pi at inf, arg(a) - d*theta = pi at a finite point.
    const double th = at_infinity ? (kPi - arg_lead + 2.0 * kPi * j) / d : (arg_lead - kPi - 2.0 * kPi * j) / d;
    angles.push_back(normalize_angle(th));
  }
  std::sort(angles.begin(), angles.end());
  std::vector<RamificationPoint> out;
  for (int j = 0; j < d; ++j) out.push_back({puncture, j, angles[j], d});
  return out;
}

StandardLocalCurves standard_local_curves(const LocalExpType& t, double rho, const std::vector<Complex>& avoid,
                                          double clearance) {
  if (!(rho > 0.0)) throw DomainError("curve radius must be positive");
  const auto dirs = ramification_directions(t);
  for (int attempt = 0; attempt <= 8; ++attempt) {
    bool clash = false;
    for (const Complex p : avoid) {
      if (std::abs(std::abs(p) - rho) < clearance) clash = true;
      for (const auto& w : dirs)
        if (distance_to_ray(p, {0.0, 0.0}, w.direction, rho) < clearance) clash = true;
    }
    if (!clash) {
      StandardLocalCurves out;
      out.rho = rho;
      out.gamma = CurveSpec{"gamma", {Circle{{0.0, 0.0}, rho, true}}};
      for (int k = 1; k < t.d; ++k) {
        const auto& w0 = dirs[0];
        const auto& wk = dirs[k];
        CurveSpec c{"gamma_" + std::to_string(k), {}};
        c.pieces.push_back(Ray{{0.0, 0.0}, w0.direction, rho, RayEnd::infinity, true, w0});
        c.pieces.push_back(Arc{{0.0, 0.0}, rho, w0.direction, wk.direction});
        c.pieces.push_back(Ray{{0.0, 0.0}, wk.direction, rho, RayEnd::infinity, false, wk});
        out.gamma_k.push_back(std::move(c));
      }
      return out;
    }
    if (attempt == 8) break;
    rho *= 1.1;
  }
  throw PoleOnPathError(avoid.empty() ? Complex{} : avoid.front(), clearance);
}

std::map<int, Complex> rotate_convention(const LaurentData& g, int d) {
  std::map<int, Complex> out;
  for (const auto& [j, c] : g.coeffs()) out.emplace(j, std::polar(1.0, kPi * (j + 1) / d) * c.to_complex());
  return out;
}

int divisor_degree(const RationalFunction& g, const GlobalExpType& t) {
  if (g.is_zero()) throw DomainError("divisor of the zero function");
  validate(t);
  auto total_order = [](const Poly& p) {
    int n = 0;
    if (p.degree() < 1) return 0;
    const auto f = squarefree_decomposition(p);
    for (std::size_t k = 0; k < f.size(); ++k) n += static_cast<int>(k + 1) * std::max(0, f[k].degree());
    return n;
  };
  // Orders at the finite points (punctures included) plus the order at inf.
  return total_order(g.num()) - total_order(g.den()) + order_at_infinity(g);
}

std::vector<Complex> non_puncture_poles(const RationalFunction& r, const GlobalExpType& t) {
  std::vector<Complex> out;
  if (r.den().degree() < 1) return out;
  for (const auto& root : polynomial_roots(r.den())) {
    bool at_puncture = false;
    for (const auto& p : t.punctures)
      if (p.location && std::abs(p.location->to_complex() - root.value) < 1e-9) at_puncture = true;
    if (!at_puncture) out.push_back(root.value);
  }
  return out;
}

SecondKindReport second_kind_report(const RationalFunction& r, const GlobalExpType& t, double tol) {
  SecondKindReport rep;
  if (r.den().degree() < 1) return rep;
  const RationalFunction H = t.H();
  double worst = -1.0;
  for (const auto& root : polynomial_roots(r.den())) {
    bool at_puncture = false;
    for (const auto& p : t.punctures)
      if (p.location && std::abs(p.location->to_complex() - root.value) < 1e-9) at_puncture = true;
    if (at_puncture) continue;
    const Complex res = residue_at(r, H, root.value, root.multiplicity);
    const double scale = 1.0 + std::abs(std::exp(H(root.value)));
    const double rel = std::abs(res) / scale;
    if (rel > worst) {
      worst = rel;
      rep.worst_pole = root.value;
      rep.worst_residue = res;
    }
    if (rel > tol) rep.second_kind = false;
  }
  return rep;
}

bool is_second_kind(const ExpDifferential& w, double tol) {
  if (w.is_local()) return true;
  return second_kind_report(w.rational(), w.global_type(), tol).second_kind;
}

bool is_holomorphic_off_punctures(const RationalFunction& r, const GlobalExpType& t) {
  return non_puncture_poles(r, t).empty();
}

}  // namespace expderham
