#include "expderham/localperiods/periods.hpp"

#include <cmath>
#include <numbers>

#include "expderham/algebra/gamma.hpp"
#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/error.hpp"
#include "expderham/parallel.hpp"
#include "expderham/reduction/reduction.hpp"

namespace expderham {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * kPi);

Complex omega(int k, int d) { return std::polar(1.0, 2.0 * kPi * k / d); }

}  // namespace

const char* to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "quadrature"; }

const char* to_string(PeriodMode m) {
  switch (m) {
    case PeriodMode::analytic: return "analytic";
    case PeriodMode::quadrature: return "quadrature";
    case PeriodMode::both: return "both";
  }
  return "?";
}

PeriodMode parse_period_mode(const std::string& s) {
  if (s == "analytic") return PeriodMode::analytic;
  if (s == "quadrature") return PeriodMode::quadrature;
  if (s == "both") return PeriodMode::both;
  throw InputError("mode must be analytic, quadrature or both, got '" + s + "'");
}

Complex ray_moment(int k, int j, int d) {
  if (d < 1 || k < 0 || k > d - 1 || j < 0 || j > d - 2) throw DomainError("ray_moment needs 0 <= k < d, 0 <= j <= d-2");
  const double g = gamma_real(static_cast<double>(j + 1) / d);
  return omega(k * (j + 1), d) * (g / d);
}

StandardLocalCurves standard_curves_for(const LocalExpType& t, double rho, const std::vector<Complex>& avoid) {
  if (t.sign < 0) return standard_local_curves(t, rho, avoid);
  // Build in the minus picture, then map by zeta = e^{i pi/d}.
  const Complex zeta = std::polar(1.0, kPi / t.d);
  std::vector<Complex> back;
  for (const Complex p : avoid) back.push_back(p / zeta);
  auto c = standard_local_curves(LocalExpType(-1, t.d), rho, back);
  c.gamma = rotated(c.gamma, zeta);
  for (auto& g : c.gamma_k) g = rotated(g, zeta);
  return c;
}

PeriodMatrix period_matrix(int d, const QuadratureOptions& opt) {
  if (d < 1) throw DomainError("period matrix needs d >= 1");
  PeriodMatrix pm;
  pm.d = d;
  pm.entries = Eigen::MatrixXcd::Zero(d, d);
  pm.error = Eigen::MatrixXd::Zero(d, d);
  pm.provenance.assign(d, std::vector<Provenance>(d, Provenance::analytic));
  pm.entries(0, 0) = kTwoPiI;
  for (int k = 1; k < d; ++k)
    for (int j = 0; j <= d - 2; ++j) pm.entries(k, j + 1) = ray_moment(k, j, d) - ray_moment(0, j, d);
  const auto curves = standard_local_curves(LocalExpType(-1, d));
  const auto w = ExpDifferential::local(-1, d, LaurentData::monomial(ExactComplex(1), -1));
  std::vector<QuadratureResult> col(static_cast<std::size_t>(d));
  parallel_for(d - 1, [&](int i) { col[i + 1] = integrate(w, curves.gamma_k[i], opt); });
  for (int k = 1; k < d; ++k) {
    pm.entries(k, 0) = col[k].value;
    pm.error(k, 0) = col[k].error_estimate;
    pm.provenance[k][0] = Provenance::quadrature;
  }
  return pm;
}

PeriodMatrix period_matrix_quadrature(int d, double rho, const QuadratureOptions& opt) {
  if (d < 1) throw DomainError("period matrix needs d >= 1");
  PeriodMatrix pm;
  pm.d = d;
  pm.entries = Eigen::MatrixXcd::Zero(d, d);
  pm.error = Eigen::MatrixXd::Zero(d, d);
  pm.provenance.assign(d, std::vector<Provenance>(d, Provenance::quadrature));
  const auto curves = standard_local_curves(LocalExpType(-1, d), rho);
  std::vector<QuadratureResult> out(static_cast<std::size_t>(d * d));
  parallel_for(d * d, [&](int idx) {
    const int row = idx / d, col = idx % d;
    const auto w = ExpDifferential::local(-1, d, LaurentData::monomial(ExactComplex(1), col - 1));
    out[idx] = integrate(w, row == 0 ? curves.gamma : curves.gamma_k[row - 1], opt);
  });
  for (int idx = 0; idx < d * d; ++idx) {
    pm.entries(idx / d, idx % d) = out[idx].value;
    pm.error(idx / d, idx % d) = out[idx].error_estimate;
  }
  return pm;
}

Complex det_pi2_closed_form(int d) {
  if (d < 2) throw DomainError("Pi_2 is empty for d < 2");
  Complex det = std::pow(1.0 / d, d - 1);
  for (int j = 0; j <= d - 2; ++j) det *= gamma_real(static_cast<double>(j + 1) / d);
  for (int i = 1; i <= d - 1; ++i) det *= omega(i, d);
  for (int i = 1; i <= d - 1; ++i)
    for (int j = i + 1; j <= d - 1; ++j) det *= omega(j, d) - omega(i, d);
  return det;
}

Complex det_pi_closed_form(int d) {
  if (d == 1) return kTwoPiI;
  return kTwoPiI * static_cast<double>(d) * det_pi2_closed_form(d);
}

bool row_sum_identity_check(int d) {
  if (d < 2) throw DomainError("row sum identity needs d >= 2");
  for (int j = 0; j <= d - 2; ++j) {
    Complex s(0.0, 0.0);
    for (int k = 0; k < d; ++k) s += ray_moment(k, j, d);
    if (std::abs(s.real()) > 1e-10 || std::abs(s.imag()) > 1e-10) return false;
  }
  return true;
}

LocalPeriods local_period_map(const ExpDifferential& w, PeriodMode mode, const QuadratureOptions& opt,
                              int truncation_order) {
  if (!w.is_local()) throw DomainError("local period map needs a local differential");
  const LocalExpType& t = w.local_type();
  const int d = t.d;
  LocalPeriods out;
  out.mode = mode;
  out.convention = t.convention();
  std::vector<Complex> avoid;
  double rho = 1.0;
  if (auto r = std::get_if<RationalFunction>(&w.coeff)) {
    if (r->den().degree() > 0) {
      for (const auto& root : polynomial_roots(r->den())) {
        avoid.push_back(root.value);
        rho = std::max(rho, 1.5 * std::abs(root.value));
      }
    }
  } else if (const auto& tail = w.laurent().tail()) {
    rho = std::max(rho, 1.5 * tail->R);
  }
  out.rho = rho;

  std::vector<Complex> analytic, quad;
  std::vector<double> aerr, qerr;
  if (mode != PeriodMode::quadrature) {
    const ReductionResult red = reduce(w, truncation_order);
    const PeriodMatrix pm = period_matrix(d, opt);
    const Complex zeta = std::polar(1.0, kPi / d);
    Eigen::VectorXcd c(d);
    Eigen::VectorXd cerr(d);
    for (int j = -1; j <= d - 2; ++j) {
      // h = +z^d: the canonical form z^j e^{z^d} dz pulls back to zeta^{j+1} w^j e^{-w^d} dw.
      const Complex f = t.sign > 0 ? std::pow(zeta, j + 1) : Complex(1.0, 0.0);
      c(j + 1) = f * red.canonical.at(j).to_complex();
      cerr(j + 1) = red.truncation_error.at(j);
    }
    const Eigen::VectorXcd v = pm.entries * c;
    for (int i = 0; i < d; ++i) {
      analytic.push_back(v(i));
      double e = 0.0;
      for (int j = 0; j < d; ++j) e += std::abs(pm.entries(i, j)) * cerr(j) + pm.error(i, j) * std::abs(c(j));
      aerr.push_back(e);
    }
  }
  if (mode != PeriodMode::analytic) {
    const auto curves = standard_curves_for(t, rho, avoid);
    out.rho = curves.rho;
    std::vector<QuadratureResult> res(static_cast<std::size_t>(d));
    parallel_for(d, [&](int i) { res[i] = integrate(w, i == 0 ? curves.gamma : curves.gamma_k[i - 1], opt); });
    for (const auto& r : res) {
      quad.push_back(r.value);
      qerr.push_back(r.error_estimate);
    }
  }
  if (mode == PeriodMode::quadrature) {
    out.values = quad;
    out.errors = qerr;
  } else {
    out.values = analytic;
    out.errors = aerr;
  }
  if (mode == PeriodMode::both)
    for (int i = 0; i < d; ++i) out.agreement_residual = std::max(out.agreement_residual, std::abs(analytic[i] - quad[i]));
  return out;
}

}  // namespace expderham
