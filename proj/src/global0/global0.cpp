#include "expderham/global0/global0.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"
#include "expderham/parallel.hpp"

namespace expderham {

namespace {

constexpr double kPi = std::numbers::pi;

Complex location_of(const Puncture& p) { return p.location ? p.location->to_complex() : Complex(0.0, 0.0); }

Poly reversed_poly(const Poly& p, int degree) {
  std::vector<ExactComplex> c(static_cast<std::size_t>(degree) + 1, ExactComplex(0));
  for (int k = 0; k <= p.degree(); ++k) c[static_cast<std::size_t>(degree - k)] = p[k];
  return Poly(std::move(c));
}

// -r(1/w) / w^2: the coefficient of dw after z = 1/w.
RationalFunction at_infinity_chart(const RationalFunction& r) {
  const int dn = r.num().degree(), dd = r.den().degree();
  Poly num = -reversed_poly(r.num(), dn);
  Poly den = reversed_poly(r.den(), dd);
  const int e = dd - dn - 2;
  if (e >= 0)
    num = num * Poly::monomial(1, e);
  else
    den = den * Poly::monomial(1, -e);
  return RationalFunction(num, den);
}

RationalFunction compose_inverse(const RationalFunction& r) {
  const int dn = r.num().degree(), dd = r.den().degree();
  Poly num = reversed_poly(r.num(), dn);
  Poly den = reversed_poly(r.den(), dd);
  const int e = dd - dn;
  if (e >= 0)
    num = num * Poly::monomial(1, e);
  else
    den = den * Poly::monomial(1, -e);
  return RationalFunction(num, den);
}

struct Obstacle {
  Complex center;
  double radius;
};

// Straight segment a -> b with arcs around every obstacle it passes through.
std::vector<CurvePiece> route(Complex a, Complex b, std::vector<Obstacle> obstacles) {
  struct Hit {
    double t1, t2;
    Obstacle o;
  };
  const Complex d = b - a;
  const double len2 = std::norm(d);
  std::vector<Hit> hits;
  for (const auto& o : obstacles) {
    const double ts = (std::conj(d) * (o.center - a)).real() / len2;
    const double dist = std::abs(a + ts * d - o.center);
    if (dist >= o.radius) continue;
    const double h = std::sqrt(o.radius * o.radius - dist * dist) / std::sqrt(len2);
    if (ts + h <= 0.0 || ts - h >= 1.0) continue;
    if (ts - h <= 0.0 || ts + h >= 1.0) throw DomainError("curve endpoint inside an obstacle disk");
    hits.push_back({ts - h, ts + h, o});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.t1 < y.t1; });
  std::vector<CurvePiece> out;
  Complex cur = a;
  double last = 0.0;
  for (const auto& h : hits) {
    if (h.t1 <= last) throw DomainError("overlapping detours");
    const Complex p1 = a + h.t1 * d, p2 = a + h.t2 * d;
    out.push_back(Segment{cur, p1});
    const double a1 = std::arg(p1 - h.o.center);
    const double a2 = std::arg(p2 - h.o.center);
    out.push_back(Arc{h.o.center, h.o.radius, a1, a1 + std::remainder(a2 - a1, 2.0 * kPi)});
    cur = p2;
    last = h.t2;
  }
  out.push_back(Segment{cur, b});
  return out;
}

struct Layout {
  std::vector<double> radius;
  std::vector<std::vector<RamificationPoint>> dirs;
};

// From w^{(i)}_0 out to the disk boundary and along it to angle phi.
CurveSpec leg_out(const ExpCurve0& c, const Layout& L, int i, double phi) {
  const auto& p = c.type.punctures[static_cast<std::size_t>(i)];
  const auto& w0 = L.dirs[static_cast<std::size_t>(i)][0];
  const double rho = L.radius[static_cast<std::size_t>(i)];
  const Complex ctr = location_of(p);
  const RayEnd end = p.at_infinity() ? RayEnd::infinity : RayEnd::center;
  CurveSpec s{"leg", {Ray{ctr, w0.direction, rho, end, true, w0}}};
  const double to = w0.direction + std::remainder(phi - w0.direction, 2.0 * kPi);
  if (std::abs(to - w0.direction) > 0.0) s.pieces.push_back(Arc{ctr, rho, w0.direction, to});
  return s;
}

Complex port(const ExpCurve0& c, const Layout& L, int i, double phi) {
  return location_of(c.type.punctures[static_cast<std::size_t>(i)]) +
         std::polar(L.radius[static_cast<std::size_t>(i)], phi);
}

}  // namespace

std::vector<int> ExpCurve0::d_list() const {
  std::vector<int> d;
  for (const auto& p : type.punctures) d.push_back(p.d());
  return d;
}

bool ExpCurve0::has_infinity() const {
  return std::any_of(type.punctures.begin(), type.punctures.end(), [](const Puncture& p) { return p.at_infinity(); });
}

ExpCurve0 make_curve0(GlobalExpType t) {
  if (t.punctures.empty()) throw InputError("an exp-algebraic curve needs at least one puncture");
  validate(t);
  ExpCurve0 c;
  c.H = t.H();
  c.type = std::move(t);
  return c;
}

int relative_homology_dim(int g, const std::vector<int>& d_list) {
  if (g < 0) throw InputError("genus must be non-negative");
  if (d_list.empty()) throw DomainError("at least one puncture is required");
  int s = 0;
  for (int d : d_list) {
    if (d < 1) throw DomainError("pole orders must be at least 1");
    s += d;
  }
  return 2 * g + s + static_cast<int>(d_list.size()) - 2;
}

std::vector<CurveSpec> CurveInventory::all() const {
  std::vector<CurveSpec> out;
  for (const auto* v : {&C1, &C2, &C3, &C4}) out.insert(out.end(), v->begin(), v->end());
  return out;
}

CurveInventory build_inventory(const ExpCurve0& c, const std::vector<Complex>& avoid_in) {
  const int n = c.n();
  const auto& P = c.type.punctures;
  std::vector<Complex> avoid;
  for (const Complex a : avoid_in) {
    bool at_p = false;
    for (const auto& p : P)
      if (p.location && std::abs(p.location->to_complex() - a) < 1e-9) at_p = true;
    if (!at_p) avoid.push_back(a);
  }
  Layout L;
  L.radius.assign(static_cast<std::size_t>(n), 0.0);
  double outer = 1.0;
  for (int i = 0; i < n; ++i) {
    L.dirs.push_back(ramification_directions(ExpType(c.type), i));
    if (P[i].at_infinity()) continue;
    const Complex p = location_of(P[i]);
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != i && !P[j].at_infinity()) dmin = std::min(dmin, std::abs(location_of(P[j]) - p));
    double rho = std::isfinite(dmin) ? std::min(0.5, 0.25 * dmin) : 0.5;
    int attempt = 0;
    auto clash = [&] {
      return std::any_of(avoid.begin(), avoid.end(), [&](Complex a) { return std::abs(a - p) < 1.5 * rho; });
    };
    while (clash()) {
      if (++attempt > 8) throw DomainError("puncture disk radius renegotiation failed near a coefficient pole");
      rho *= 0.5;
    }
    L.radius[i] = rho;
    outer = std::max(outer, std::abs(p) + rho);
  }
  for (const Complex a : avoid) outer = std::max(outer, std::abs(a));
  const double rho_inf = 1.5 * outer;
  for (int i = 0; i < n; ++i)
    if (P[i].at_infinity()) L.radius[i] = rho_inf;

  CurveInventory inv;
  inv.radii = L.radius;

  for (int i = 1; i < n; ++i) {
    double phi1 = 0.0, phii = 0.0;
    const bool inf1 = P[0].at_infinity(), infi = P[i].at_infinity();
    if (!inf1 && !infi) {
      phi1 = std::arg(location_of(P[i]) - location_of(P[0]));
      phii = std::arg(location_of(P[0]) - location_of(P[i]));
    } else if (inf1) {
      const Complex q = location_of(P[i]);
      phi1 = std::abs(q) > 1e-12 ? std::arg(q) : L.dirs[i][0].direction;
      phii = std::arg(std::polar(rho_inf, phi1) - q);
    } else {
      const Complex q = location_of(P[0]);
      phii = std::abs(q) > 1e-12 ? std::arg(q) : L.dirs[0][0].direction;
      phi1 = std::arg(std::polar(rho_inf, phii) - q);
    }
    std::vector<Obstacle> obs;
    for (int j = 1; j < n; ++j)
      if (j != i && !P[j].at_infinity()) obs.push_back({location_of(P[j]), 1.5 * L.radius[j]});
    for (const Complex a : avoid) {
      double r = 0.2;
      for (int j = 0; j < n; ++j) {
        const double gap = P[j].at_infinity() ? rho_inf - std::abs(a) : std::abs(a - location_of(P[j])) - L.radius[j];
        r = std::min(r, 0.25 * gap);
      }
      for (const Complex b : avoid)
        if (b != a) r = std::min(r, 0.25 * std::abs(a - b));
      obs.push_back({a, r});
    }
    CurveSpec s = leg_out(c, L, 0, phi1);
    s.label = "C2_" + std::to_string(i);
    for (auto& piece : route(port(c, L, 0, phi1), port(c, L, i, phii), obs)) s.pieces.push_back(piece);
    s = concatenate(s, reversed(leg_out(c, L, i, phii)));
    s.label = "C2_" + std::to_string(i);
    validate(s, 1e-9);
    inv.C2.push_back(std::move(s));
  }

  for (int i = 0; i < n; ++i) {
    const auto& dirs = L.dirs[i];
    const Complex ctr = location_of(P[i]);
    const double rho = L.radius[i];
    const RayEnd end = P[i].at_infinity() ? RayEnd::infinity : RayEnd::center;
    for (std::size_t j = 1; j < dirs.size(); ++j) {
      CurveSpec s{"C3_" + std::to_string(i + 1) + "_" + std::to_string(j), {}};
      s.pieces.push_back(Ray{ctr, dirs[0].direction, rho, end, true, dirs[0]});
      s.pieces.push_back(Arc{ctr, rho, dirs[0].direction, dirs[j].direction});
      s.pieces.push_back(Ray{ctr, dirs[j].direction, rho, end, false, dirs[j]});
      validate(s, 1e-9);
      inv.C3.push_back(std::move(s));
    }
  }
  for (int i = 0; i < n; ++i)
    inv.C4.push_back({"C4_" + std::to_string(i + 1), {Circle{location_of(P[i]), L.radius[i], !P[i].at_infinity()}}});
  return inv;
}

void require_second_kind(const ExpDifferential& w, double tol) {
  if (w.is_local()) return;
  const auto& t = w.global_type();
  const auto rep = second_kind_report(w.rational(), t, tol);
  if (!rep.second_kind) throw NotSecondKindError(rep.worst_pole, rep.worst_residue);
  const bool inf = std::any_of(t.punctures.begin(), t.punctures.end(), [](const Puncture& p) { return p.at_infinity(); });
  if (!inf && !w.rational().is_zero()) {
    const RationalFunction R = at_infinity_chart(w.rational());
    if (order_at(R, 0) < 0) {
      const Complex res = residue_at(R, compose_inverse(t.H()), 0.0, -order_at(R, 0));
      if (std::abs(res) / 2.0 > tol)
        throw NotSecondKindError(Complex(std::numeric_limits<double>::infinity(), 0.0), res);
    }
  }
}

GlobalPeriods global_period_map(const ExpDifferential& w, const CurveInventory& inv, const QuadratureOptions& opt) {
  if (w.is_local()) throw DomainError("global period map takes a global form");
  require_second_kind(w);
  const auto curves = inv.all();
  const Integrand f = make_integrand(w);
  GlobalPeriods out;
  out.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(curves.size()));
  out.errors = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(curves.size()));
  out.magnitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(curves.size()));
  if (!w.rational().is_zero()) {
    parallel_for(static_cast<int>(curves.size()), [&](int k) {
      const auto r = integrate(f, curves[static_cast<std::size_t>(k)], opt);
      out.values[k] = r.value;
      out.errors[k] = r.error_estimate;
      out.magnitudes[k] = r.abs_integral;
    });
  }
  for (int k = inv.circle_offset(); k < inv.size(); ++k) out.circle_sum += out.values[k];
  return out;
}

GlobalPeriods global_period_map(const ExpDifferential& w, const QuadratureOptions& opt) {
  const ExpCurve0 c = make_curve0(w.global_type());
  return global_period_map(w, build_inventory(c, non_puncture_poles(w.rational(), c.type)), opt);
}

std::vector<RationalFunction> spanning_family(const ExpCurve0& c, int size) {
  std::vector<ExactComplex> finite;
  for (const auto& p : c.type.punctures)
    if (p.location) finite.push_back(*p.location);
  const int k = static_cast<int>(finite.size());
  std::vector<RationalFunction> out;
  for (int total = 0; total <= 64 && static_cast<int>(out.size()) < size; ++total) {
    // exponents (m, m_1..m_k) with sum = total, m first
    std::vector<int> e(static_cast<std::size_t>(k) + 1, 0);
    std::function<void(int, int)> gen = [&](int idx, int left) {
      if (static_cast<int>(out.size()) >= size) return;
      if (idx == k) {
        e[static_cast<std::size_t>(k)] = left;
        Poly num = Poly::monomial(1, e[0]);
        Poly den = Poly::constant(1);
        for (int j = 0; j < k; ++j)
          for (int m = 0; m < e[static_cast<std::size_t>(j) + 1]; ++m) den = den * Poly::linear_factor(finite[j]);
        const RationalFunction r(num, den);
        const ExpDifferential w = ExpDifferential::global(c.type, r);
        try {
          require_second_kind(w);
        } catch (const NotSecondKindError&) {
          return;
        }
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[static_cast<std::size_t>(idx)] = v;
        gen(idx + 1, left - v);
      }
    };
    if (k == 0) {
      e[0] = total;
      const RationalFunction r(Poly::monomial(1, total));
      out.push_back(r);
    } else {
      gen(0, total);
    }
  }
  return out;
}

RankReport rank_dimension_check(const ExpCurve0& c, int family_size, double tol, const QuadratureOptions& opt) {
  const CurveInventory inv = build_inventory(c);
  const int N = inv.size();
  if (family_size == 0) family_size = N + 5;
  if (family_size < N + 5) throw InputError("family size must be at least N + 5");
  const auto fam = spanning_family(c, family_size);
  RankReport rep;
  rep.expected = relative_homology_dim(0, c.d_list());
  rep.family_size = static_cast<int>(fam.size());
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(fam.size()), N);
  Eigen::MatrixXd mag(static_cast<Eigen::Index>(fam.size()), N);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto p = global_period_map(ExpDifferential::global(c.type, fam[i]), inv, opt);
    const auto row = static_cast<Eigen::Index>(i);
    M.row(row) = p.values.transpose();
    mag.row(row) = p.magnitudes.transpose();
    const double scale = std::max(1.0, p.magnitudes.segment(inv.circle_offset(), inv.C4.size()).maxCoeff());
    rep.max_circle_sum = std::max(rep.max_circle_sum, std::abs(p.circle_sum) / scale);
  }
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const double m = mag.row(i).maxCoeff();
    if (m > 0.0) {
      M.row(i) /= m;
      mag.row(i) /= m;
    }
  }
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    const double m = mag.col(j).maxCoeff();
    if (m > 0.0) M.col(j) /= m;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) rep.singular_values.push_back(s[k]);
  // entries are bounded by 1 after scaling, so the cut is absolute
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > tol) ++rep.rank;
  if (rep.rank < s.size()) {
    const double next = s[rep.rank];
    const double last = rep.rank == 0 ? 1.0 : s[rep.rank - 1];
    rep.gap = next > 0.0 ? last / next : std::numeric_limits<double>::infinity();
  } else {
    rep.gap = std::numeric_limits<double>::infinity();
  }
  return rep;
}

PoleReduction reduce_pole_order(const ExpDifferential& w, const ExactComplex& q) {
  if (w.is_local()) throw DomainError("pole reduction takes a global form");
  const auto& t = w.global_type();
  for (const auto& p : t.punctures)
    if (p.location && *p.location == q) throw DomainError("q is a puncture");
  PoleReduction out{w, RationalFunction(), 0};
  RationalFunction r = w.rational();
  if (r.is_zero()) return out;
  const RationalFunction Hp = t.H().derivative();
  int m = -order_at(r, q);
  while (m >= 2) {
    const auto lc = laurent_at(r, q, -m);
    const ExactComplex c = lc.at(-m) / ExactComplex(m - 1);
    const RationalFunction g = RationalFunction::pole_term(c, q, m - 1);
    r = r + g.derivative() + g * Hp;
    out.g = out.g + g;
    ++out.steps;
    if (r.is_zero()) break;
    m = -order_at(r, q);
  }
  out.reduced = ExpDifferential::global(t, r);
  return out;
}

namespace {

// Exact Gaussian elimination; nullopt when A x = b is inconsistent.
std::optional<std::vector<ExactComplex>> solve_linear(std::vector<std::vector<ExactComplex>> A,
                                                      std::vector<ExactComplex> b) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!A[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    const ExactComplex inv = ExactComplex(1) / A[r][c];
    for (int j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      const ExactComplex f = A[i][c];
      for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<ExactComplex> x(static_cast<std::size_t>(cols), ExactComplex(0));
  for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = b[i];
  return x;
}

}  // namespace

std::optional<RationalFunction> solve_primitive(const RationalFunction& r, const GlobalExpType& t, int bound,
                                                bool* bound_too_small) {
  if (bound_too_small) *bound_too_small = false;
  if (r.is_zero()) return RationalFunction();
  const RationalFunction Hp = t.H().derivative();
  // Denominator of g: (z-q)^{m-1} at poles of r off the punctures, (z-p)^{max(0, m-d-1)} at finite punctures.
  Poly rest = r.den();
  Poly D = Poly::constant(1);
  const Puncture* at_inf = nullptr;
  for (const auto& p : t.punctures) {
    if (!p.location) {
      at_inf = &p;
      continue;
    }
    const int m = rest.multiplicity_of(*p.location);
    for (int k = 0; k < m; ++k) rest = rest.divmod(Poly::linear_factor(*p.location)).first;
    const int e = std::max(0, m - p.d() - 1);
    for (int k = 0; k < e; ++k) D = D * Poly::linear_factor(*p.location);
  }
  const auto sq = squarefree_decomposition(rest);
  for (std::size_t k = 0; k < sq.size(); ++k)
    for (std::size_t e = 0; e < k; ++e) D = D * sq[k];
  const int delta = r.num().degree() - r.den().degree();
  const int k_inf = at_inf ? delta - at_inf->d() + 1 : delta + 1;
  const int needed = D.degree() + std::max(0, k_inf);
  const int nmax = std::min(bound, needed);
  if (nmax < 0) {
    if (bound_too_small) *bound_too_small = true;
    return std::nullopt;
  }
  const Poly& A = Hp.num();
  const Poly& E = Hp.den();
  const Poly& rn = r.num();
  const Poly& rd = r.den();
  const Poly Dp = D.derivative();
  const Poly rhs = rn * D * D * E;
  std::vector<Poly> cols;
  for (int j = 0; j <= nmax; ++j) {
    const Poly zj = Poly::monomial(1, j);
    cols.push_back((zj.derivative() * D - zj * Dp) * E * rd + A * zj * D * rd);
  }
  int rows = rhs.degree() + 1;
  for (const auto& c : cols) rows = std::max(rows, c.degree() + 1);
  std::vector<std::vector<ExactComplex>> M(static_cast<std::size_t>(rows),
                                           std::vector<ExactComplex>(cols.size(), ExactComplex(0)));
  std::vector<ExactComplex> b(static_cast<std::size_t>(rows), ExactComplex(0));
  for (int i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) M[i][j] = cols[j][i];
    b[i] = rhs[i];
  }
  const auto x = solve_linear(std::move(M), std::move(b));
  if (!x) {
    if (bound_too_small) *bound_too_small = bound < needed;
    return std::nullopt;
  }
  return RationalFunction(Poly(*x), D);
}

GlobalExactness is_exact_global(const ExpDifferential& w, double tol, int symbolic_bound, const QuadratureOptions& opt) {
  require_second_kind(w);
  GlobalExactness out;
  bool too_small = false;
  if (symbolic_bound >= 0) {
    auto g = solve_primitive(w.rational(), w.global_type(), symbolic_bound, &too_small);
    if (g) {
      out.status = Exactness::exact;
      out.certificate = std::move(g);
      return out;
    }
  }
  const auto p = global_period_map(w, opt);
  out.max_period = p.values.size() ? p.values.cwiseAbs().maxCoeff() : 0.0;
  Exactness numeric = Exactness::not_exact;
  if (out.max_period < tol)
    numeric = Exactness::exact;
  else if (out.max_period <= 10.0 * tol)
    numeric = Exactness::undecided;
  if (symbolic_bound >= 0) {
    out.status = too_small ? Exactness::no_solution_within_bound : Exactness::not_exact;
    return out;
  }
  out.status = numeric;
  return out;
}

}  // namespace expderham
