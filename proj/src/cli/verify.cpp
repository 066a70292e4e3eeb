#include <cmath>
#include <random>

#include "expderham/borel/borel.hpp"
#include "expderham/cli/commands.hpp"
#include "expderham/error.hpp"
#include "expderham/global0/global0.hpp"

namespace expderham {

namespace {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed() const { return residual <= threshold; }
};

using Suite = std::vector<Check> (*)();

LaurentData random_laurent(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::map<int, ExactComplex> c;
  for (int e = lo; e <= hi; ++e) c.emplace(e, ExactComplex(frac(num(rng), den(rng)), frac(num(rng), den(rng))));
  return LaurentData(std::move(c));
}

// F' + sign d z^{d-1} F
LaurentData exact_local(const LaurentData& F, int d, int sign) {
  LaurentData out = F.derivative();
  for (const auto& [m, c] : F.coeffs()) out.add(m + d - 1, ExactComplex(static_cast<long>(sign * d)) * c);
  return out;
}

double bool_residual(bool ok) { return ok ? 0.0 : 1.0; }

std::vector<Check> suite_reduction() {
  std::mt19937_64 rng(11);
  int round_trip_bad = 0, basis_bad = 0, exact_bad = 0;
  for (int d = 1; d <= 5; ++d)
    for (int sign : {1, -1}) {
      for (int t = 0; t < 8; ++t) {
        const LaurentData g = random_laurent(rng, -12, 12);
        if (!reduction_residual(g, reduce_laurent(g, d, sign)).empty()) ++round_trip_bad;
        if (!reduce_laurent(exact_local(random_laurent(rng, -8, 8), d, sign), d, sign).all_zero()) ++exact_bad;
      }
      for (int j = -1; j <= d - 2; ++j) {
        const auto r = reduce_laurent(LaurentData::monomial(1, j), d, sign);
        for (const auto& [i, c] : r.canonical)
          if (c != ExactComplex(i == j ? 1 : 0)) ++basis_bad;
      }
    }
  return {{"round trip residual is exactly zero (80 forms)", static_cast<double>(round_trip_bad), 0.0},
          {"basis forms map to unit vectors", static_cast<double>(basis_bad), 0.0},
          {"exact forms reduce to zero (80 forms)", static_cast<double>(exact_bad), 0.0}};
}

std::vector<Check> suite_alpha_beta() {
  std::vector<Check> out;
  for (int d = 1; d <= 6; ++d) {
    int bad = 0;
    for (int sign : {1, -1})
      for (int k = 2; k <= 40; ++k) {
        const auto r = reduce_laurent(LaurentData::monomial(1, -k), d, sign);
        for (int j = -1; j <= d - 2; ++j)
          if (ExactComplex(alpha_beta(j, k, d, sign).second) != r.canonical.at(j)) ++bad;
        for (int j = 1; j <= k; ++j)
          if (ExactComplex(alpha_beta(j, k, d, sign).first) != r.primitive[-j]) ++bad;
      }
    out.push_back({"closed form equals recurrence, d=" + std::to_string(d) + ", k<=40", static_cast<double>(bad), 0.0});
  }
  return out;
}

std::vector<Check> suite_local(int d) {
  std::vector<Check> out;
  QuadratureOptions q;
  q.tol = 1e-12;
  const Complex det_q = period_matrix_quadrature(d, 1.0, q).determinant();
  const Complex det_c = det_pi_closed_form(d);
  out.push_back({"|det Pi| quadrature vs closed form (relative)", std::abs(std::abs(det_q) / std::abs(det_c) - 1.0), 1e-8});
  out.push_back({"analytic period matrix determinant (relative)",
                 std::abs(period_matrix(d, q).determinant() - det_c) / std::abs(det_c), 1e-9});
  out.push_back({"sheet sums of ray moments vanish", bool_residual(row_sum_identity_check(d)), 0.0});

  std::mt19937_64 rng(static_cast<unsigned>(100 + d));
  double both = 0.0, exact_max = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto w = ExpDifferential::local(-1, d, random_laurent(rng, -4, 3));
    const auto lp = local_period_map(w, PeriodMode::both, q);
    double scale = 1.0;
    for (const Complex v : lp.values) scale = std::max(scale, std::abs(v));
    both = std::max(both, lp.agreement_residual / scale);
    const auto e = ExpDifferential::local(-1, d, exact_local(random_laurent(rng, -4, 2), d, -1));
    for (const Complex v : local_period_map(e, PeriodMode::quadrature, q).values) exact_max = std::max(exact_max, std::abs(v));
  }
  out.push_back({"analytic and quadrature periods agree (relative)", both, 1e-7});
  out.push_back({"exact forms have vanishing periods", exact_max, 1e-8});
  return out;
}

ExpDifferential double_pole(int sign, int d, const ExactComplex& a, const ExactComplex& c) {
  const Poly f = Poly::linear_factor(a);
  return {LocalExpType(sign, d), RationalFunction(Poly::constant(c), f * f)};
}

std::vector<Check> suite_borel(int d) {
  std::vector<Check> out;
  const std::vector<ExpDifferential> forms = {
      double_pole(1, d, frac(3, 10), 1), double_pole(-1, d, ExactComplex(frac(1, 5), frac(1, 5)), ExactComplex(2, -1))};
  double worst = 0.0;
  for (const auto& w : forms)
    for (const auto& row : residue_period_check(w)) worst = std::max(worst, row.residual);
  out.push_back({"residue-period identity (relative)", worst, 1e-6});

  double inv = 0.0;
  const BorelForm f(forms[0]);
  const double th = default_laplace_direction(d);
  const double growth = std::pow(template_radius(f, {}), d);
  const double pi = std::acos(-1.0);
  std::vector<Complex> zs;
  double len = 0.0;
  for (double da : {-0.15, 0.0, 0.15}) {
    zs.push_back(std::polar(2.5, pi / (2.0 * d) + da));
    len = std::max(len, laplace_length(d, th, 1.0 / zs.back(), growth));
  }
  const auto g = borel_samples(f, th, len);
  for (const Complex z : zs) {
    const Complex fz = f_from_omega(f, z).value;
    inv = std::max(inv, std::abs(fz - laplace_eval(g, d, 1.0 / z).value) / std::abs(fz));
  }
  out.push_back({"Laplace transform inverts the Borel transform (relative, 3 points)", inv, 1e-6});
  return out;
}

std::vector<ExpCurve0> rank_configurations() {
  const ExactComplex m1(-1);
  auto inf = [](std::vector<ExactComplex> c) { return Puncture{std::nullopt, Poly(std::move(c))}; };
  auto at = [](ExactComplex p, std::vector<ExactComplex> c) { return Puncture{std::move(p), Poly(std::move(c))}; };
  return {make_curve0({{inf({0, 0, 0, m1})}}),
          make_curve0({{inf({0, m1}), at(0, {0, m1})}}),
          make_curve0({{inf({0, 0, m1})}}),
          make_curve0({{inf({0, 0, m1}), at(0, {0, m1})}}),
          make_curve0({{inf({0, m1}), at(0, {0, frac(-1, 4)}), at(ExactComplex(0, frac(1, 2)), {0, frac(-1, 8)})}})};
}

std::string d_label(const ExpCurve0& c) {
  std::string s = "[";
  for (int d : c.d_list()) s += (s.size() > 1 ? "," : "") + std::to_string(d);
  return s + "]";
}

std::vector<Check> suite_global_rank() {
  std::vector<Check> out;
  for (const auto& c : rank_configurations()) {
    const auto rep = rank_dimension_check(c);
    out.push_back({"rank equals dimension for d=" + d_label(c), static_cast<double>(std::abs(rep.rank - rep.expected)), 0.0});
    out.push_back({"singular value gap for d=" + d_label(c) + " (inverse)", 1.0 / rep.gap, 1e-6});
  }
  return out;
}

std::vector<Check> suite_residue_relation() {
  std::vector<Check> out;
  double worst = 0.0;
  for (const auto& c : rank_configurations()) worst = std::max(worst, rank_dimension_check(c).max_circle_sum);
  out.push_back({"circle periods sum to zero (relative)", worst, 1e-8});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 3);
  const auto confs = rank_configurations();
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    auto small = [&] {
      std::vector<ExactComplex> v(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : v) x = ExactComplex(coef(rng), coef(rng));
      if (v.back().is_zero()) v.back() = 1;
      return Poly(std::move(v));
    };
    const RationalFunction g(small(), small());
    if (divisor_degree(g, confs[static_cast<std::size_t>(t) % confs.size()].type) != 0) ++bad;
  }
  out.push_back({"divisor degree vanishes (100 random functions)", static_cast<double>(bad), 0.0});
  return out;
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> r = {
      {"reduction", suite_reduction},
      {"alpha-beta", suite_alpha_beta},
      {"local-d2", [] { return suite_local(2); }},
      {"local-d3", [] { return suite_local(3); }},
      {"local-d4", [] { return suite_local(4); }},
      {"local-d5", [] { return suite_local(5); }},
      {"borel-d2", [] { return suite_borel(2); }},
      {"borel-d3", [] { return suite_borel(3); }},
      {"global-rank", suite_global_rank},
      {"residue-relation", suite_residue_relation},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, f] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

Report cmd_verify(const std::string& suite) {
  for (const auto& [name, run] : registry()) {
    if (name != suite) continue;
    Report r{{{"command", "verify"}, {"suite", name}}, 0};
    json checks = json::array();
    bool all = true;
    for (const auto& c : run()) {
      all = all && c.passed();
      checks.push_back({{"check", c.name}, {"passed", c.passed()}, {"residual", c.residual}, {"threshold", c.threshold}});
    }
    r.body["checks"] = checks;
    r.body["passed"] = all;
    r.exit_code = all ? 0 : static_cast<int>(ErrorKind::internal);
    return r;
  }
  std::string known;
  for (const auto& n : verify_suites()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown suite '" + suite + "' (known: " + known + ")");
}

}  // namespace expderham
