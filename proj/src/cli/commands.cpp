#include "expderham/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "expderham/borel/borel.hpp"
#include "expderham/error.hpp"
#include "expderham/global0/global0.hpp"

namespace expderham {

namespace {

ProblemKind parse_kind(const std::string& s) {
  if (s == "local") return ProblemKind::local;
  if (s == "global0") return ProblemKind::global0;
  if (s == "borel") return ProblemKind::borel;
  throw InputError("kind must be local, global0 or borel, got '" + s + "'");
}

QuadratureOptions quad_options(const ProblemSpec& s) {
  QuadratureOptions q;
  q.tol = std::max(1e-14, 1e-2 * s.tolerance);
  return q;
}

json header(const char* command, const ProblemSpec& s) {
  return {{"command", command},
          {"kind", to_string(s.kind)},
          {"tolerance", s.tolerance},
          {"truncation_order", s.truncation_order}};
}

ExpDifferential local_form(const ProblemSpec& s) {
  const ExpDifferential w = differential_from_json(s.payload, s.convention);
  if (!w.is_local()) throw InputError("expected a local differential (type with d and convention)");
  return w;
}

json estimate_json(Complex v, double err) { return {{"value", complex_json(v)}, {"error", err}}; }

json local_labels(int d) {
  json a = json::array({"gamma"});
  for (int k = 1; k < d; ++k) a.push_back("gamma_" + std::to_string(k));
  return a;
}

json matrix_json(const PeriodMatrix& pm) {
  json rows = json::array();
  for (int i = 0; i < pm.d; ++i) {
    json row = json::array();
    for (int j = 0; j < pm.d; ++j)
      row.push_back({{"value", complex_json(pm.entries(i, j))},
                     {"error", pm.error(i, j)},
                     {"provenance", to_string(pm.provenance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])}});
    rows.push_back(row);
  }
  json cols = json::array();
  for (int j = -1; j <= pm.d - 2; ++j) cols.push_back(j);
  return {{"d", pm.d},
          {"convention", "minus"},
          {"rows", local_labels(pm.d)},
          {"columns_j", cols},
          {"entries", rows},
          {"determinant", complex_json(pm.determinant())}};
}

Report local_basis_periods(const ProblemSpec& s, const LocalExpType& t, PeriodMode mode) {
  const auto q = quad_options(s);
  Report r{header("periods", s), 0};
  r.body["mode"] = to_string(mode);
  if (mode != PeriodMode::quadrature) r.body["matrix"] = matrix_json(period_matrix(t.d, q));
  if (mode != PeriodMode::analytic) {
    const auto pq = period_matrix_quadrature(t.d, 1.0, q);
    r.body[mode == PeriodMode::both ? "matrix_quadrature" : "matrix"] = matrix_json(pq);
    if (mode == PeriodMode::both)
      r.body["agreement_residual"] = (period_matrix(t.d, q).entries - pq.entries).cwiseAbs().maxCoeff();
  }
  if (t.d >= 2) r.body["determinant_closed_form"] = complex_json(det_pi_closed_form(t.d));
  return r;
}

json second_kind_json(const ExpDifferential& w) {
  const auto rep = second_kind_report(w.rational(), w.global_type());
  json j = {{"second_kind", rep.second_kind}};
  if (!rep.second_kind) {
    j["pole"] = complex_json(rep.worst_pole);
    j["residue"] = complex_json(rep.worst_residue);
  }
  return j;
}

json global_periods_json(const CurveInventory& inv, const GlobalPeriods& p) {
  json a = json::array();
  const auto curves = inv.all();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    a.push_back({{"curve", curves[k].label},
                 {"value", complex_json(p.values[i])},
                 {"error", p.errors[i]},
                 {"provenance", "quadrature"}});
  }
  return a;
}

void check_global_kind(const ProblemSpec& s) {
  if (s.kind != ProblemKind::global0) throw InputError("expected kind global0");
}

std::string fmt_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool is_complex_pair(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number_float() && j[1].is_number_float();
}

std::string scalar_text(const json& j) {
  if (is_complex_pair(j)) {
    const double re = j[0].get<double>(), im = j[1].get<double>();
    return fmt_number(re) + (std::signbit(im) ? " - " : " + ") + fmt_number(std::abs(im)) + "i";
  }
  if (j.is_number_float()) return fmt_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat(const json& j) {
  if (j.is_primitive() || is_complex_pair(j)) return true;
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!(x.is_primitive() || is_complex_pair(x))) return false;
  return true;
}

void table_rec(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v) && !v.is_array()) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else if (is_flat(v) && !is_complex_pair(v)) {
        os << pad << k << ":";
        for (const auto& x : v) os << "  " << scalar_text(x);
        os << "\n";
      } else if (is_complex_pair(v)) {
        os << pad << k << ": " << scalar_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        table_rec(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& v = j[i];
      if (is_flat(v) && !(v.is_array() && !is_complex_pair(v))) {
        os << pad << "[" << i << "] " << scalar_text(v) << "\n";
      } else {
        os << pad << "[" << i << "]\n";
        table_rec(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::local: return "local";
    case ProblemKind::global0: return "global0";
    case ProblemKind::borel: return "borel";
  }
  return "?";
}

ProblemSpec parse_problem(const std::string& text, const Overrides& o) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  ProblemSpec s;
  try {
    if (!j.is_object()) throw InputError("problem spec must be a JSON object");
    const json& v = require(j, "version");
    if (!v.is_number_integer() || v.get<int>() != 1) throw InputError("version must be 1");
    s.kind = parse_kind(require(j, "kind").get<std::string>());
    s.payload = require(j, "payload");
    if (!s.payload.is_object()) throw InputError("payload must be an object");
    if (j.contains("options")) {
      const json& opt = j["options"];
      if (!opt.is_object()) throw InputError("options must be an object");
      for (const auto& [k, x] : opt.items()) {
        if (k == "tolerance")
          s.tolerance = x.get<double>();
        else if (k == "truncation_order")
          s.truncation_order = x.get<int>();
        else if (k == "convention")
          s.convention = parse_convention(x.get<std::string>());
        else
          throw InputError("unknown option '" + k + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("schema violation: ") + e.what());
  }
  if (o.tolerance) s.tolerance = *o.tolerance;
  if (o.truncation_order) s.truncation_order = *o.truncation_order;
  if (o.convention) s.convention = *o.convention;
  if (!(s.tolerance >= 1e-14 && s.tolerance <= 1e-2)) throw InputError("tolerance must lie in [1e-14, 1e-2]");
  if (s.truncation_order < 0) throw InputError("truncation_order must be >= 0");
  return s;
}

ProblemSpec load_problem(const std::string& path, const Overrides& o) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), o);
}

Report cmd_reduce(const ProblemSpec& s) {
  if (s.kind != ProblemKind::local) throw InputError("reduce expects kind local");
  const ExpDifferential w = local_form(s);
  const LocalExactness ex = is_exact_local(w, s.truncation_order);
  Report r{header("reduce", s), 0};
  r.body["input"] = differential_json(w);
  r.body["reduction"] = reduction_json(ex.reduction);
  r.body["exactness"] = to_string(ex.status);
  if (const auto* g = std::get_if<LaurentData>(&w.coeff); g && !g->tail())
    r.body["residual_zero"] = reduction_residual(*g, ex.reduction).empty();
  if (ex.status == Exactness::undecided) r.exit_code = static_cast<int>(ErrorKind::undecided);
  return r;
}

Report cmd_periods(const ProblemSpec& s, PeriodMode mode) {
  const auto q = quad_options(s);
  if (s.kind == ProblemKind::global0) {
    const ExpDifferential w = differential_from_json(s.payload, s.convention);
    if (w.is_local()) throw InputError("global0 payload needs a type with punctures");
    const ExpCurve0 c = make_curve0(w.global_type());
    const auto inv = build_inventory(c, non_puncture_poles(w.rational(), c.type));
    const auto p = global_period_map(w, inv, q);
    Report r{header("periods", s), 0};
    r.body["mode"] = "quadrature";
    r.body["periods"] = global_periods_json(inv, p);
    r.body["circle_sum"] = complex_json(p.circle_sum);
    return r;
  }
  if (!s.payload.contains("coefficient")) {
    const ExpType t = type_from_json(require(s.payload, "type"), s.convention);
    if (!std::holds_alternative<LocalExpType>(t)) throw InputError("expected a local type");
    return local_basis_periods(s, std::get<LocalExpType>(t), mode);
  }
  const ExpDifferential w = local_form(s);
  const LocalPeriods lp = local_period_map(w, mode, q, s.truncation_order);
  Report r{header("periods", s), 0};
  r.body["mode"] = to_string(mode);
  r.body["convention"] = to_string(lp.convention);
  r.body["rho"] = lp.rho;
  json a = json::array();
  const json labels = local_labels(w.local_type().d);
  for (std::size_t i = 0; i < lp.values.size(); ++i)
    a.push_back({{"curve", labels[i]},
                 {"value", complex_json(lp.values[i])},
                 {"error", lp.errors[i]},
                 {"provenance", mode == PeriodMode::quadrature ? "quadrature" : "analytic"}});
  r.body["periods"] = a;
  if (mode == PeriodMode::both) r.body["agreement_residual"] = lp.agreement_residual;
  return r;
}

Report cmd_borel(const ProblemSpec& s) {
  if (s.kind != ProblemKind::borel && s.kind != ProblemKind::local) throw InputError("borel expects kind borel");
  const ExpDifferential w = local_form(s);
  const BorelForm f(w);
  BorelOptions opt;
  opt.quad = quad_options(s);
  Report r{header("borel", s), 0};
  r.body["d"] = f.d();
  r.body["convention"] = to_string(w.local_type().convention());
  r.body["pole_radius"] = f.pole_radius();
  json res = json::array();
  for (const auto& row : residue_period_check(w, opt))
    res.push_back({{"k", row.k},
                   {"residue", complex_json(row.residue)},
                   {"period", complex_json(row.period)},
                   {"predicted", complex_json(row.predicted)},
                   {"residual", row.residual}});
  r.body["residues"] = res;
  if (s.payload.contains("points")) {
    json ev = json::array();
    for (const auto& p : s.payload["points"]) {
      const auto e = borel_eval(f, complex_from_json(p), opt);
      ev.push_back({{"xi", complex_json(e.xi)}, {"value", complex_json(e.value)}, {"error", e.error_estimate}});
    }
    r.body["evaluations"] = ev;
  }
  if (s.payload.contains("laplace_points")) {
    const int d = f.d();
    const double th = default_laplace_direction(d);
    const double growth = std::pow(template_radius(f, opt.contour), d);
    std::vector<Complex> zs;
    double len = 0.0;
    for (const auto& p : s.payload["laplace_points"]) {
      zs.push_back(complex_from_json(p));
      if (std::abs(zs.back()) == 0.0) throw InputError("laplace point must be nonzero");
      len = std::max(len, laplace_length(d, th, 1.0 / zs.back(), growth));
    }
    json lj = json::array();
    if (!zs.empty()) {
      const auto g = borel_samples(f, th, len, opt);
      for (const Complex z : zs) {
        const auto fz = f_from_omega(f, z, 1, opt.quad);
        const auto lz = laplace_eval(g, d, 1.0 / z, opt.quad.tol);
        lj.push_back({{"z", complex_json(z)},
                      {"f", estimate_json(fz.value, fz.error)},
                      {"laplace", estimate_json(lz.value, lz.error)},
                      {"relative_residual", std::abs(fz.value - lz.value) / std::max(std::abs(fz.value), 1e-300)}});
      }
    }
    r.body["inversion"] = lj;
  }
  return r;
}

Report cmd_global(const ProblemSpec& s) {
  check_global_kind(s);
  const GlobalExpType t = global_type_from_json(require(s.payload, "type"));
  const ExpCurve0 c = make_curve0(t);
  const auto q = quad_options(s);
  Report r{header("global", s), 0};
  r.body["type"] = type_json(t);
  json dl = json::array();
  for (int d : c.d_list()) dl.push_back(d);
  r.body["d_list"] = dl;
  r.body["dimension"] = relative_homology_dim(0, c.d_list());
  if (!s.payload.contains("coefficient")) {
    const int fam = s.payload.value("family_size", 0);
    const auto rep = rank_dimension_check(c, fam, 1e-8, q);
    json sv = json::array();
    for (double x : rep.singular_values) sv.push_back(x);
    const auto inv = build_inventory(c);
    json labels = json::array();
    for (const auto& cs : inv.all()) labels.push_back(cs.label);
    r.body["curves"] = labels;
    r.body["rank"] = {{"rank", rep.rank},
                      {"expected", rep.expected},
                      {"family_size", rep.family_size},
                      {"gap", std::isfinite(rep.gap) ? json(rep.gap) : json("inf")},
                      {"max_circle_sum", rep.max_circle_sum},
                      {"singular_values", sv},
                      {"agrees", rep.rank == rep.expected}};
    return r;
  }
  const RationalFunction g = rational_from_json(s.payload["coefficient"]);
  const ExpDifferential w = ExpDifferential::global(t, g);
  r.body["coefficient"] = rational_json(g);
  r.body["second_kind"] = second_kind_json(w);
  if (!g.is_zero()) r.body["divisor_degree"] = divisor_degree(g, t);
  const auto inv = build_inventory(c, non_puncture_poles(g, t));
  const auto p = global_period_map(w, inv, q);
  r.body["periods"] = global_periods_json(inv, p);
  r.body["circle_sum"] = complex_json(p.circle_sum);
  const int bound = s.payload.value("symbolic_bound", -1);
  const auto ex = is_exact_global(w, s.tolerance, bound, q);
  r.body["exactness"] = to_string(ex.status);
  r.body["max_period"] = ex.max_period;
  if (ex.certificate) r.body["certificate"] = rational_json(*ex.certificate);
  if (ex.status == Exactness::undecided) r.exit_code = static_cast<int>(ErrorKind::undecided);
  return r;
}

Report guarded(const std::function<Report()>& f) {
  auto fail = [](ErrorKind k, const std::string& msg) {
    const char* name = k == ErrorKind::input        ? "input"
                       : k == ErrorKind::undecided  ? "undecided"
                       : k == ErrorKind::precondition ? "precondition"
                                                      : "internal";
    return Report{{{"error", {{"kind", name}, {"message", msg}}}}, static_cast<int>(k)};
  };
  try {
    return f();
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const json::exception& e) {
    return fail(ErrorKind::input, std::string("schema violation: ") + e.what());
  } catch (const std::exception& e) {
    return fail(ErrorKind::internal, e.what());
  }
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_table(const json& report) {
  std::ostringstream os;
  table_rec(os, report, 0);
  return os.str();
}

}  // namespace expderham
