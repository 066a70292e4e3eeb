#include "expderham/cli/json_io.hpp"

#include <string>

#include "expderham/error.hpp"

namespace expderham {

namespace {

int parse_exponent(const std::string& key) {
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw InputError("Laurent exponent must be an integer, got '" + key + "'");
  return k;
}

json piece_json(const CurvePiece& p) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j;
        if constexpr (std::is_same_v<T, Ray>) {
          j["kind"] = x.inward ? "ray-in" : "ray-out";
          j["center"] = complex_json(x.center);
          j["theta"] = x.theta;
          j["radius"] = x.radius;
          j["end"] = x.end == RayEnd::infinity ? "inf" : "center";
          if (x.tag) j["ramification"] = {{"puncture", x.tag->puncture}, {"sheet", x.tag->sheet}};
        } else if constexpr (std::is_same_v<T, Arc>) {
          j["kind"] = "arc";
          j["center"] = complex_json(x.center);
          j["radius"] = x.radius;
          j["theta1"] = x.theta1;
          j["theta2"] = x.theta2;
        } else if constexpr (std::is_same_v<T, Segment>) {
          j["kind"] = "segment";
          j["a"] = complex_json(x.a);
          j["b"] = complex_json(x.b);
        } else {
          j["kind"] = "circle";
          j["center"] = complex_json(x.center);
          j["radius"] = x.radius;
          j["orientation"] = x.counterclockwise ? "ccw" : "cw";
        }
        return j;
      },
      p);
}

}  // namespace

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json exact_json(const ExactComplex& c) { return c.str(); }

ExactComplex exact_from_json(const json& j) {
  if (j.is_number_integer()) return ExactComplex(j.get<long>());
  if (!j.is_string()) throw InputError("exact coefficient must be a string such as \"3/2\" or \"1+2i\"");
  return ExactComplex::parse(j.get<std::string>());
}

json poly_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(exact_json(c));
  return a;
}

Poly poly_from_json(const json& j) {
  if (!j.is_array()) throw InputError("polynomial must be an ascending coefficient list");
  std::vector<ExactComplex> c;
  for (const auto& x : j) c.push_back(exact_from_json(x));
  return Poly(std::move(c));
}

json rational_json(const RationalFunction& r) {
  return {{"numerator", poly_json(r.num())}, {"denominator", poly_json(r.den())}};
}

RationalFunction rational_from_json(const json& j) {
  const Poly num = poly_from_json(require(j, "numerator"));
  Poly den = Poly::constant(1);
  if (j.contains("denominator")) den = poly_from_json(j["denominator"]);
  if (den.is_zero()) throw InputError("zero denominator");
  return RationalFunction(num, den);
}

json laurent_json(const LaurentData& g) {
  json j = json::object();
  for (const auto& [k, c] : g.coeffs()) j[std::to_string(k)] = exact_json(c);
  if (g.tail()) j["tail"] = {{"C", g.tail()->C}, {"R", g.tail()->R}, {"start", g.tail_start()}};
  return j;
}

LaurentData laurent_from_json(const json& j) {
  if (!j.is_object()) throw InputError("Laurent data must be an object of exponent: coefficient");
  std::map<int, ExactComplex> c;
  std::optional<TailBound> tail;
  int start = 0;
  for (const auto& [key, value] : j.items()) {
    if (key == "tail") {
      tail = TailBound{require(value, "C").get<double>(), require(value, "R").get<double>()};
      if (!(tail->C >= 0.0) || !(tail->R > 0.0)) throw InputError("tail bound needs C >= 0 and R > 0");
      start = require(value, "start").get<int>();
      continue;
    }
    const int k = parse_exponent(key);
    if (c.count(k)) throw InputError("duplicate exponent " + key);
    c.emplace(k, exact_from_json(value));
  }
  if (tail) return LaurentData(std::move(c), *tail, start);
  return LaurentData(std::move(c));
}

json type_json(const ExpType& t) {
  if (const auto* l = std::get_if<LocalExpType>(&t)) return {{"d", l->d}, {"convention", to_string(l->convention())}};
  json ps = json::array();
  for (const auto& p : std::get<GlobalExpType>(t).punctures)
    ps.push_back({{"location", p.location ? json(exact_json(*p.location)) : json("inf")},
                  {"principal", poly_json(p.principal)}});
  return {{"punctures", ps}};
}

GlobalExpType global_type_from_json(const json& j) {
  const json& ps = require(j, "punctures");
  if (!ps.is_array()) throw InputError("punctures must be a list");
  GlobalExpType t;
  for (const auto& p : ps) {
    Puncture q;
    const json& loc = require(p, "location");
    if (!(loc.is_string() && loc.get<std::string>() == "inf")) q.location = exact_from_json(loc);
    q.principal = poly_from_json(require(p, "principal"));
    t.punctures.push_back(std::move(q));
  }
  if (j.contains("genus") && j["genus"].get<int>() != 0) throw InputError("only genus 0 curves are supported");
  validate(t);
  return t;
}

ExpType type_from_json(const json& j, Convention fallback) {
  if (j.is_object() && j.contains("punctures")) return global_type_from_json(j);
  const json& dj = require(j, "d");
  if (!dj.is_number_integer() || dj.get<int>() < 1) throw InputError("d must be an integer >= 1");
  Convention c = fallback;
  if (j.contains("convention")) c = parse_convention(j["convention"].get<std::string>());
  return LocalExpType(sign_of(c), dj.get<int>());
}

json differential_json(const ExpDifferential& w) {
  json j;
  j["type"] = type_json(w.type);
  if (const auto* g = std::get_if<LaurentData>(&w.coeff))
    j["coefficient"] = laurent_json(*g);
  else
    j["coefficient"] = rational_json(w.rational());
  return j;
}

ExpDifferential differential_from_json(const json& j, Convention fallback) {
  ExpType t = type_from_json(require(j, "type"), fallback);
  const json& c = require(j, "coefficient");
  const bool rational = c.is_object() && c.contains("numerator");
  if (std::holds_alternative<GlobalExpType>(t)) {
    if (!rational) throw InputError("a global coefficient must be a rational function");
    return {std::move(t), rational_from_json(c)};
  }
  if (rational) return {std::move(t), rational_from_json(c)};
  return {std::move(t), laurent_from_json(c)};
}

json curve_json(const CurveSpec& c) {
  json ps = json::array();
  for (const auto& p : c.pieces) ps.push_back(piece_json(p));
  return {{"label", c.label}, {"pieces", ps}};
}

json reduction_json(const ReductionResult& r) {
  json canonical = json::object(), values = json::object(), err = json::object();
  for (const auto& [j, c] : r.canonical) {
    canonical[std::to_string(j)] = exact_json(c);
    values[std::to_string(j)] = complex_json(c.to_complex());
  }
  for (const auto& [j, e] : r.truncation_error) err[std::to_string(j)] = e;
  return {{"d", r.d},
          {"convention", to_string(r.convention())},
          {"canonical", canonical},
          {"canonical_float", values},
          {"primitive", laurent_json(r.primitive)},
          {"truncation_error", err},
          {"truncation_order", r.truncation_order},
          {"minimal_truncation_order", r.k0}};
}

}  // namespace expderham
