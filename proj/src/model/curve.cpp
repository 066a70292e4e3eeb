#include "expderham/model/curve.hpp"

#include <algorithm>
#include <cmath>

#include "expderham/error.hpp"
#include "expderham/model/differential.hpp"

namespace expderham {

namespace {

struct StartVisitor {
  std::optional<Complex> operator()(const Ray& r) const {
    return r.inward ? std::nullopt : std::optional<Complex>(r.finite_point());
  }
  std::optional<Complex> operator()(const Arc& a) const { return a.center + std::polar(a.radius, a.theta1); }
  std::optional<Complex> operator()(const Segment& s) const { return s.a; }
  std::optional<Complex> operator()(const Circle& c) const { return c.center + c.radius; }
};

struct EndVisitor {
  std::optional<Complex> operator()(const Ray& r) const {
    return r.inward ? std::optional<Complex>(r.finite_point()) : std::nullopt;
  }
  std::optional<Complex> operator()(const Arc& a) const { return a.center + std::polar(a.radius, a.theta2); }
  std::optional<Complex> operator()(const Segment& s) const { return s.b; }
  std::optional<Complex> operator()(const Circle& c) const { return c.center + c.radius; }
};

}  // namespace

std::optional<Complex> piece_start(const CurvePiece& p) { return std::visit(StartVisitor{}, p); }
std::optional<Complex> piece_end(const CurvePiece& p) { return std::visit(EndVisitor{}, p); }

CurvePiece reversed(const CurvePiece& p) {
  if (auto r = std::get_if<Ray>(&p)) {
    Ray out = *r;
    out.inward = !out.inward;
    return out;
  }
  if (auto a = std::get_if<Arc>(&p)) return Arc{a->center, a->radius, a->theta2, a->theta1};
  if (auto s = std::get_if<Segment>(&p)) return Segment{s->b, s->a};
  const auto& c = std::get<Circle>(p);
  return Circle{c.center, c.radius, !c.counterclockwise};
}

CurveSpec reversed(const CurveSpec& c) {
  CurveSpec out{c.label.empty() ? c.label : "-" + c.label, {}};
  for (auto it = c.pieces.rbegin(); it != c.pieces.rend(); ++it) out.pieces.push_back(reversed(*it));
  return out;
}

void validate(const CurveSpec& c, double tol) {
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    if (auto r = std::get_if<Ray>(&c.pieces[i])) {
      if (!(r->radius > 0.0)) throw InputError("ray with nonpositive radius");
      if (r->tag && sector_margin(*r->tag, r->theta) <= 0.0)
        throw DomainError("ray direction lies outside the decay sector of its ramification point");
    }
    if (i + 1 == c.pieces.size()) break;
    const auto e = piece_end(c.pieces[i]);
    const auto s = piece_start(c.pieces[i + 1]);
    if (!e || !s) throw InputError("curve passes through an infinite end between pieces");
    if (std::abs(*e - *s) > tol * std::max(1.0, std::abs(*e))) throw InputError("curve pieces do not connect");
  }
}

CurveSpec concatenate(const CurveSpec& a, const CurveSpec& b) {
  CurveSpec out = a;
  out.pieces.insert(out.pieces.end(), b.pieces.begin(), b.pieces.end());
  return out;
}

CurveSpec rotated(const CurveSpec& c, Complex s) {
  const double phi = std::arg(s);
  const double m = std::abs(s);
  CurveSpec out{c.label, {}};
  for (const auto& p : c.pieces) {
    if (auto r = std::get_if<Ray>(&p)) {
      Ray q = *r;
      q.center *= s;
      q.theta += phi;
      q.radius *= m;
      if (q.tag) q.tag->direction = normalize_angle(q.tag->direction + phi);
      out.pieces.push_back(q);
    } else if (auto a = std::get_if<Arc>(&p)) {
      out.pieces.push_back(Arc{a->center * s, a->radius * m, a->theta1 + phi, a->theta2 + phi});
    } else if (auto g = std::get_if<Segment>(&p)) {
      out.pieces.push_back(Segment{g->a * s, g->b * s});
    } else {
      const auto& ci = std::get<Circle>(p);
      out.pieces.push_back(Circle{ci.center * s, ci.radius * m, ci.counterclockwise});
    }
  }
  return out;
}

}  // namespace expderham
