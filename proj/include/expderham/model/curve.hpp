#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expderham/algebra/exact.hpp"

namespace expderham {

struct RamificationPoint {
  int puncture = 0;
  int sheet = 0;
  double direction = 0.0;
  /// Pole order of the exponential type at the puncture; fixes the decay sector width.
  int d = 1;
};

/// Where a ray's infinite end sits.
enum class RayEnd {
  infinity,  // |z| -> inf along center + t e^{i theta}
  center,    // z -> center along center + s e^{i theta}, s -> 0
};

/// Ray between the point center + radius e^{i theta} and its infinite end.
/// `inward` rays run from the infinite end to the finite point.
struct Ray {
  Complex center{0.0, 0.0};
  double theta = 0.0;
  double radius = 1.0;
  RayEnd end = RayEnd::infinity;
  bool inward = false;
  std::optional<RamificationPoint> tag;
  Complex finite_point() const { return center + std::polar(radius, theta); }
};

/// Arc at fixed radius from theta1 to theta2 (counterclockwise when theta2 > theta1).
struct Arc {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

struct Segment {
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
};

struct Circle {
  Complex center{0.0, 0.0};
  double radius = 1.0;
  bool counterclockwise = true;
};

using CurvePiece = std::variant<Ray, Arc, Segment, Circle>;

struct CurveSpec {
  std::string label;
  std::vector<CurvePiece> pieces;
};

/// Endpoints of a piece; nullopt at an infinite end.
std::optional<Complex> piece_start(const CurvePiece& p);
std::optional<Complex> piece_end(const CurvePiece& p);
CurvePiece reversed(const CurvePiece& p);
CurveSpec reversed(const CurveSpec& c);
/// Checks that consecutive pieces share endpoints (to `tol`) and that
/// tagged ray ends lie inside their decay sectors.
void validate(const CurveSpec& c, double tol = 1e-9);
CurveSpec concatenate(const CurveSpec& a, const CurveSpec& b);
/// Applies z -> s * z to every piece (s of unit modulus keeps rays as rays).
CurveSpec rotated(const CurveSpec& c, Complex s);

}  // namespace expderham
