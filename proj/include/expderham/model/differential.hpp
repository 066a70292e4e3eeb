#pragma once

#include <map>
#include <variant>
#include <vector>

#include "expderham/algebra/laurent.hpp"
#include "expderham/algebra/rational.hpp"
#include "expderham/model/curve.hpp"
#include "expderham/model/exp_type.hpp"

namespace expderham {

using Coefficient = std::variant<LaurentData, RationalFunction>;

/// g(z) e^{h(z)} dz
struct ExpDifferential {
  ExpType type;
  Coefficient coeff;

  static ExpDifferential local(int sign, int d, LaurentData g) { return {LocalExpType(sign, d), std::move(g)}; }
  static ExpDifferential global(GlobalExpType t, RationalFunction r) { return {std::move(t), std::move(r)}; }

  bool is_local() const { return std::holds_alternative<LocalExpType>(type); }
  const LocalExpType& local_type() const { return std::get<LocalExpType>(type); }
  const GlobalExpType& global_type() const { return std::get<GlobalExpType>(type); }
  const LaurentData& laurent() const { return std::get<LaurentData>(coeff); }
  const RationalFunction& rational() const { return std::get<RationalFunction>(coeff); }
  bool is_zero() const;
};

/// Decay directions at a puncture, sorted ascending in [0, 2 pi), sheet 0 first.
std::vector<RamificationPoint> ramification_directions(const ExpType& t, int puncture = 0);
/// Half-width of the open decay sector around each direction.
double sector_half_width(int d);
/// Signed distance from theta to the nearest sector edge (positive inside).
double sector_margin(const RamificationPoint& w, double theta);
double normalize_angle(double theta);

struct StandardLocalCurves {
  CurveSpec gamma;
  std::vector<CurveSpec> gamma_k;
  double rho = 1.0;
};

/// Circle of radius rho plus gamma_k = ray-in at theta_0, arc to theta_k, ray-out at theta_k.
/// rho grows by 1.1 (up to 8 times) while a point of `avoid` lies within `clearance` of the curves.
StandardLocalCurves standard_local_curves(const LocalExpType& t, double rho = 1.0,
                                          const std::vector<Complex>& avoid = {}, double clearance = 1e-6);

/// z -> zeta z with zeta = e^{i pi / d} swaps the sign of z^d; coefficient c_j of z^j
/// becomes zeta^{j+1} c_j (the dz factor included).
std::map<int, Complex> rotate_convention(const LaurentData& g, int d);

/// Degree of the divisor of g e^H on the sphere (sum of orders of g over all points).
int divisor_degree(const RationalFunction& g, const GlobalExpType& t);

/// Finite poles of r that are not punctures.
std::vector<Complex> non_puncture_poles(const RationalFunction& r, const GlobalExpType& t);
struct SecondKindReport {
  bool second_kind = true;
  Complex worst_pole{0.0, 0.0};
  Complex worst_residue{0.0, 0.0};
};
/// Residues of r e^H at non-puncture poles all below tol (relative to the coefficient scale).
SecondKindReport second_kind_report(const RationalFunction& r, const GlobalExpType& t, double tol = 1e-9);
bool is_second_kind(const ExpDifferential& w, double tol = 1e-9);
/// No poles off the punctures: r e^H dz lies in Omega^0, r e^H in O.
bool is_holomorphic_off_punctures(const RationalFunction& r, const GlobalExpType& t);

}  // namespace expderham
