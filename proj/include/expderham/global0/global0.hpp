#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "expderham/model/differential.hpp"
#include "expderham/quadrature/integrate.hpp"
#include "expderham/reduction/reduction.hpp"

namespace expderham {

/// Genus-zero exp-algebraic curve: the sphere with punctures and H = sum of principal parts.
struct ExpCurve0 {
  GlobalExpType type;
  RationalFunction H;

  int genus() const { return 0; }
  int n() const { return static_cast<int>(type.punctures.size()); }
  std::vector<int> d_list() const;
  bool has_infinity() const;
};

ExpCurve0 make_curve0(GlobalExpType t);

/// 2g + sum d_i + n - 2
int relative_homology_dim(int g, const std::vector<int>& d_list);

struct CurveInventory {
  std::vector<CurveSpec> C1;
  /// C2[i-1] runs from w^{(1)}_0 to w^{(i+1)}_0.
  std::vector<CurveSpec> C2;
  /// gamma^{(i)}_j, puncture by puncture, j = 1..d_i-1.
  std::vector<CurveSpec> C3;
  /// One positively oriented circle per puncture (clockwise in z around inf).
  std::vector<CurveSpec> C4;
  /// Disk radius per puncture (for inf, the radius of the outer circle).
  std::vector<double> radii;

  int size() const { return static_cast<int>(C1.size() + C2.size() + C3.size() + C4.size()); }
  /// C1, C2, C3, C4 in order.
  std::vector<CurveSpec> all() const;
  /// Index of the first C4 entry in all().
  int circle_offset() const { return static_cast<int>(C1.size() + C2.size() + C3.size()); }
};

/// `avoid` lists coefficient poles the curves have to keep clear of.
CurveInventory build_inventory(const ExpCurve0& c, const std::vector<Complex>& avoid = {});

struct GlobalPeriods {
  Eigen::VectorXcd values;
  Eigen::VectorXd errors;
  /// Integral of |integrand| along each curve; the scale against which a zero period is judged.
  Eigen::VectorXd magnitudes;
  /// Sum of the C4 entries.
  Complex circle_sum{0.0, 0.0};
};

/// Throws NotSecondKindError for a residue at a pole off the punctures, inf included.
void require_second_kind(const ExpDifferential& w, double tol = 1e-9);

GlobalPeriods global_period_map(const ExpDifferential& w, const CurveInventory& inv, const QuadratureOptions& opt = {});
GlobalPeriods global_period_map(const ExpDifferential& w, const QuadratureOptions& opt = {});

/// z^m prod (z - p_i)^{-m_i} over the finite punctures, in order of total degree, kept when of second kind.
std::vector<RationalFunction> spanning_family(const ExpCurve0& c, int size);

struct RankReport {
  int rank = 0;
  int expected = 0;
  int family_size = 0;
  std::vector<double> singular_values;
  /// sigma_rank / sigma_{rank+1}, with sigma_0 = 1 (inf when nothing follows).
  double gap = 0.0;
  /// Largest |sum of C4 entries| over the family, relative to the largest circle entry.
  double max_circle_sum = 0.0;
};

/// Rank of the period vectors of a spanning family, rows and columns scaled by the integrand magnitudes.
RankReport rank_dimension_check(const ExpCurve0& c, int family_size = 0, double tol = 1e-8,
                                const QuadratureOptions& opt = {});

struct PoleReduction {
  ExpDifferential reduced;
  /// omega' = omega + d(g e^H)
  RationalFunction g;
  int steps = 0;
};

/// Cancels the leading term at q with g = (a_{-m}/(m-1)) (z-q)^{-(m-1)} until the order is at most 1.
PoleReduction reduce_pole_order(const ExpDifferential& w, const ExactComplex& q);

struct GlobalExactness {
  Exactness status = Exactness::undecided;
  double max_period = 0.0;
  /// g with d(g e^H) = omega, from the symbolic path.
  std::optional<RationalFunction> certificate;
};

/// Numeric: sup norm of the periods against tol, undecided on [tol, 10 tol].
/// With symbolic_bound >= 0 the equation g' + H'g = r is solved first, with the
/// numerator degree of g capped at the bound.
GlobalExactness is_exact_global(const ExpDifferential& w, double tol = 1e-8, int symbolic_bound = -1,
                                const QuadratureOptions& opt = {});

/// Solves g' + H' g = r exactly with the pole structure forced by r and H; nullopt if inconsistent.
/// bound_too_small reports that the cap cut below the degree a solution would need.
std::optional<RationalFunction> solve_primitive(const RationalFunction& r, const GlobalExpType& t, int bound,
                                                bool* bound_too_small = nullptr);

}  // namespace expderham
