#pragma once

#include <Eigen/Dense>
#include <vector>

#include "expderham/model/differential.hpp"
#include "expderham/quadrature/integrate.hpp"

namespace expderham {

enum class Provenance { analytic, quadrature };
const char* to_string(Provenance p);

enum class PeriodMode { analytic, quadrature, both };
const char* to_string(PeriodMode m);
PeriodMode parse_period_mode(const std::string& s);

/// Rows gamma, gamma_1..gamma_{d-1}; columns j = -1..d-2; convention h = -z^d.
struct PeriodMatrix {
  int d = 1;
  Eigen::MatrixXcd entries;
  Eigen::MatrixXd error;
  std::vector<std::vector<Provenance>> provenance;
  Complex determinant() const { return entries.determinant(); }
};

/// (1/d) omega_k^{j+1} Gamma((j+1)/d), omega_k = e^{2 pi i k/d}.
Complex ray_moment(int k, int j, int d);

/// Closed-form entries where they exist; the j = -1 column of the gamma_k rows by quadrature.
PeriodMatrix period_matrix(int d, const QuadratureOptions& opt = {});
/// Every entry by quadrature along the standard curves.
PeriodMatrix period_matrix_quadrature(int d, double rho = 1.0, const QuadratureOptions& opt = {});

/// det of the block with rows v_1..v_{d-1}, columns j = 0..d-2, from the Gamma/Vandermonde product.
Complex det_pi2_closed_form(int d);
/// 2 pi i d det(Pi_2)
Complex det_pi_closed_form(int d);

bool row_sum_identity_check(int d);

struct LocalPeriods {
  std::vector<Complex> values;
  std::vector<double> errors;
  PeriodMode mode = PeriodMode::analytic;
  Convention convention = Convention::minus;
  double rho = 1.0;
  /// Mode both: max |analytic - quadrature|; the values are the analytic ones.
  double agreement_residual = 0.0;
};

LocalPeriods local_period_map(const ExpDifferential& w, PeriodMode mode, const QuadratureOptions& opt = {},
                              int truncation_order = 0);

/// Standard curves in the convention of w (rotated by e^{i pi/d} for h = +z^d).
StandardLocalCurves standard_curves_for(const LocalExpType& t, double rho = 1.0, const std::vector<Complex>& avoid = {});

}  // namespace expderham
