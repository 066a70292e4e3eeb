#pragma once

namespace expderham {

/// Gamma on (0, 1]; relative error around 1e-15.
double gamma_real(double x);

}  // namespace expderham
