#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gaugelab {

/// Physical constants in Gaussian units. The verification defaults set
/// c = hbar = q = e = m = 1 so phases and fluxes carry no unit noise;
/// every value is configurable.
struct Constants {
  double c = 1.0;     ///< speed of light
  double hbar = 1.0;  ///< reduced Planck constant
  double h = 2.0 * std::numbers::pi;
  double q = 1.0;     ///< test charge
  double e = 1.0;     ///< elementary charge
  double m = 1.0;     ///< particle mass

  void validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("Constants: c must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("Constants: hbar must be positive");
    const double expected_h = 2.0 * std::numbers::pi * hbar;
    if (std::abs(h - expected_h) > 1e-12 * std::abs(expected_h))
      throw std::invalid_argument("Constants: h must equal 2*pi*hbar");
  }

  double flux_quantum() const { return h * c / e; }
};

}  // namespace gaugelab
