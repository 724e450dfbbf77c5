#pragma once

#include <functional>
#include <optional>

#include "gaugelab/constants.hpp"
#include "gaugelab/grid.hpp"
#include "gaugelab/quadrature.hpp"

namespace gaugelab {

/// Scalar function of spacetime (x, y, t). One-dimensional configurations
/// ignore y; static ones ignore t.
using Field3 = std::function<double(double, double, double)>;

enum class DimTag { OneDDynamic, TwoDStatic, TwoPlusOneD };

inline Field3 zero_field() {
  return [](double, double, double) { return 0.0; };
}

/// Closed-form partial derivatives of a potential set, when available.
struct PotentialDerivs {
  Field3 dAx_dt, dAy_dt, dAx_dy, dAy_dx, dphi_dx, dphi_dy;
};

/// Difference of two potential systems: A = A2 - A1, phi = phi2 - phi1.
struct PotentialSet {
  Field3 Ax = zero_field();
  Field3 Ay = zero_field();
  Field3 phi = zero_field();
  std::optional<PotentialDerivs> derivs;
  DimTag dim = DimTag::OneDDynamic;
};

/// Inaccessible flux core: fields are undefined for r < radius, and the flux
/// threading a loop at the core boundary is prescribed directly. Loop-flux
/// computations add this to the area quadrature of the exterior field.
struct CoreSpec {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  std::function<double(double)> flux;  ///< enclosed flux at the core edge vs time

  bool intersects_segment_x(double x_lo, double x_hi, double y_seg) const {
    if (std::abs(y_seg - y) >= radius) return false;
    return x_lo < x + radius && x_hi > x - radius;
  }
  bool intersects_segment_y(double y_lo, double y_hi, double x_seg) const {
    if (std::abs(x_seg - x) >= radius) return false;
    return y_lo < y + radius && y_hi > y - radius;
  }
};

/// Field differences derived from (or declared alongside) a PotentialSet.
struct FieldSet {
  Field3 Ex = zero_field();
  Field3 Ey = zero_field();
  Field3 B = zero_field();
  // Faraday-consistency metadata: confined-flux core and the radii (about
  // the core center) where the fields have circular kink structure.
  std::optional<CoreSpec> core;
  std::function<Breaks(double t)> radial_breaks;
};

/// E = -grad(phi) - (1/c) dA/dt and B = dAy/dx - dAx/dy. Uses the analytic
/// partials when present, central differences otherwise.
FieldSet derive_fields(const PotentialSet& p, const Constants& con, double fd_step = 1e-5);

/// Axis-aligned rectangular circuit in the (x, y) plane.
struct RectLoop {
  double x_lo, x_hi, y_lo, y_hi;
  int n = 801;  ///< samples per edge

  void validate() const {
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
      throw std::invalid_argument("RectLoop: degenerate loop (zero area)");
  }
};

/// Max over sampled times of |circulation of E + (1/c) d(enclosed B flux)/dt|.
/// The enclosed flux is an area quadrature of B plus the declared core flux
/// when the loop surrounds a core.
double faraday_residual(const FieldSet& f, const RectLoop& loop, const Interval& times,
                        const Constants& con);

/// Circulation of a planar vector field (Fx, Fy) around the loop at time t,
/// counter-clockwise.
double circulation(const Field3& Fx, const Field3& Fy, const RectLoop& loop, double t);

/// Enclosed flux of B through the loop at time t (area quadrature + core).
double loop_flux(const FieldSet& f, const RectLoop& loop, double t);

}  // namespace gaugelab
