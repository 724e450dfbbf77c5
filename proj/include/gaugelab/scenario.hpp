#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaugelab/constants.hpp"
#include "gaugelab/grid.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab {

enum class Connectivity { Simple, Multiple };

/// Additive route constants present only in multiply-connected configurations.
/// tau attaches to the first-route solutions, chi to the second-route ones,
/// f to the (x, y, t) solutions.
struct Multiplicities {
  double tau = 0.0;
  double chi = 0.0;
  double f = 0.0;
};

/// Region of spacetime where solutions are observed. Gauge-fixing conditions
/// are required (and validated) on this region; the reference upper limits of
/// the bracket integrals default to its far corner. `contains` restricts the
/// region to a non-rectangular subset when needed.
struct ObservationRegion {
  Interval x;
  Interval yt;  ///< y for planar configurations, t for 1-D dynamic ones
  std::optional<Interval> t;  ///< time range for (x, y, t) configurations
  std::function<bool(double, double)> contains;  ///< of (x, yt); null = whole box
  double x_ref, yt_ref;

  ObservationRegion() : x(0, 1), yt(0, 1), x_ref(1), yt_ref(1) {}
  ObservationRegion(Interval x_, Interval yt_)
      : x(x_), yt(yt_), x_ref(x_.hi), yt_ref(yt_.hi) {}

  bool inside(double u, double v) const {
    if (!x.contains(u) || !yt.contains(v)) return false;
    return contains ? contains(u, v) : true;
  }
};

/// A fully specified field configuration: potentials, derived fields,
/// connectivity and the plumbing (base point, default grids, quadrature
/// breakpoints) the solvers need.
struct ScenarioConfig {
  std::string name;
  std::map<std::string, double> params;
  Constants con;
  PotentialSet potentials;
  FieldSet fields;
  Connectivity connectivity = Connectivity::Simple;
  std::optional<Multiplicities> multiplicity_values;

  Eigen::Vector3d base = Eigen::Vector3d::Zero();  ///< (x0, y0, t0)
  double lambda0 = 0.0;
  BoxDomain domain;        ///< default residual/report grid (observation box)
  ObservationRegion obs;   ///< where fixing conditions must hold

  // Integrand breakpoints at fixed values of the other coordinates.
  std::function<Breaks(double y, double t)> x_breaks;
  std::function<Breaks(double x, double t)> y_breaks;
  std::function<Breaks(double x, double y)> t_breaks;

  std::string description;
};

/// Builds one of the named configurations. Throws on unknown names or
/// invalid parameters (e.g. strip with a >= b). Omitted parameters take the
/// documented defaults.
ScenarioConfig builtin_config(const std::string& name,
                              const std::map<std::string, double>& params, const Constants& con);

struct ScenarioInfo {
  std::string name;
  std::string params;
  std::string description;
};

/// Stable-ordered catalog of builtin scenario names with their parameters.
std::vector<ScenarioInfo> list_scenarios();

/// Equilateral triangle of side a: apex up, base on the x axis, left base
/// vertex at the origin.
struct TriangleGeometry {
  double side;
  double height() const { return 0.5 * std::numbers::sqrt3 * side; }
  bool inside(double x, double y) const {
    const double s3 = std::numbers::sqrt3;
    return y >= 0.0 && y <= s3 * x && y <= s3 * (side - x);
  }
  double chord_lo(double y) const { return y / std::numbers::sqrt3; }
  double chord_hi(double y) const { return side - y / std::numbers::sqrt3; }
};

/// Observation band upper-right of the triangle where the enclosed flux
/// splits into separate x- and y-parts: a/2 <= x <= a, above the right edge,
/// below the apex height. Used to validate the closed-form fixing functions.
ObservationRegion triangle_band_region(double side, double margin = 0.02);

/// C2 monotone ramp: 0 for u <= 0, 1 for u >= 1.
double smoothstep5(double u);
double smoothstep5_deriv(double u);

}  // namespace gaugelab
