#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "gaugelab/gauge.hpp"
#include "gaugelab/potentials.hpp"
#include "gaugelab/scenario.hpp"

namespace gaugelab {

/// Decomposition of a gauge-function difference at one point: the circuit of
/// potential integrals, the nonlocal field term (with its fixing functions),
/// and the multiplicity constants. delta_lambda is their exact sum.
struct PhaseReport {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  double ab_term = 0.0;
  double nonlocal_term = 0.0;
  double multiplicity_term = 0.0;

  double delta_lambda() const { return ab_term + nonlocal_term + multiplicity_term; }
  double phase(const Constants& con) const {
    return con.q * delta_lambda() / (con.hbar * con.c);
  }
};

struct RectRegion {
  Interval a, b;  ///< (x, y) or (x, t)
  Breaks a_breaks, b_breaks;  ///< integrand edges (field strips)
};
struct TriRegion {
  TriangleGeometry tri;
};
struct DiscRegion {
  double x = 0, y = 0, r = 1;
};
using FluxRegion = std::variant<RectRegion, TriRegion, DiscRegion>;

enum class FluxKind { Magnetic, ElectricSpacetime };

/// Area quadrature of a planar field over the region. ElectricSpacetime
/// treats the second coordinate as time and multiplies by c.
double enclosed_flux(const Fn2& field, const FluxRegion& region, FluxKind kind,
                     const Constants& con, int n = 401);

/// Pointwise difference of two solutions of the same configuration and base,
/// split into its constituent terms.
std::vector<PhaseReport> solution_difference(const GaugeSolution& a, const GaugeSolution& b,
                                             const std::vector<Eigen::Vector3d>& points);

/// Two-route difference for the switched-solenoid configuration on a square
/// circuit of half-side L centered on the core: the circulation of A enters
/// through the enclosed-flux identity, the nonlocal term by quadrature of E
/// on the circuit.
PhaseReport van_kampen_delta(const ScenarioConfig& cfg, double loop_radius, double t_obs,
                             const Constants& con);

struct WavefunctionSample {
  std::vector<Eigen::Vector3d> points;
  std::vector<std::complex<double>> values;
};

/// psi2 = exp(i q Lambda / (hbar c)) psi1, pointwise. Preserves the modulus
/// exactly.
WavefunctionSample phase_map(const WavefunctionSample& psi1, const GaugeSolution& sol,
                             const Constants& con);

}  // namespace gaugelab
