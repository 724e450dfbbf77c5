#pragma once

#include "gaugelab/gauge.hpp"
#include "gaugelab/grid.hpp"

namespace gaugelab {

/// Finite-difference residuals of the defining system: grad(Lambda) against
/// the potentials per axis, evaluated over the interior of a sampling box.
struct ResidualReport {
  double max_x = 0.0;  ///< max |d(Lambda)/dx - Ax|
  double max_y = 0.0;  ///< max |d(Lambda)/dy - Ay| (planar and full only)
  double max_t = 0.0;  ///< max |(1/c) d(Lambda)/dt + phi| (dynamic only)
  Eigen::Vector3d worst_point = Eigen::Vector3d::Zero();
  BoxDomain grid;
  double tolerance = 1e-5;
  bool pass = false;

  double max_residual() const { return std::max({max_x, max_y, max_t}); }
};

/// Central differences with step equal to the grid spacing, so every stencil
/// lands on grid nodes; a one-cell margin at the box boundary is excluded.
ResidualReport pde_residual(const GaugeSolution& sol, const PotentialSet& p, const BoxDomain& dom,
                            const Constants& con, double tolerance = 1e-5);

}  // namespace gaugelab
