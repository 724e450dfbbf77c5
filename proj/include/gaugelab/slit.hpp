#pragma once

#include <stdexcept>

#include "gaugelab/constants.hpp"

namespace gaugelab {

/// Double-slit geometry with a thin deflecting region between the slits and
/// the screen: a magnetic strip of width W (field B out of the figure plane)
/// or a spatially uniform electric pulse of duration T parallel to the
/// screen. The screen sits at distance L from the center of the strip/pulse;
/// x is the screen-parallel axis. All signed results are for this
/// orientation (they flip for the opposite charge).
struct SlitSetup {
  double L = 0;          ///< slit-to-screen distance
  double d = 0;          ///< slit separation
  double W = 0;          ///< magnetic strip width
  double lambda_dB = 0;  ///< de Broglie wavelength h / (m v)
  double v = 0;          ///< particle speed
  double B = 0;          ///< strip field strength (magnetic variant)
  double E = 0;          ///< pulse field strength (electric variant)
  double T = 0;          ///< pulse duration (electric variant)
  Constants con;

  static SlitSetup magnetic(double L, double d, double W, double v, double B,
                            const Constants& con);
  static SlitSetup electric(double L, double d, double T, double v, double E,
                            const Constants& con);

  double ratio_magnetic() const { return W / L; }
  double ratio_electric() const { return T * v / L; }
  void validate() const;
};

/// A computed phase or displacement with its small-deflection regime check
/// attached (ratio < 0.05 passes).
struct SlitResult {
  double value = 0.0;
  double regime_ratio = 0.0;
  bool regime_ok = true;
};

/// 2 pi (q/e) Phi / Phi0 with Phi = B W d.
SlitResult ab_phase_magnetic(const SlitSetup& s);
/// Central fringe displacement -B W q L lambda / (h c).
SlitResult fringe_shift_magnetic(const SlitSetup& s);
/// (2 pi / lambda) d x_c / L for a given central-fringe displacement.
SlitResult semi_phase(const SlitSetup& s, double x_c);
/// -2 pi (q/e) c T dV / Phi0 with dV = E d.
SlitResult ab_phase_electric(const SlitSetup& s);
/// Central fringe displacement +q E T L lambda / h.
SlitResult fringe_shift_electric(const SlitSetup& s);

enum class SlitVariant { Magnetic, Electric };

struct TrajectoryResult {
  double x_c = 0.0;      ///< central-ray displacement at the screen
  double delta_v = 0.0;  ///< screen-parallel speed change through the region
};

/// Independent check of the closed forms: integrates m dv/dt = qE + (q/c) v x B
/// through the strip/pulse with a 4th-order step, one ray per slit, then free
/// flight to the screen; returns the midpoint displacement.
TrajectoryResult trajectory_oracle(const SlitSetup& s, SlitVariant variant, int steps = 20000);

}  // namespace gaugelab
