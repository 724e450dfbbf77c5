#include "gaugelab/slit.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>

namespace gaugelab {

namespace {
constexpr double kRegimeLimit = 0.05;
}

SlitSetup SlitSetup::magnetic(double L, double d, double W, double v, double B,
                              const Constants& con) {
  SlitSetup s;
  s.L = L;
  s.d = d;
  s.W = W;
  s.v = v;
  s.B = B;
  s.con = con;
  s.lambda_dB = con.h / (con.m * v);
  s.validate();
  return s;
}

SlitSetup SlitSetup::electric(double L, double d, double T, double v, double E,
                              const Constants& con) {
  SlitSetup s;
  s.L = L;
  s.d = d;
  s.T = T;
  s.v = v;
  s.E = E;
  s.con = con;
  s.lambda_dB = con.h / (con.m * v);
  s.validate();
  return s;
}

void SlitSetup::validate() const {
  con.validate();
  if (!(L > 0.0) || !(d > 0.0) || !(v > 0.0))
    throw std::invalid_argument("SlitSetup: L, d and v must be positive");
  const double expected = con.h / (con.m * v);
  if (std::abs(lambda_dB - expected) > 1e-9 * expected)
    throw std::invalid_argument("SlitSetup: lambda_dB must equal h / (m v)");
}

SlitResult ab_phase_magnetic(const SlitSetup& s) {
  const double flux = s.B * s.W * s.d;
  const double r = s.ratio_magnetic();
  return {2.0 * std::numbers::pi * (s.con.q / s.con.e) * flux / s.con.flux_quantum(), r,
          r < kRegimeLimit};
}

SlitResult fringe_shift_magnetic(const SlitSetup& s) {
  const double r = s.ratio_magnetic();
  return {-s.B * s.W * s.con.q * s.L * s.lambda_dB / (s.con.h * s.con.c), r, r < kRegimeLimit};
}

SlitResult semi_phase(const SlitSetup& s, double x_c) {
  const double r = std::abs(x_c) / s.L;
  return {2.0 * std::numbers::pi / s.lambda_dB * s.d * x_c / s.L, r, r < kRegimeLimit};
}

SlitResult ab_phase_electric(const SlitSetup& s) {
  const double dV = s.E * s.d;
  const double r = s.ratio_electric();
  return {-2.0 * std::numbers::pi * (s.con.q / s.con.e) * s.con.c * s.T * dV /
              s.con.flux_quantum(),
          r, r < kRegimeLimit};
}

SlitResult fringe_shift_electric(const SlitSetup& s) {
  const double r = s.ratio_electric();
  return {s.con.q * s.E * s.T * s.L * s.lambda_dB / s.con.h, r, r < kRegimeLimit};
}

TrajectoryResult trajectory_oracle(const SlitSetup& s, SlitVariant variant, int steps) {
  if (steps < 10000) throw std::invalid_argument("trajectory_oracle: needs at least 1e4 steps");
  s.validate();
  const double q = s.con.q, m = s.con.m, c = s.con.c;

  double displacement = 0.0;
  double delta_v = 0.0;
  for (double slit_x : {-0.5 * s.d, +0.5 * s.d}) {
    double x = slit_x, vx = 0.0;
    if (variant == SlitVariant::Magnetic) {
      // State (x, z, vx, vz); B along +y makes a = (q B / m c) (-vz, vx).
      // Integrated in z across the strip so the exit plane is exact.
      const double k = q * s.B / (m * c);
      Eigen::Vector3d state(x, 0.0, s.v);  // (x, vx, vz) at z = 0
      auto rhs = [&](const Eigen::Vector3d& u) {
        const double vz = u[2];
        return Eigen::Vector3d(u[1] / vz, -k, k * u[1] / vz);
      };
      const double hz = s.W / steps;
      for (int i = 0; i < steps; ++i) {
        const Eigen::Vector3d k1 = rhs(state);
        const Eigen::Vector3d k2 = rhs(state + 0.5 * hz * k1);
        const Eigen::Vector3d k3 = rhs(state + 0.5 * hz * k2);
        const Eigen::Vector3d k4 = rhs(state + hz * k3);
        state += hz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!state.allFinite())
          throw std::runtime_error("trajectory_oracle: non-finite state during strip crossing");
      }
      x = state[0];
      vx = state[1];
      const double vz = state[2];
      // Screen at distance L from the strip center.
      x += vx / vz * (s.L - 0.5 * s.W);
    } else {
      // Uniform force q E along x during the pulse, then free flight; the
      // screen is met at time L / v measured from the pulse center.
      const double a = q * s.E / m;
      const double ht = s.T / steps;
      double t = 0.0;
      for (int i = 0; i < steps; ++i) {
        // classic 4th-order step (exact for the constant force)
        const double k1 = a, k2 = a, k3 = a, k4 = a;
        const double dv = ht / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        x += vx * ht + 0.5 * a * ht * ht;
        vx += dv;
        t += ht;
      }
      if (!std::isfinite(x) || !std::isfinite(vx))
        throw std::runtime_error("trajectory_oracle: non-finite state during pulse");
      x += vx * (s.L / s.v - 0.5 * s.T);
    }
    displacement += x - slit_x;
    delta_v += vx;
  }
  return {0.5 * displacement, 0.5 * delta_v};
}

}  // namespace gaugelab
