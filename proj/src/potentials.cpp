#include "gaugelab/potentials.hpp"

#include <cmath>
#include <numbers>

namespace gaugelab {

FieldSet derive_fields(const PotentialSet& p, const Constants& con, double fd_step) {
  con.validate();
  FieldSet out;
  const double c = con.c;
  if (p.derivs) {
    const PotentialDerivs d = *p.derivs;
    const Field3 dphi_dx = d.dphi_dx, dAx_dt = d.dAx_dt;
    const Field3 dphi_dy = d.dphi_dy, dAy_dt = d.dAy_dt;
    const Field3 dAy_dx = d.dAy_dx, dAx_dy = d.dAx_dy;
    out.Ex = [=](double x, double y, double t) { return -dphi_dx(x, y, t) - dAx_dt(x, y, t) / c; };
    out.Ey = [=](double x, double y, double t) { return -dphi_dy(x, y, t) - dAy_dt(x, y, t) / c; };
    out.B = [=](double x, double y, double t) { return dAy_dx(x, y, t) - dAx_dy(x, y, t); };
    return out;
  }
  const Field3 Ax = p.Ax, Ay = p.Ay, phi = p.phi;
  const double h = fd_step;
  out.Ex = [=](double x, double y, double t) {
    const double dphi = central_diff([&](double u) { return phi(u, y, t); }, x, h);
    const double dAdt = central_diff([&](double u) { return Ax(x, y, u); }, t, h);
    return -dphi - dAdt / c;
  };
  out.Ey = [=](double x, double y, double t) {
    const double dphi = central_diff([&](double u) { return phi(x, u, t); }, y, h);
    const double dAdt = central_diff([&](double u) { return Ay(x, y, u); }, t, h);
    return -dphi - dAdt / c;
  };
  out.B = [=](double x, double y, double t) {
    const double dAy = central_diff([&](double u) { return Ay(u, y, t); }, x, h);
    const double dAx = central_diff([&](double u) { return Ax(x, u, t); }, y, h);
    return dAy - dAx;
  };
  return out;
}

double circulation(const Field3& Fx, const Field3& Fy, const RectLoop& loop, double t) {
  loop.validate();
  const Interval xs(loop.x_lo, loop.x_hi, loop.n);
  const Interval ys(loop.y_lo, loop.y_hi, loop.n);
  const double bottom = integrate_line([&](double x) { return Fx(x, loop.y_lo, t); }, xs);
  const double top = integrate_line([&](double x) { return Fx(x, loop.y_hi, t); }, xs);
  const double right = integrate_line([&](double y) { return Fy(loop.x_hi, y, t); }, ys);
  const double left = integrate_line([&](double y) { return Fy(loop.x_lo, y, t); }, ys);
  return bottom + right - top - left;
}

double loop_flux(const FieldSet& f, const RectLoop& loop, double t) {
  loop.validate();
  double core_flux = 0.0;
  const CoreSpec* core = f.core ? &*f.core : nullptr;
  if (core) {
    const bool inside = core->x - core->radius > loop.x_lo && core->x + core->radius < loop.x_hi &&
                        core->y - core->radius > loop.y_lo && core->y + core->radius < loop.y_hi;
    const bool outside = core->x + core->radius < loop.x_lo || core->x - core->radius > loop.x_hi ||
                         core->y + core->radius < loop.y_lo || core->y - core->radius > loop.y_hi;
    if (!inside && !outside)
      throw std::invalid_argument("loop_flux: loop boundary intersects the flux core");
    if (inside) core_flux = core->flux(t);
  }
  const double rc = core ? core->radius : 0.0;
  const double cx = core ? core->x : 0.0;
  const double cy = core ? core->y : 0.0;
  auto b = [&](double y, double x) {
    if (core &&
        (x - cx) * (x - cx) + (y - cy) * (y - cy) < rc * rc)
      return 0.0;  // core flux accounted for separately
    return f.B(x, y, t);
  };

  // Declared circular structure is integrated in polar coordinates over the
  // inscribed disc (exact for the shell kinks); the Cartesian remainder only
  // sees whatever extends past it.
  double polar = 0.0;
  double r_in = 0.0;
  if (f.radial_breaks && core && cx - rc > loop.x_lo && cx + rc < loop.x_hi &&
      cy - rc > loop.y_lo && cy + rc < loop.y_hi) {
    r_in = std::min({loop.x_hi - cx, cx - loop.x_lo, loop.y_hi - cy, cy - loop.y_lo});
    Breaks r_cuts;
    for (double r : f.radial_breaks(t))
      if (r > rc && r < r_in) r_cuts.push_back(r);
    auto ring = [&](double r) {
      auto fth = [&](double th) { return f.B(cx + r * std::cos(th), cy + r * std::sin(th), t); };
      return r * integrate_line(fth, Interval(0.0, 2.0 * std::numbers::pi, 401));
    };
    polar = integrate_line(ring, Interval(rc, r_in, std::max(loop.n, 3201)), r_cuts);
  }

  BreaksFn x_breaks;
  Breaks y_breaks;
  Breaks radii;
  if (r_in > 0.0) radii.push_back(r_in);
  else if (core) radii.push_back(rc);
  if (f.radial_breaks)
    for (double r : f.radial_breaks(t))
      if (r > r_in) radii.push_back(r);
  if (!radii.empty()) {
    x_breaks = [radii, cx, cy](double y) {
      Breaks cuts;
      for (double r : radii) {
        const double dy = y - cy;
        if (std::abs(dy) < r) {
          const double w = std::sqrt(r * r - dy * dy);
          cuts.push_back(cx - w);
          cuts.push_back(cx + w);
        }
      }
      return cuts;
    };
    for (double r : radii) {
      y_breaks.push_back(cy - r);
      y_breaks.push_back(cy + r);
    }
  }
  const double hole = std::max(r_in, core ? rc : 0.0);
  auto b_outer = [&](double y, double x) {
    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < hole * hole) return 0.0;
    return b(y, x);
  };
  const double area =
      integrate_iterated(hole > 0.0 ? Fn2(b_outer) : Fn2(b), Interval(loop.y_lo, loop.y_hi, loop.n),
                         Interval(loop.x_lo, loop.x_hi, loop.n), x_breaks, y_breaks);
  return core_flux + polar + area;
}

double faraday_residual(const FieldSet& f, const RectLoop& loop, const Interval& times,
                        const Constants& con) {
  loop.validate();
  times.validate();
  con.validate();
  // flux-rate stencil step, independent of how densely times are sampled
  const double dt = std::max(1e-6, 1e-4 * times.length());
  const Eigen::ArrayXd ts = times.nodes();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double circ = circulation(f.Ex, f.Ey, loop, t);
    const double dflux = (loop_flux(f, loop, t + dt) - loop_flux(f, loop, t - dt)) / (2.0 * dt);
    worst = std::max(worst, std::abs(circ + dflux / con.c));
  }
  return worst;
}

}  // namespace gaugelab
