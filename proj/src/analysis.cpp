#include "gaugelab/analysis.hpp"

#include <cmath>
#include <numbers>

namespace gaugelab {

double enclosed_flux(const Fn2& field, const FluxRegion& region, FluxKind kind,
                     const Constants& con, int n) {
  con.validate();
  const double factor = kind == FluxKind::ElectricSpacetime ? con.c : 1.0;
  return factor * std::visit(
                      [&](const auto& reg) -> double {
                        using T = std::decay_t<decltype(reg)>;
                        if constexpr (std::is_same_v<T, RectRegion>) {
                          Interval outer = reg.b, inner = reg.a;
                          outer.n = inner.n = n;
                          return integrate_iterated(
                              [&](double b, double a) { return field(a, b); }, outer, inner,
                              [&](double) { return reg.a_breaks; }, reg.b_breaks);
                        } else if constexpr (std::is_same_v<T, TriRegion>) {
                          const auto& tri = reg.tri;
                          const double h = tri.height();
                          if (!(tri.side > 0.0))
                            throw std::invalid_argument("enclosed_flux: degenerate triangle");
                          // exact chord limits per height, no indicator jumps
                          auto row = [&](double y) {
                            const double lo = tri.chord_lo(y), hi = tri.chord_hi(y);
                            if (!(hi > lo)) return 0.0;
                            return integrate_line([&](double x) { return field(x, y); },
                                                  Interval(lo, hi, n));
                          };
                          return detail::integrate_segment(row, 0.0, h, {}, n - 1);
                        } else {
                          if (!(reg.r > 0.0))
                            throw std::invalid_argument("enclosed_flux: degenerate disc");
                          auto ring = [&](double r) {
                            auto f = [&](double th) {
                              return field(reg.x + r * std::cos(th), reg.y + r * std::sin(th));
                            };
                            return r * detail::integrate_segment(f, 0.0, 2.0 * std::numbers::pi,
                                                                 {}, n - 1);
                          };
                          return detail::integrate_segment(ring, 0.0, reg.r, {}, n - 1);
                        }
                      },
                      region);
}

std::vector<PhaseReport> solution_difference(const GaugeSolution& a, const GaugeSolution& b,
                                             const std::vector<Eigen::Vector3d>& points) {
  if ((a.base() - b.base()).norm() > 1e-12)
    throw std::invalid_argument("solution_difference: mismatched base points");
  std::vector<PhaseReport> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    const auto pa = a.parts(pt[0], pt[1], pt[2]);
    const auto pb = b.parts(pt[0], pt[1], pt[2]);
    PhaseReport rep;
    rep.point = pt;
    rep.ab_term = pa.circuit - pb.circuit;
    rep.nonlocal_term = pa.nonlocal - pb.nonlocal;
    rep.multiplicity_term = pa.multiplicity - pb.multiplicity;
    out.push_back(rep);
  }
  return out;
}

PhaseReport van_kampen_delta(const ScenarioConfig& cfg, double loop_radius, double t_obs,
                             const Constants& con) {
  if (cfg.name != "van_kampen_solenoid")
    throw std::invalid_argument("van_kampen_delta: requires the van_kampen_solenoid scenario");
  con.validate();
  const double R = cfg.params.at("R");
  if (!(loop_radius > R))
    throw std::invalid_argument("van_kampen_delta: loop intersects the solenoid core");
  const double t0 = cfg.base[2];

  const RectLoop loop{-loop_radius, loop_radius, -loop_radius, loop_radius, 801};

  PhaseReport rep;
  rep.point = {loop_radius, loop_radius, t_obs};
  // circulation of A through the enclosed-flux identity (exact in any gauge)
  rep.ab_term = loop_flux(cfg.fields, loop, t_obs);

  // c * time integral of the E circulation on the circuit
  auto circ = [&](double tp) { return circulation(cfg.fields.Ex, cfg.fields.Ey, loop, tp); };
  Breaks cuts;
  if (cfg.t_breaks) {
    // edge and corner retardation times bracket the kink structure
    for (double d : {loop_radius, loop_radius * std::numbers::sqrt2})
      for (double b : cfg.t_breaks(d, 0.0)) cuts.push_back(b);
  }
  rep.nonlocal_term = con.c * integrate_line_signed(circ, t0, t_obs, 401, cuts);
  return rep;
}

WavefunctionSample phase_map(const WavefunctionSample& psi1, const GaugeSolution& sol,
                             const Constants& con) {
  if (psi1.points.size() != psi1.values.size())
    throw std::invalid_argument("phase_map: points/values size mismatch");
  con.validate();
  WavefunctionSample out;
  out.points = psi1.points;
  out.values.reserve(psi1.values.size());
  for (std::size_t i = 0; i < psi1.points.size(); ++i) {
    const auto& pt = psi1.points[i];
    if (!std::isfinite(std::abs(psi1.values[i])))
      throw std::invalid_argument("phase_map: non-finite amplitude in input sample");
    const double lambda = sol.evaluate(pt[0], pt[1], pt[2]);
    const double phase = con.q * lambda / (con.hbar * con.c);
    out.values.push_back(std::polar(1.0, phase) * psi1.values[i]);
  }
  return out;
}

}  // namespace gaugelab
