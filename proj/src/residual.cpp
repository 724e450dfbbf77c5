#include "gaugelab/residual.hpp"

#include <cmath>

namespace gaugelab {

namespace {

void track(double value, double x, double y, double t, double& slot, double& best,
           Eigen::Vector3d& worst) {
  slot = std::max(slot, value);
  if (value > best) {
    best = value;
    worst = {x, y, t};
  }
}

}  // namespace

ResidualReport pde_residual(const GaugeSolution& sol, const PotentialSet& p, const BoxDomain& dom,
                            const Constants& con, double tolerance) {
  dom.validate();
  con.validate();
  if ((sol.dim() == DimTag::TwoPlusOneD) != (dom.axes.size() == 3))
    throw std::invalid_argument("pde_residual: domain dimensionality does not match the solution");

  ResidualReport rep;
  rep.grid = dom;
  rep.tolerance = tolerance;
  double best = -1.0;

  if (sol.dim() == DimTag::OneDDynamic || sol.dim() == DimTag::TwoDStatic) {
    const bool dynamic = sol.dim() == DimTag::OneDDynamic;
    const Interval& ix = dom.interval(AxisTag::X);
    const Interval& iv = dom.interval(dynamic ? AxisTag::T : AxisTag::Y);
    const Eigen::ArrayXd xs = ix.nodes();
    const Eigen::ArrayXd vs = iv.nodes();
    const double hx = ix.spacing(), hv = iv.spacing();
    const Eigen::MatrixXd L = sol.evaluate_grid(xs, vs);
    for (Eigen::Index i = 1; i + 1 < xs.size(); ++i)
      for (Eigen::Index j = 1; j + 1 < vs.size(); ++j) {
        const double x = xs[i];
        const double y = dynamic ? 0.0 : vs[j];
        const double t = dynamic ? vs[j] : 0.0;
        const double dLdx = (L(i + 1, j) - L(i - 1, j)) / (2.0 * hx);
        track(std::abs(dLdx - p.Ax(x, y, t)), x, y, t, rep.max_x, best, rep.worst_point);
        const double dLdv = (L(i, j + 1) - L(i, j - 1)) / (2.0 * hv);
        if (dynamic)
          track(std::abs(dLdv / con.c + p.phi(x, y, t)), x, y, t, rep.max_t, best,
                rep.worst_point);
        else
          track(std::abs(dLdv - p.Ay(x, y, t)), x, y, t, rep.max_y, best, rep.worst_point);
      }
  } else {
    const Interval& ix = dom.interval(AxisTag::X);
    const Interval& iy = dom.interval(AxisTag::Y);
    const Interval& it = dom.interval(AxisTag::T);
    const Eigen::ArrayXd xs = ix.nodes(), ys = iy.nodes(), ts = it.nodes();
    const double hx = ix.spacing(), hy = iy.spacing(), ht = it.spacing();
    const auto L = sol.evaluate_grid3(xs, ys, ts);
    for (Eigen::Index k = 1; k + 1 < ts.size(); ++k)
      for (Eigen::Index i = 1; i + 1 < xs.size(); ++i)
        for (Eigen::Index j = 1; j + 1 < ys.size(); ++j) {
          const double x = xs[i], y = ys[j], t = ts[k];
          const double dLdx = (L[k](i + 1, j) - L[k](i - 1, j)) / (2.0 * hx);
          track(std::abs(dLdx - p.Ax(x, y, t)), x, y, t, rep.max_x, best, rep.worst_point);
          const double dLdy = (L[k](i, j + 1) - L[k](i, j - 1)) / (2.0 * hy);
          track(std::abs(dLdy - p.Ay(x, y, t)), x, y, t, rep.max_y, best, rep.worst_point);
          const double dLdt = (L[k + 1](i, j) - L[k - 1](i, j)) / (2.0 * ht);
          track(std::abs(dLdt / con.c + p.phi(x, y, t)), x, y, t, rep.max_t, best,
                rep.worst_point);
        }
  }

  rep.pass = rep.max_residual() < tolerance;
  return rep;
}

}  // namespace gaugelab
