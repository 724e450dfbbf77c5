#include "gaugelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaugelab {

namespace detail {

void check_finite(double value, double coordinate) {
  if (!std::isfinite(value))
    throw std::runtime_error("quadrature: integrand is not finite at coordinate " +
                             std::to_string(coordinate));
}

double simpson_segment(const Fn1& f, double a, double b, int m) {
  if (m < 2) m = 2;
  if (m % 2 != 0) ++m;
  const double h = (b - a) / m;
  // Endpoints are sampled a hair inside the segment so that pieces split at
  // a jump integrate their one-sided limits.
  const double nudge = 1e-13 * std::max({b - a, std::abs(a), std::abs(b)});
  const double fa = f(a + nudge), fb = f(b - nudge);
  check_finite(fa, a);
  check_finite(fb, b);
  double odd = 0.0, even = 0.0;
  for (int k = 1; k < m; ++k) {
    const double u = a + k * h;
    const double fu = f(u);
    check_finite(fu, u);
    if (k % 2 == 1)
      odd += fu;
    else
      even += fu;
  }
  return h / 3.0 * (fa + fb + 4.0 * odd + 2.0 * even);
}

double integrate_segment(const Fn1& f, double a, double b, const Breaks& breakpoints, int m) {
  Breaks cuts;
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  if (cuts.empty()) return simpson_segment(f, a, b, m);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  double left = a;
  for (double c : cuts) {
    // keep point budget roughly proportional to piece length
    const int mk = std::max(4, static_cast<int>(std::lround(m * (c - left) / (b - a))));
    total += simpson_segment(f, left, c, mk);
    left = c;
  }
  const int mk = std::max(4, static_cast<int>(std::lround(m * (b - left) / (b - a))));
  total += simpson_segment(f, left, b, mk);
  return total;
}

}  // namespace detail

double integrate_line(const Fn1& f, const Interval& iv, const Breaks& breakpoints) {
  iv.validate();
  return detail::integrate_segment(f, iv.lo, iv.hi, breakpoints, iv.n - 1);
}

double integrate_iterated(const Fn2& f, const Interval& outer, const Interval& inner,
                          const BreaksFn& inner_breaks, const Breaks& outer_breaks) {
  outer.validate();
  inner.validate();
  auto outer_integrand = [&](double u) {
    Breaks ib = inner_breaks ? inner_breaks(u) : Breaks{};
    auto g = [&](double v) { return f(u, v); };
    return detail::integrate_segment(g, inner.lo, inner.hi, ib, inner.n - 1);
  };
  return detail::integrate_segment(outer_integrand, outer.lo, outer.hi, outer_breaks, outer.n - 1);
}

double integrate_line_signed(const Fn1& f, double from, double to, int n,
                             const Breaks& breakpoints) {
  if (from == to) return 0.0;
  const double lo = std::min(from, to), hi = std::max(from, to);
  const double val = detail::integrate_segment(f, lo, hi, breakpoints, std::max(4, n - 1));
  return from < to ? val : -val;
}

double central_diff(const Fn1& f, double at, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("central_diff: h must be positive");
  const double fp = f(at + h);
  const double fm = f(at - h);
  detail::check_finite(fp, at + h);
  detail::check_finite(fm, at - h);
  return (fp - fm) / (2.0 * h);
}

Eigen::ArrayXd cumulative_at_targets(const Fn1& f, double from, const Eigen::ArrayXd& targets,
                                     const Breaks& breakpoints, int refine) {
  const Eigen::Index n = targets.size();
  if (n == 0) return {};
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(targets[i] > targets[i - 1]))
      throw std::invalid_argument("cumulative_at_targets: targets must be strictly increasing");
  if (refine < 2) refine = 2;

  // Anchor chain: the targets plus `from` merged in order. Integrate each
  // consecutive gap once, then shift so the value at `from` is zero.
  std::vector<double> anchors(targets.data(), targets.data() + n);
  auto pos = std::lower_bound(anchors.begin(), anchors.end(), from);
  bool from_is_anchor = (pos != anchors.end() && *pos == from);
  Eigen::Index from_idx;
  if (from_is_anchor) {
    from_idx = pos - anchors.begin();
  } else {
    from_idx = pos - anchors.begin();
    anchors.insert(pos, from);
  }

  // Wide gaps (typically the approach from `from` to the target range) get
  // proportionally more subdivisions than the regular target spacing.
  const double ref_gap =
      n > 1 ? (targets[n - 1] - targets[0]) / static_cast<double>(n - 1)
            : std::abs(targets[0] - from) + 1e-300;

  Eigen::ArrayXd cum(static_cast<Eigen::Index>(anchors.size()));
  cum[0] = 0.0;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const double gap = anchors[i] - anchors[i - 1];
    const int scale = static_cast<int>(std::min(4096.0, std::ceil(gap / std::max(ref_gap, 1e-300))));
    const int m = refine * std::max(1, scale);
    cum[i] = cum[i - 1] + detail::integrate_segment(f, anchors[i - 1], anchors[i], breakpoints, m);
  }

  const double offset = cum[from_idx];
  Eigen::ArrayXd out(n);
  Eigen::Index j = 0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!from_is_anchor && static_cast<Eigen::Index>(i) == from_idx) continue;
    out[j++] = cum[i] - offset;
  }
  return out;
}

}  // namespace gaugelab
