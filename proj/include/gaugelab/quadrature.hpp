#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "gaugelab/grid.hpp"

namespace gaugelab {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;
using Breaks = std::vector<double>;
/// Breakpoints of the inner variable as a function of the outer variable.
using BreaksFn = std::function<Breaks(double)>;

/// Composite-Simpson estimate of ∫ f over iv.
///
/// Interior breakpoints split the interval into smooth pieces so that the
/// rule keeps its O(h^4) order on piecewise-defined integrands (field strips,
/// triangle chords). Breakpoints outside (lo, hi) are ignored. Throws if a
/// sample of f is not finite, naming the offending coordinate.
double integrate_line(const Fn1& f, const Interval& iv, const Breaks& breakpoints = {});

/// Iterated Simpson: ∫_{outer} du ∫_{inner} dv f(u, v).
///
/// The first argument of f is the outer variable. inner_breaks may depend on
/// the outer variable (slanted region edges); outer_breaks is a fixed list.
double integrate_iterated(const Fn2& f, const Interval& outer, const Interval& inner,
                          const BreaksFn& inner_breaks = {}, const Breaks& outer_breaks = {});

/// Second-order central difference (f(at+h) - f(at-h)) / (2h).
double central_diff(const Fn1& f, double at, double h);

/// Line integral with orientation: negative when to < from, zero when equal.
double integrate_line_signed(const Fn1& f, double from, double to, int n,
                             const Breaks& breakpoints = {});

/// Cumulative line integral u -> ∫_{from}^{u} f, evaluated at each target.
///
/// Targets must be strictly increasing; `from` may lie anywhere relative to
/// them. Each gap between consecutive anchor points is integrated with a
/// refined Simpson rule split at breakpoints, so the returned values are
/// consistent with integrate_line to quadrature accuracy.
Eigen::ArrayXd cumulative_at_targets(const Fn1& f, double from, const Eigen::ArrayXd& targets,
                                     const Breaks& breakpoints = {}, int refine = 8);

namespace detail {
/// Simpson over [a, b] with m even subintervals; no breakpoint handling.
double simpson_segment(const Fn1& f, double a, double b, int m);
/// Splits [a, b] at breakpoints and integrates each smooth piece.
double integrate_segment(const Fn1& f, double a, double b, const Breaks& breakpoints, int m);
void check_finite(double value, double coordinate);
}  // namespace detail

}  // namespace gaugelab
