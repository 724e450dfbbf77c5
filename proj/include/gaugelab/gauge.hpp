#pragma once

#include <Eigen/Core>

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gaugelab/constants.hpp"
#include "gaugelab/potentials.hpp"
#include "gaugelab/scenario.hpp"

namespace gaugelab {

/// Construction routes. The two generalized solutions of each dimensionality
/// differ in which variable is integrated first; the naive variants are the
/// combined potential-integral forms kept as failure demonstrations.
enum class Route {
  naive_v1,
  naive_v2,
  oneD_t_then_x,
  oneD_x_then_t,
  twoD_route1,
  twoD_route2,
  full_primary,
  full_dual,
};

std::string route_name(Route r);
Route route_from_name(const std::string& name);

/// One gauge-fixing function of a single variable. Either a closed form or a
/// sampled cumulative with one-sided derivatives (cubic Hermite between
/// nodes, linear extension outside the sampled hull).
class FixingFn {
 public:
  FixingFn() = default;

  static FixingFn zero();
  static FixingFn closed_form(std::function<double(double)> f);
  static FixingFn sampled(Eigen::ArrayXd nodes, Eigen::ArrayXd vals, Eigen::ArrayXd deriv_left,
                          Eigen::ArrayXd deriv_right);

  double operator()(double u) const;
  bool identically_zero() const { return zero_; }

 private:
  std::function<double(double)> closed_;
  Eigen::ArrayXd nodes_, vals_, dl_, dr_;
  bool zero_ = true;
};

/// The fixing functions a route needs, with the measured residuals of their
/// independence conditions. Members follow the per-route naming: g / g_hat
/// for the 1-D dynamic pair, g / h for the planar pair, G / G_hat / F for the
/// full (x, y, t) pair.
struct FixingFunctions {
  std::optional<FixingFn> g;
  std::optional<FixingFn> g_hat;
  std::optional<FixingFn> h;
  std::optional<FixingFn> G;
  std::optional<FixingFn> G_hat;
  std::function<double(double, double)> F;  ///< null means identically zero
  std::map<std::string, double> condition_residuals;

  double max_residual() const;
};

struct GaugeOptions {
  int quad_n = 801;      ///< base sample count for on-demand quadratures
  int refine = 8;        ///< subdivisions per grid gap in cumulative passes
  double fixing_tol = 1e-4;
  double lambda0 = 0.0;
  Connectivity connectivity = Connectivity::Simple;
  // Integrand breakpoints for the two-variable solvers: in u at fixed v and
  // in v at fixed u, where (u, v) = (x, t) or (x, y).
  BreaksFn u_breaks;
  BreaksFn v_breaks;
  // Breakpoints for the (x, y, t) solver.
  std::function<Breaks(double y, double t)> x_breaks3;
  std::function<Breaks(double x, double t)> y_breaks3;
  std::function<Breaks(double x, double y)> t_breaks3;
};

namespace detail {
struct SolutionImpl;
struct SolutionAccess;
}

/// A constructed gauge function. Immutable; evaluation is pure. lambda_base
/// is the value at the base point (it includes any engaged multiplicity
/// constant, so evaluate(base) == lambda_base always holds).
class GaugeSolution {
 public:
  struct Parts {
    double circuit = 0.0;     ///< potential line/time integrals
    double nonlocal = 0.0;    ///< field double integrals plus fixing terms
    double multiplicity = 0.0;
    double total(double lambda0) const { return lambda0 + circuit + nonlocal + multiplicity; }
  };

  Route route() const { return route_; }
  DimTag dim() const { return dim_; }
  const Eigen::Vector3d& base() const { return base_; }
  double lambda_base() const;
  Connectivity connectivity() const { return connectivity_; }
  const FixingFunctions& fixing() const { return fixing_; }
  const Multiplicities& multiplicities() const { return mult_; }

  double evaluate(double x, double y, double t) const;
  Parts parts(double x, double y, double t) const;

  /// Dense evaluation over a tensor grid; rows index the first coordinate.
  /// For 1-D dynamic solutions vs is the time axis, for planar ones the y
  /// axis. Much faster than pointwise evaluation on large grids.
  Eigen::MatrixXd evaluate_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const;

  /// Term-by-term version of evaluate_grid.
  struct PartsGrid {
    Eigen::MatrixXd circuit, nonlocal;
    double multiplicity = 0.0;
  };
  PartsGrid parts_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const;

  /// Dense evaluation for (x, y, t) solutions; one matrix per time node.
  std::vector<Eigen::MatrixXd> evaluate_grid3(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys,
                                              const Eigen::ArrayXd& ts) const;

 private:
  friend struct detail::SolutionAccess;

  Route route_ = Route::oneD_t_then_x;
  DimTag dim_ = DimTag::OneDDynamic;
  Eigen::Vector3d base_ = Eigen::Vector3d::Zero();
  double lambda0_ = 0.0;
  Connectivity connectivity_ = Connectivity::Simple;
  FixingFunctions fixing_;
  Multiplicities mult_;
  std::shared_ptr<const detail::SolutionImpl> impl_;
};

/// Combined potential-integral form (both literature variants). Satisfies
/// the defining system only when A is t-independent and phi is
/// x-independent; kept as the failure demonstration.
GaugeSolution naive_dirac_lambda(const PotentialSet& p, const Eigen::Vector3d& base, Route variant,
                                 const Constants& con, const GaugeOptions& opt = {});

/// Determines the fixing function a route needs by integrating the
/// derivative of its independence condition across the observation region
/// (frozen to zero outside it), normalized to vanish at the base point. The
/// measured independence residuals are recorded; a residual above tolerance
/// throws ("no admissible fixing function").
FixingFunctions solve_fixing_1d(const FieldSet& f, const ObservationRegion& region,
                                const Eigen::Vector3d& base, Route route, const Constants& con,
                                const GaugeOptions& opt = {});
FixingFunctions solve_fixing_2d(const FieldSet& f, const ObservationRegion& region,
                                const Eigen::Vector3d& base, Route route, const Constants& con,
                                const GaugeOptions& opt = {});
FixingFunctions solve_fixing_full(const FieldSet& f, const ObservationRegion& region,
                                  const Eigen::Vector3d& base, const Constants& con,
                                  const GaugeOptions& opt = {});

/// Measured spread of the bracket condition of one candidate fixing function
/// over the observation region (max over reference slices of max-min across
/// the free variable). first_route selects the g-type (true) or h-type
/// bracket.
double fixing_condition_residual(const FieldSet& f, const ObservationRegion& region,
                                 const Eigen::Vector3d& base, DimTag dim, bool first_route,
                                 const std::function<double(double)>& candidate,
                                 const Constants& con, const GaugeOptions& opt = {});

GaugeSolution lambda_1d(const FieldSet& f, const PotentialSet& p, const FixingFunctions& fix,
                        const Eigen::Vector3d& base, Route route, const Constants& con,
                        const GaugeOptions& opt = {});
GaugeSolution lambda_2d_static(const FieldSet& f, const PotentialSet& p,
                               const FixingFunctions& fix, const Eigen::Vector3d& base, Route route,
                               const Constants& con, const GaugeOptions& opt = {});
GaugeSolution lambda_full(const FieldSet& f, const PotentialSet& p, const FixingFunctions& fix,
                          const Eigen::Vector3d& base, Route route, const Constants& con,
                          const GaugeOptions& opt = {});

/// Adds the route's multiplicity constant (tau to first routes, chi to
/// second routes, f to the full routes). Errors on simply connected
/// configurations.
GaugeSolution apply_multiplicity(const GaugeSolution& sol, const Multiplicities& values);

/// Convenience: solve the fixing functions for cfg and assemble the route,
/// wiring base point, breakpoints, connectivity and multiplicities.
GaugeSolution build_route(const ScenarioConfig& cfg, Route route,
                          bool engage_multiplicities = false);

}  // namespace gaugelab
