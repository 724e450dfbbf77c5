#include "gaugelab/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gaugelab {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::string& scenario, const std::map<std::string, double>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::invalid_argument("builtin_config(" + scenario + "): unknown parameter '" + key +
                                  "'");
  }
}

double clamp01(double u) { return u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u); }

}  // namespace

double smoothstep5(double u) {
  u = clamp01(u);
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smoothstep5_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double w = u * (1.0 - u);
  return 30.0 * w * w;
}

ObservationRegion triangle_band_region(double side, double margin) {
  TriangleGeometry tri{side};
  const double h = tri.height();
  ObservationRegion region(Interval(0.5 * side + margin, side - margin, 101),
                           Interval(kSqrt3 * margin, h, 101));
  region.contains = [side](double x, double y) { return y >= kSqrt3 * (side - x) - 1e-12; };
  // Bracket references sit at the far corner of the band: beyond the right
  // edge in x, at the apex height in y, so the chord integrals saturate.
  region.x_ref = side;
  region.yt_ref = h;
  return region;
}

namespace {

ScenarioConfig make_capacitor(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("vertical_strip_capacitor", params, {"E0", "a", "b"});
  const double E0 = get_param(params, "E0", 2.0);
  const double a = get_param(params, "a", 0.0);
  const double b = get_param(params, "b", 1.0);
  if (!(a < b))
    throw std::invalid_argument("vertical_strip_capacitor: requires a < b (got a=" +
                                std::to_string(a) + ", b=" + std::to_string(b) + ")");

  ScenarioConfig cfg;
  cfg.name = "vertical_strip_capacitor";
  cfg.params = {{"E0", E0}, {"a", a}, {"b", b}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::OneDDynamic;
  cfg.potentials.phi = [=](double x, double, double) {
    return -E0 * (x < a ? 0.0 : (x > b ? b - a : x - a));
  };
  PotentialDerivs d;
  d.dAx_dt = zero_field();
  d.dAy_dt = zero_field();
  d.dAx_dy = zero_field();
  d.dAy_dx = zero_field();
  d.dphi_dy = zero_field();
  d.dphi_dx = [=](double x, double, double) { return (x > a && x < b) ? -E0 : 0.0; };
  cfg.potentials.derivs = d;
  cfg.fields.Ex = [=](double x, double, double) { return (x >= a && x <= b) ? E0 : 0.0; };

  cfg.base = {a - 1.0, 0.0, 0.0};
  cfg.domain = BoxDomain({{AxisTag::X, Interval(b + 0.2, b + 2.0)}, {AxisTag::T, Interval(0.0, 3.0)}});
  cfg.obs = ObservationRegion(Interval(b + 0.05, b + 2.0), Interval(0.0, 3.0));
  cfg.x_breaks = [=](double, double) { return Breaks{a, b}; };
  cfg.description = "static E-field strip a<=x<=b; observation right of the strip";
  return cfg;
}

ScenarioConfig make_temporal_strip(const std::map<std::string, double>& params,
                                   const Constants& con) {
  reject_unknown("temporal_strip", params, {"E0", "T"});
  const double E0 = get_param(params, "E0", 1.0);
  const double T = get_param(params, "T", 1.0);
  if (!(T > 0.0)) throw std::invalid_argument("temporal_strip: requires T > 0");
  const double c = con.c;

  ScenarioConfig cfg;
  cfg.name = "temporal_strip";
  cfg.params = {{"E0", E0}, {"T", T}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::OneDDynamic;
  cfg.potentials.Ax = [=](double, double, double t) {
    return -c * E0 * (t < 0.0 ? 0.0 : (t > T ? T : t));
  };
  PotentialDerivs d;
  d.dAx_dt = [=](double, double, double t) { return (t > 0.0 && t < T) ? -c * E0 : 0.0; };
  d.dAy_dt = zero_field();
  d.dAx_dy = zero_field();
  d.dAy_dx = zero_field();
  d.dphi_dx = zero_field();
  d.dphi_dy = zero_field();
  cfg.potentials.derivs = d;
  cfg.fields.Ex = [=](double, double, double t) { return (t >= 0.0 && t <= T) ? E0 : 0.0; };

  cfg.base = {-1.0, 0.0, -0.5};
  cfg.domain =
      BoxDomain({{AxisTag::X, Interval(-1.0, 2.0)}, {AxisTag::T, Interval(T + 0.2, T + 2.0)}});
  cfg.obs = ObservationRegion(Interval(-1.0, 2.0), Interval(T + 0.05, T + 2.0));
  cfg.t_breaks = [=](double, double) { return Breaks{0.0, T}; };
  cfg.description = "uniform E-field pulse of duration T; observation after the pulse";
  return cfg;
}

ScenarioConfig make_triangle(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("triangle_B", params, {"B", "a"});
  const double B0 = get_param(params, "B", 1.0);
  const double a = get_param(params, "a", 2.0);
  if (!(a > 0.0)) throw std::invalid_argument("triangle_B: requires a > 0");
  TriangleGeometry tri{a};
  const double h = tri.height();

  ScenarioConfig cfg;
  cfg.name = "triangle_B";
  cfg.params = {{"B", B0}, {"a", a}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::TwoDStatic;
  // A_y(x, y) integrates B along the chord left of x, so curl A = B inside.
  cfg.potentials.Ay = [=](double x, double y, double) {
    if (y < 0.0 || y > h) return 0.0;
    const double lo = tri.chord_lo(y), hi = tri.chord_hi(y);
    const double w = std::min(x, hi) - lo;
    return w > 0.0 ? B0 * w : 0.0;
  };
  PotentialDerivs d;
  d.dAx_dt = zero_field();
  d.dAy_dt = zero_field();
  d.dAx_dy = zero_field();
  d.dphi_dx = zero_field();
  d.dphi_dy = zero_field();
  d.dAy_dx = [=](double x, double y, double) { return tri.inside(x, y) ? B0 : 0.0; };
  cfg.potentials.derivs = d;
  cfg.fields.B = [=](double x, double y, double) { return tri.inside(x, y) ? B0 : 0.0; };

  cfg.base = {-0.5, -0.5, 0.0};
  cfg.domain = BoxDomain(
      {{AxisTag::X, Interval(a + 0.2, a + 2.0)}, {AxisTag::Y, Interval(0.15, h - 0.15)}});
  cfg.obs = ObservationRegion(Interval(a + 0.05, a + 2.0), Interval(-0.5, h + 0.3));
  cfg.x_breaks = [=](double y, double) {
    if (y <= 0.0 || y >= h) return Breaks{};
    return Breaks{tri.chord_lo(y), tri.chord_hi(y)};
  };
  cfg.y_breaks = [=](double x, double) { return Breaks{0.0, kSqrt3 * x, kSqrt3 * (a - x), h}; };
  cfg.description = "uniform B inside an equilateral triangle; observation right of it";
  return cfg;
}

ScenarioConfig make_flux_tube(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("magnetic_ab_flux_tube", params, {"Phi", "R"});
  const double Phi = get_param(params, "Phi", 1.0);
  const double R = get_param(params, "R", 0.1);
  if (!(R > 0.0)) throw std::invalid_argument("magnetic_ab_flux_tube: requires R > 0");
  const double twopi = 2.0 * std::numbers::pi;

  auto check_outside = [=](double x, double y) {
    const double r2 = x * x + y * y;
    if (r2 < R * R)
      throw std::runtime_error(
          "magnetic_ab_flux_tube: potential evaluated inside the inaccessible core at x=" +
          std::to_string(x) + ", y=" + std::to_string(y));
    return r2;
  };

  ScenarioConfig cfg;
  cfg.name = "magnetic_ab_flux_tube";
  cfg.params = {{"Phi", Phi}, {"R", R}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::TwoDStatic;
  cfg.potentials.Ax = [=](double x, double y, double) { return -Phi * y / (twopi * check_outside(x, y)); };
  cfg.potentials.Ay = [=](double x, double y, double) { return Phi * x / (twopi * check_outside(x, y)); };
  PotentialDerivs d;
  d.dAx_dt = zero_field();
  d.dAy_dt = zero_field();
  d.dphi_dx = zero_field();
  d.dphi_dy = zero_field();
  d.dAy_dx = [=](double x, double y, double) {
    const double r2 = check_outside(x, y);
    return Phi * (r2 - 2.0 * x * x) / (twopi * r2 * r2);
  };
  d.dAx_dy = [=](double x, double y, double) {
    const double r2 = check_outside(x, y);
    return -Phi * (r2 - 2.0 * y * y) / (twopi * r2 * r2);
  };
  cfg.potentials.derivs = d;
  // All of the flux is confined to the core; the accessible region is field-free.
  cfg.fields.B = zero_field();
  cfg.fields.core = CoreSpec{0.0, 0.0, R, [=](double) { return Phi; }};

  cfg.connectivity = Connectivity::Multiple;
  cfg.multiplicity_values = Multiplicities{Phi, -Phi, 0.0};
  cfg.base = {-2.0, -2.0, 0.0};
  cfg.domain =
      BoxDomain({{AxisTag::X, Interval(0.5, 2.0)}, {AxisTag::Y, Interval(0.5, 2.0)}});
  cfg.obs = ObservationRegion(Interval(0.5, 2.0), Interval(0.5, 2.0));
  cfg.description = "inaccessible flux tube at the origin; multiply-connected plane";
  return cfg;
}

ScenarioConfig make_cages(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("electric_ab_cages", params, {"V0", "T", "wall_lo", "wall_hi"});
  const double V0 = get_param(params, "V0", 1.0);
  const double T = get_param(params, "T", 1.0);
  const double w_lo = get_param(params, "wall_lo", -0.2);
  const double w_hi = get_param(params, "wall_hi", 0.2);
  if (!(T > 0.0)) throw std::invalid_argument("electric_ab_cages: requires T > 0");
  if (!(w_lo < w_hi)) throw std::invalid_argument("electric_ab_cages: requires wall_lo < wall_hi");
  const double c = con.c;
  const double ww = w_hi - w_lo;

  auto s = [=](double x) { return smoothstep5((x - w_lo) / ww); };
  auto s_prime = [=](double x) { return smoothstep5_deriv((x - w_lo) / ww) / ww; };
  auto V = [=](double t) { return (t >= 0.0 && t <= T) ? V0 : 0.0; };

  ScenarioConfig cfg;
  cfg.name = "electric_ab_cages";
  cfg.params = {{"V0", V0}, {"T", T}, {"wall_lo", w_lo}, {"wall_hi", w_hi}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::OneDDynamic;
  cfg.potentials.phi = [=](double x, double, double t) { return V(t) * s(x); };
  PotentialDerivs d;
  d.dAx_dt = zero_field();
  d.dAy_dt = zero_field();
  d.dAx_dy = zero_field();
  d.dAy_dx = zero_field();
  d.dphi_dy = zero_field();
  d.dphi_dx = [=](double x, double, double t) { return V(t) * s_prime(x); };
  cfg.potentials.derivs = d;
  cfg.fields.Ex = [=](double x, double, double t) { return -V(t) * s_prime(x); };

  cfg.connectivity = Connectivity::Multiple;
  // tau = -chi = enclosed "electric flux" of the wall region in spacetime.
  cfg.multiplicity_values = Multiplicities{c * V0 * T, -c * V0 * T, 0.0};
  cfg.base = {w_lo - 1.8, 0.0, -1.0};
  cfg.domain =
      BoxDomain({{AxisTag::X, Interval(w_hi + 0.3, w_hi + 1.8)}, {AxisTag::T, Interval(T + 0.05, 3.0)}});
  cfg.obs = ObservationRegion(Interval(w_hi + 0.3, w_hi + 1.8), Interval(T + 0.05, 3.0));
  cfg.x_breaks = [=](double, double) { return Breaks{w_lo, w_hi}; };
  cfg.t_breaks = [=](double, double) { return Breaks{0.0, T}; };
  cfg.description = "two cages at potentials differing by V0 during T; wall inaccessible";
  return cfg;
}

ScenarioConfig make_van_kampen(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("van_kampen_solenoid", params, {"Phi0", "Phi1", "t_switch", "ramp", "R"});
  const double Phi0 = get_param(params, "Phi0", 1.0);
  const double Phi1 = get_param(params, "Phi1", 2.0);
  const double ts = get_param(params, "t_switch", 5.0);
  const double Tr = get_param(params, "ramp", 1.0);
  const double R = get_param(params, "R", 0.1);
  if (!(Tr > 0.0)) throw std::invalid_argument("van_kampen_solenoid: requires ramp > 0");
  if (!(R > 0.0)) throw std::invalid_argument("van_kampen_solenoid: requires R > 0");
  const double c = con.c;
  const double twopi = 2.0 * std::numbers::pi;

  // Confined flux schedule and its causal propagation: the flux seen by a
  // loop of radius r lags by the light travel time r/c, which puts all field
  // activity on an outgoing annular shell and keeps everything outside the
  // wavefront strictly field-free.
  auto flux = [=](double t) { return Phi0 + (Phi1 - Phi0) * smoothstep5((t - ts) / Tr); };
  auto flux_rate = [=](double t) { return (Phi1 - Phi0) * smoothstep5_deriv((t - ts) / Tr) / Tr; };

  // Potentials are undefined in the core; field samples inside it read as
  // zero (the confined flux only enters through the declared core schedule).
  auto radius = [=](double x, double y) {
    const double r = std::hypot(x, y);
    if (r < R)
      throw std::runtime_error(
          "van_kampen_solenoid: evaluated inside the solenoid core at x=" + std::to_string(x) +
          ", y=" + std::to_string(y));
    return r;
  };

  ScenarioConfig cfg;
  cfg.name = "van_kampen_solenoid";
  cfg.params = {{"Phi0", Phi0}, {"Phi1", Phi1}, {"t_switch", ts}, {"ramp", Tr}, {"R", R}};
  cfg.con = con;
  cfg.potentials.dim = DimTag::TwoPlusOneD;
  cfg.potentials.Ax = [=](double x, double y, double t) {
    const double r = radius(x, y);
    return -flux(t - r / c) * y / (twopi * r * r);
  };
  cfg.potentials.Ay = [=](double x, double y, double t) {
    const double r = radius(x, y);
    return flux(t - r / c) * x / (twopi * r * r);
  };
  cfg.fields.Ex = [=](double x, double y, double t) {
    const double r = std::hypot(x, y);
    if (r < R) return 0.0;
    return flux_rate(t - r / c) * y / (twopi * r * r * c);
  };
  cfg.fields.Ey = [=](double x, double y, double t) {
    const double r = std::hypot(x, y);
    if (r < R) return 0.0;
    return -flux_rate(t - r / c) * x / (twopi * r * r * c);
  };
  cfg.fields.B = [=](double x, double y, double t) {
    const double r = std::hypot(x, y);
    if (r < R) return 0.0;
    return -flux_rate(t - r / c) / (twopi * r * c);
  };
  cfg.fields.core = CoreSpec{0.0, 0.0, R, [=](double t) { return flux(t - R / c); }};
  cfg.fields.radial_breaks = [=](double t) {
    return Breaks{c * (t - ts - Tr), c * (t - ts)};
  };

  cfg.base = {-12.0, -12.0, 0.0};
  cfg.domain = BoxDomain({{AxisTag::X, Interval(6.0, 12.0, 25)},
                          {AxisTag::Y, Interval(6.0, 12.0, 25)},
                          {AxisTag::T, Interval(0.0, 10.5, 25)}});
  cfg.obs = ObservationRegion(Interval(6.0, 12.0), Interval(6.0, 12.0));
  cfg.obs.t = Interval(0.0, 10.5);
  cfg.t_breaks = [=](double x, double y) {
    const double r = std::hypot(x, y);
    return Breaks{ts + r / c, ts + Tr + r / c};
  };
  cfg.description = "confined flux ramped at t_switch; exterior fields propagate causally";
  return cfg;
}

ScenarioConfig make_naive_demo(const std::map<std::string, double>& params, const Constants& con) {
  reject_unknown("naive_demo_polynomial", params, {});
  const double c = con.c;

  ScenarioConfig cfg;
  cfg.name = "naive_demo_polynomial";
  cfg.params = {};
  cfg.con = con;
  cfg.potentials.dim = DimTag::OneDDynamic;
  cfg.potentials.Ax = [](double x, double, double t) { return x * t; };
  cfg.potentials.phi = [](double x, double, double t) { return x * x * t; };
  PotentialDerivs d;
  d.dAx_dt = [](double x, double, double) { return x; };
  d.dphi_dx = [](double x, double, double t) { return 2.0 * x * t; };
  d.dAy_dt = zero_field();
  d.dAx_dy = zero_field();
  d.dAy_dx = zero_field();
  d.dphi_dy = zero_field();
  cfg.potentials.derivs = d;
  cfg.fields.Ex = [=](double x, double, double t) { return -2.0 * x * t - x / c; };

  cfg.base = {0.25, 0.0, 0.25};
  cfg.domain =
      BoxDomain({{AxisTag::X, Interval(0.5, 2.0)}, {AxisTag::T, Interval(0.5, 2.0)}});
  cfg.obs = ObservationRegion(Interval(0.5, 2.0), Interval(0.5, 2.0));
  cfg.description = "polynomial A, phi with correlated x-t dependence; breaks the combined "
                    "potential-integral form";
  return cfg;
}

}  // namespace

ScenarioConfig builtin_config(const std::string& name, const std::map<std::string, double>& params,
                              const Constants& con) {
  con.validate();
  if (name == "vertical_strip_capacitor") return make_capacitor(params, con);
  if (name == "temporal_strip") return make_temporal_strip(params, con);
  if (name == "triangle_B") return make_triangle(params, con);
  if (name == "magnetic_ab_flux_tube") return make_flux_tube(params, con);
  if (name == "electric_ab_cages") return make_cages(params, con);
  if (name == "van_kampen_solenoid") return make_van_kampen(params, con);
  if (name == "naive_demo_polynomial") return make_naive_demo(params, con);
  throw std::invalid_argument("builtin_config: unknown scenario '" + name + "'");
}

std::vector<ScenarioInfo> list_scenarios() {
  return {
      {"vertical_strip_capacitor", "E0, a, b",
       "static E strip; both 1-D routes, route equality, flux cancellation"},
      {"temporal_strip", "E0, T",
       "finite-duration uniform E; both 1-D routes, route equality"},
      {"triangle_B", "B, a",
       "triangular B patch; planar routes, closed-form fixing functions, cancellation"},
      {"magnetic_ab_flux_tube", "Phi, R",
       "confined flux tube; multiplicities restore the enclosed-flux route difference"},
      {"electric_ab_cages", "V0, T, wall_lo, wall_hi",
       "cage potential pulse; multiplicities restore the standard electric phase"},
      {"van_kampen_solenoid", "Phi0, Phi1, t_switch, ramp, R",
       "flux switched on late; causal exterior fields keep the early phase fixed"},
      {"naive_demo_polynomial", "(none)",
       "expected-fail demonstration of the combined potential-integral form"},
  };
}

}  // namespace gaugelab
