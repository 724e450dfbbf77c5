#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gaugelab/analysis.hpp"
#include "gaugelab/gauge.hpp"
#include "gaugelab/residual.hpp"
#include "gaugelab/scenario.hpp"
#include "oracles.hpp"

using namespace gaugelab;

namespace {
const Constants kCon{};
}

TEST_CASE("naive form with zero potentials is the constant lambda0") {
  PotentialSet p;
  p.dim = DimTag::OneDDynamic;
  GaugeOptions opt;
  opt.lambda0 = 2.5;
  const GaugeSolution sol =
      naive_dirac_lambda(p, Eigen::Vector3d(0.0, 0.0, 0.0), Route::naive_v1, kCon, opt);
  CHECK(sol.evaluate(0.7, 0.0, 1.3) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(sol.evaluate(0.0, 0.0, 0.0) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("naive form is exact for t-independent A and x-independent phi") {
  PotentialSet p;
  p.dim = DimTag::OneDDynamic;
  p.Ax = [](double x, double, double) { return std::sin(x); };
  p.phi = [](double, double, double t) { return std::cos(t); };
  const GaugeSolution sol =
      naive_dirac_lambda(p, Eigen::Vector3d(0.0, 0.0, 0.0), Route::naive_v1, kCon);
  // fine spacing keeps the stencil truncation below the 1e-6 gate
  const BoxDomain dom(
      {{AxisTag::X, Interval(0.2, 1.0, 401)}, {AxisTag::T, Interval(0.2, 1.0, 401)}});
  const auto rep = pde_residual(sol, p, dom, kCon, 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("naive variants fail with the symbolic residuals of the polynomial demo") {
  const ScenarioConfig cfg = builtin_config("naive_demo_polynomial", {}, kCon);
  const double x0 = cfg.base[0], t0 = cfg.base[2];

  const GaugeSolution v1 = build_route(cfg, Route::naive_v1);
  const GaugeSolution v2 = build_route(cfg, Route::naive_v2);

  const double h = 1e-4;
  for (auto [x, t] : {std::pair{0.8, 0.9}, std::pair{1.4, 0.6}, std::pair{1.9, 1.7}}) {
    // v1: the gradient picks up the x-dependence of the phi integral
    const double d1 =
        central_diff([&](double u) { return v1.evaluate(u, 0.0, t); }, x, h) - x * t;
    CHECK(std::abs(d1) == doctest::Approx(std::abs(x * (t * t - t0 * t0))).epsilon(1e-6));
    // v1 temporal residual: |x^2 - x0^2| / 2
    const double d1t =
        central_diff([&](double u) { return v1.evaluate(x, 0.0, u); }, t, h) + x * x * t;
    CHECK(std::abs(d1t) == doctest::Approx(0.5 * std::abs(x * x - x0 * x0)).epsilon(1e-6));
    // v2: potentials frozen at the base point
    const double d2 =
        central_diff([&](double u) { return v2.evaluate(u, 0.0, t); }, x, h) - x * t;
    CHECK(std::abs(d2) == doctest::Approx(std::abs(x * (t - t0))).epsilon(1e-6));
    const double d2t =
        central_diff([&](double u) { return v2.evaluate(x, 0.0, u); }, t, h) + x * x * t;
    CHECK(std::abs(d2t) == doctest::Approx(t * std::abs(x * x - x0 * x0)).epsilon(1e-6));
  }

  // and pde_residual flags both as failures at the default tolerance
  CHECK_FALSE(pde_residual(v1, cfg.potentials, cfg.domain, kCon, 1e-5).pass);
  CHECK_FALSE(pde_residual(v2, cfg.potentials, cfg.domain, kCon, 1e-5).pass);
}

TEST_CASE("capacitor strip: fixing functions, nonlocal flux and route equality") {
  const ScenarioConfig cfg = builtin_config("vertical_strip_capacitor", {}, kCon);
  const double E0 = cfg.params.at("E0"), a = cfg.params.at("a"), b = cfg.params.at("b");
  const double t0 = cfg.base[2];

  const GaugeSolution first = build_route(cfg, Route::oneD_t_then_x);
  const GaugeSolution second = build_route(cfg, Route::oneD_x_then_t);

  SUBCASE("fixing matches the known pair") {
    REQUIRE(first.fixing().g.has_value());
    REQUIRE(second.fixing().g_hat.has_value());
    const FixingFn& g = *first.fixing().g;
    const FixingFn& ghat = *second.fixing().g_hat;
    for (double x : {1.2, 1.8, 2.6})
      CHECK(std::abs(g(x)) < 1e-10);
    for (double t : {0.5, 1.5, 2.9})
      CHECK(ghat(t) == doctest::Approx(kCon.c * E0 * (b - a) * (t - t0)).epsilon(1e-9));
    CHECK(first.fixing().max_residual() < 1e-9);
  }

  SUBCASE("nonlocal term matches the enclosed spacetime flux") {
    // Riemann-sum oracle for c * double integral of E over the rectangle
    const double ref = oracles::riemann2(
        [&](double t, double x) { return cfg.fields.Ex(x, 0.0, t); }, t0, 3.0, cfg.base[0], 2.0,
        3001);
    CHECK(ref == doctest::Approx(6.0).epsilon(1e-3));
    const auto parts = first.parts(2.0, 0.0, 3.0);
    CHECK(parts.nonlocal == doctest::Approx(6.0).epsilon(1e-6));
  }

  SUBCASE("base normalization") {
    CHECK(first.evaluate(cfg.base[0], 0.0, t0) == doctest::Approx(cfg.lambda0).epsilon(1e-9));
    CHECK(second.evaluate(cfg.base[0], 0.0, t0) == doctest::Approx(cfg.lambda0).epsilon(1e-9));
  }

  SUBCASE("routes agree on the observation grid") {
    const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(41, b + 0.2, b + 2.0);
    const Eigen::ArrayXd ts = Eigen::ArrayXd::LinSpaced(41, 0.0, 3.0);
    const Eigen::MatrixXd d = first.evaluate_grid(xs, ts) - second.evaluate_grid(xs, ts);
    CHECK(d.array().abs().maxCoeff() < 1e-6);
  }

  SUBCASE("scalar and grid evaluation agree") {
    const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(5, b + 0.2, b + 2.0);
    const Eigen::ArrayXd ts = Eigen::ArrayXd::LinSpaced(5, 0.0, 3.0);
    const Eigen::MatrixXd g = first.evaluate_grid(xs, ts);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        CHECK(g(i, j) == doctest::Approx(first.evaluate(xs[i], 0.0, ts[j])).epsilon(1e-9));
  }

  SUBCASE("defining system satisfied on the default grid") {
    BoxDomain dom = cfg.domain;
    for (auto& ax : dom.axes) ax.iv.n = 101;
    CHECK(pde_residual(first, cfg.potentials, dom, kCon, 1e-5).pass);
    CHECK(pde_residual(second, cfg.potentials, dom, kCon, 1e-5).pass);
  }
}

TEST_CASE("temporal strip: fixing pair swaps roles") {
  const ScenarioConfig cfg = builtin_config("temporal_strip", {}, kCon);
  const double E0 = cfg.params.at("E0"), T = cfg.params.at("T");
  const double x0 = cfg.base[0];

  const GaugeSolution first = build_route(cfg, Route::oneD_t_then_x);
  const GaugeSolution second = build_route(cfg, Route::oneD_x_then_t);

  const FixingFn& g = *first.fixing().g;
  const FixingFn& ghat = *second.fixing().g_hat;
  for (double x : {-0.5, 0.4, 1.7})
    CHECK(g(x) == doctest::Approx(-kCon.c * E0 * T * (x - x0)).epsilon(1e-9));
  for (double t : {1.3, 2.1, 2.8})
    CHECK(std::abs(ghat(t)) < 1e-10);

  const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(31, -1.0, 2.0);
  const Eigen::ArrayXd ts = Eigen::ArrayXd::LinSpaced(31, T + 0.2, T + 2.0);
  const Eigen::MatrixXd d = first.evaluate_grid(xs, ts) - second.evaluate_grid(xs, ts);
  CHECK(d.array().abs().maxCoeff() < 1e-6);
}

TEST_CASE("pure gauge potentials recover the gauge function") {
  // A = d(chi)/dx, phi = -(1/c) d(chi)/dt with chi = sin(x) cos(t): E = 0
  PotentialSet p;
  p.dim = DimTag::OneDDynamic;
  p.Ax = [](double x, double, double t) { return std::cos(x) * std::cos(t); };
  p.phi = [](double x, double, double t) { return std::sin(x) * std::sin(t); };
  FieldSet f;  // identically zero E

  auto chi = [](double x, double t) { return std::sin(x) * std::cos(t); };
  const Eigen::Vector3d base(-0.3, 0.0, 0.2);
  ObservationRegion region(Interval(-1.0, 2.0), Interval(-1.0, 2.0));
  GaugeOptions opt;
  opt.lambda0 = 1.0;

  for (Route r : {Route::oneD_t_then_x, Route::oneD_x_then_t}) {
    const FixingFunctions fix = solve_fixing_1d(f, region, base, r, kCon, opt);
    const GaugeSolution sol = lambda_1d(f, p, fix, base, r, kCon, opt);
    for (auto [x, t] : {std::pair{0.5, 1.0}, std::pair{-0.8, 1.9}, std::pair{1.7, -0.4}})
      CHECK(sol.evaluate(x, 0.0, t) ==
            doctest::Approx(chi(x, t) - chi(base[0], base[2]) + 1.0).epsilon(1e-6));
  }
}

TEST_CASE("no admissible fixing function when observing inside the strip") {
  const ScenarioConfig cfg = builtin_config("vertical_strip_capacitor", {}, kCon);
  ObservationRegion bad(Interval(-0.5, 2.0), Interval(0.0, 3.0));  // spans the strip
  GaugeOptions opt;
  if (cfg.x_breaks) opt.u_breaks = [xb = cfg.x_breaks](double t) { return xb(0.0, t); };
  CHECK_THROWS_WITH_AS(solve_fixing_1d(cfg.fields, bad, cfg.base, Route::oneD_t_then_x, kCon, opt),
                       doctest::Contains("no admissible fixing function"), std::runtime_error);

  // the polynomial demo has nonzero E at every observation point, so the
  // generalized routes are inadmissible there as well
  const ScenarioConfig demo = builtin_config("naive_demo_polynomial", {}, kCon);
  CHECK_THROWS_WITH_AS(build_route(demo, Route::oneD_t_then_x),
                       doctest::Contains("no admissible fixing function"), std::runtime_error);
}

TEST_CASE("electric cages: multiplicities restore the standard phase") {
  const ScenarioConfig cfg = builtin_config("electric_ab_cages", {}, kCon);
  const double V0 = cfg.params.at("V0"), T = cfg.params.at("T");
  const double expect = kCon.c * V0 * T;

  const GaugeSolution bare1 = build_route(cfg, Route::oneD_t_then_x, false);
  const GaugeSolution bare2 = build_route(cfg, Route::oneD_x_then_t, false);
  const GaugeSolution s1 = apply_multiplicity(bare1, *cfg.multiplicity_values);
  const GaugeSolution s2 = apply_multiplicity(bare2, *cfg.multiplicity_values);

  const Eigen::Vector3d pt(1.5, 0.0, 2.5);
  const auto reps = solution_difference(s1, s2, {pt});
  CHECK(reps[0].delta_lambda() == doctest::Approx(expect).epsilon(1e-6));

  // with the constants engaged each route reduces to its plain potential
  // integral: the first route sees the zero-potential cage
  CHECK(s1.evaluate(pt[0], pt[1], pt[2]) == doctest::Approx(cfg.lambda0).epsilon(1e-6));
  CHECK(s2.evaluate(pt[0], pt[1], pt[2]) ==
        doctest::Approx(cfg.lambda0 - expect).epsilon(1e-6));

  // zero multiplicities are the identity
  const GaugeSolution id = apply_multiplicity(bare1, Multiplicities{});
  CHECK(id.evaluate(pt[0], pt[1], pt[2]) ==
        doctest::Approx(bare1.evaluate(pt[0], pt[1], pt[2])).epsilon(1e-12));
}

TEST_CASE("apply_multiplicity rejects simply connected configurations") {
  const ScenarioConfig cfg = builtin_config("vertical_strip_capacitor", {}, kCon);
  const GaugeSolution sol = build_route(cfg, Route::oneD_t_then_x);
  CHECK_THROWS_AS(apply_multiplicity(sol, Multiplicities{1.0, -1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("route/dimension validation") {
  PotentialSet p;
  p.dim = DimTag::TwoDStatic;
  CHECK_THROWS_AS(naive_dirac_lambda(p, Eigen::Vector3d::Zero(), Route::naive_v1, kCon),
                  std::invalid_argument);
  FieldSet f;
  FixingFunctions fix;
  CHECK_THROWS_AS(lambda_1d(f, p, fix, Eigen::Vector3d::Zero(), Route::oneD_t_then_x, kCon),
                  std::invalid_argument);
  PotentialSet p1;
  p1.dim = DimTag::OneDDynamic;
  // missing fixing function
  CHECK_THROWS_AS(lambda_1d(f, p1, fix, Eigen::Vector3d::Zero(), Route::oneD_t_then_x, kCon),
                  std::invalid_argument);
}
