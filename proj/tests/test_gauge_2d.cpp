#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaugelab/analysis.hpp"
#include "gaugelab/gauge.hpp"
#include "gaugelab/residual.hpp"
#include "gaugelab/scenario.hpp"
#include "oracles.hpp"

using namespace gaugelab;

namespace {
const Constants kCon{};
constexpr double kSqrt3 = std::numbers::sqrt3;
}

TEST_CASE("pure gauge planar potentials recover the gauge function") {
  // A = grad(chi) with chi = x^2 y + sin(y): B = 0
  PotentialSet p;
  p.dim = DimTag::TwoDStatic;
  p.Ax = [](double x, double y, double) { return 2.0 * x * y; };
  p.Ay = [](double x, double y, double) { return x * x + std::cos(y); };
  FieldSet f;

  auto chi = [](double x, double y) { return x * x * y + std::sin(y); };
  const Eigen::Vector3d base(0.1, -0.4, 0.0);
  ObservationRegion region(Interval(-1.0, 1.5), Interval(-1.0, 1.5));
  GaugeOptions opt;

  for (Route r : {Route::twoD_route1, Route::twoD_route2}) {
    const FixingFunctions fix = solve_fixing_2d(f, region, base, r, kCon, opt);
    const GaugeSolution sol = lambda_2d_static(f, p, fix, base, r, kCon, opt);
    for (auto [x, y] : {std::pair{0.9, 1.2}, std::pair{-0.7, 0.3}})
      CHECK(sol.evaluate(x, y, 0.0) ==
            doctest::Approx(chi(x, y) - chi(base[0], base[1])).epsilon(1e-6));
  }
}

TEST_CASE("triangle patch: fixing functions and route equality right of it") {
  const ScenarioConfig cfg = builtin_config("triangle_B", {}, kCon);
  const double B0 = cfg.params.at("B"), a = cfg.params.at("a");
  const double h_t = TriangleGeometry{a}.height();

  const GaugeSolution r1 = build_route(cfg, Route::twoD_route1);
  const GaugeSolution r2 = build_route(cfg, Route::twoD_route2);

  SUBCASE("fixing: g vanishes, h accumulates the flux below y") {
    const FixingFn& g = *r1.fixing().g;
    const FixingFn& h = *r2.fixing().h;
    for (double x : {2.3, 3.0, 3.9}) CHECK(std::abs(g(x)) < 1e-10);
    // flux of the triangle below height y: B (a y - y^2 / sqrt(3))
    for (double y : {0.3, 0.9, 1.5})
      CHECK(h(y) == doctest::Approx(B0 * (a * y - y * y / kSqrt3)).epsilon(1e-8));
    CHECK(h(h_t + 0.2) == doctest::Approx(B0 * kSqrt3 * a * a / 4.0).epsilon(1e-8));
  }

  SUBCASE("route equality and defining system") {
    const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(41, a + 0.2, a + 2.0);
    const Eigen::ArrayXd ys = Eigen::ArrayXd::LinSpaced(41, 0.15, h_t - 0.15);
    const Eigen::MatrixXd d = r1.evaluate_grid(xs, ys) - r2.evaluate_grid(xs, ys);
    CHECK(d.array().abs().maxCoeff() < 1e-6);

    BoxDomain dom = cfg.domain;
    for (auto& ax : dom.axes) ax.iv.n = 101;
    CHECK(pde_residual(r1, cfg.potentials, dom, kCon, 1e-5).pass);
    CHECK(pde_residual(r2, cfg.potentials, dom, kCon, 1e-5).pass);
  }

  SUBCASE("circuit term and nonlocal term cancel nontrivially") {
    const Eigen::Vector3d pt(a + 1.0, 1.2, 0.0);
    const auto reps = solution_difference(r1, r2, {pt});
    CHECK(std::abs(reps[0].ab_term) > 0.1);
    CHECK(std::abs(reps[0].nonlocal_term) > 0.1);
    CHECK(reps[0].ab_term == doctest::Approx(-reps[0].nonlocal_term).epsilon(1e-5));
    CHECK(std::abs(reps[0].delta_lambda()) < 1e-5 * (std::abs(reps[0].ab_term) + 1.0));
  }

  SUBCASE("base normalization") {
    CHECK(r1.evaluate(cfg.base[0], cfg.base[1], 0.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r2.evaluate(cfg.base[0], cfg.base[1], 0.0) == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("observation rectangle containing the whole triangle sees the total flux") {
    // nonlocal part of the first route is the enclosed flux (g vanishes)
    const auto parts = r1.parts(a + 1.5, h_t + 0.2, 0.0);
    const double total = B0 * kSqrt3 * a * a / 4.0;
    CHECK(parts.nonlocal == doctest::Approx(total).epsilon(1e-4));
  }
}

TEST_CASE("triangle band placement validates the closed-form fixing functions") {
  const ScenarioConfig cfg = builtin_config("triangle_B", {}, kCon);
  const double B0 = cfg.params.at("B"), a = cfg.params.at("a");
  const ObservationRegion band = triangle_band_region(a);

  // the closed forms known to satisfy the independence conditions there
  auto g_closed = [=](double x) {
    return B0 * (-(kSqrt3 * a * x - 0.5 * kSqrt3 * x * x) + kSqrt3 * a * a / 4.0);
  };
  auto h_closed = [=](double y) {
    return B0 * ((a * y - y * y / kSqrt3) - kSqrt3 * a * a / 4.0);
  };

  GaugeOptions opt;
  opt.u_breaks = [xb = cfg.x_breaks](double y) { return xb(y, 0.0); };
  opt.v_breaks = [yb = cfg.y_breaks](double x) { return yb(x, 0.0); };

  SUBCASE("bracket independence of the printed forms") {
    const double rg = fixing_condition_residual(cfg.fields, band, cfg.base, DimTag::TwoDStatic,
                                                true, g_closed, kCon, opt);
    const double rh = fixing_condition_residual(cfg.fields, band, cfg.base, DimTag::TwoDStatic,
                                                false, h_closed, kCon, opt);
    CHECK(rg < 1e-4);
    CHECK(rh < 1e-4);
  }

  SUBCASE("solved fixing functions match up to an additive constant") {
    const FixingFunctions f1 =
        solve_fixing_2d(cfg.fields, band, cfg.base, Route::twoD_route1, kCon, opt);
    const FixingFunctions f2 =
        solve_fixing_2d(cfg.fields, band, cfg.base, Route::twoD_route2, kCon, opt);
    const FixingFn& g = *f1.g;
    const FixingFn& h = *f2.h;

    const double cg = g(0.5 * (band.x.lo + band.x.hi)) - g_closed(0.5 * (band.x.lo + band.x.hi));
    const double ch = h(0.5 * (band.yt.lo + band.yt.hi)) - h_closed(0.5 * (band.yt.lo + band.yt.hi));
    double worst = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double x = band.x.lo + (band.x.hi - band.x.lo) * i / 32.0;
      const double y = band.yt.lo + (band.yt.hi - band.yt.lo) * i / 32.0;
      worst = std::max(worst, std::abs(g(x) - g_closed(x) - cg));
      worst = std::max(worst, std::abs(h(y) - h_closed(y) - ch));
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("flux tube: multiplicities restore the enclosed-flux difference") {
  const ScenarioConfig cfg = builtin_config("magnetic_ab_flux_tube", {}, kCon);
  const double Phi = cfg.params.at("Phi");

  const GaugeSolution r1 = build_route(cfg, Route::twoD_route1, true);
  const GaugeSolution r2 = build_route(cfg, Route::twoD_route2, true);

  const Eigen::Vector3d pt(1.5, 1.5, 0.0);
  const auto reps = solution_difference(r1, r2, {pt});
  CHECK(reps[0].delta_lambda() == doctest::Approx(Phi).epsilon(1e-6));
  // the bare routes are plain potential-path integrals around the two sides
  CHECK(reps[0].ab_term == doctest::Approx(-Phi).epsilon(1e-6));
  CHECK(std::abs(reps[0].nonlocal_term) < 1e-9);
  CHECK(reps[0].multiplicity_term == doctest::Approx(2.0 * Phi).epsilon(1e-12));

  // the 1/r potentials need the full default spacing for the 1e-5 stencil gate
  CHECK(pde_residual(r1, cfg.potentials, cfg.domain, kCon, 1e-5).pass);
  CHECK(pde_residual(r2, cfg.potentials, cfg.domain, kCon, 1e-5).pass);
}

TEST_CASE("flux tube potentials are undefined inside the core") {
  const ScenarioConfig cfg = builtin_config("magnetic_ab_flux_tube", {}, kCon);
  CHECK_THROWS_AS(cfg.potentials.Ax(0.01, 0.0, 0.0), std::runtime_error);
}
