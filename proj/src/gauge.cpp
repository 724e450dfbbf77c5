#include "gaugelab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gaugelab {

std::string route_name(Route r) {
  switch (r) {
    case Route::naive_v1: return "naive_v1";
    case Route::naive_v2: return "naive_v2";
    case Route::oneD_t_then_x: return "oneD_t_then_x";
    case Route::oneD_x_then_t: return "oneD_x_then_t";
    case Route::twoD_route1: return "twoD_route1";
    case Route::twoD_route2: return "twoD_route2";
    case Route::full_primary: return "full_primary";
    case Route::full_dual: return "full_dual";
  }
  return "?";
}

Route route_from_name(const std::string& name) {
  for (Route r : {Route::naive_v1, Route::naive_v2, Route::oneD_t_then_x, Route::oneD_x_then_t,
                  Route::twoD_route1, Route::twoD_route2, Route::full_primary, Route::full_dual})
    if (route_name(r) == name) return r;
  throw std::invalid_argument("unknown route '" + name + "'");
}

namespace {

bool is_first_route(Route r) {
  return r == Route::oneD_t_then_x || r == Route::twoD_route1 || r == Route::full_primary;
}
bool is_naive(Route r) { return r == Route::naive_v1 || r == Route::naive_v2; }

double signed_line(const Fn1& f, double from, double to, int n, const Breaks& breaks) {
  return integrate_line_signed(f, from, to, n, breaks);
}

Breaks merge_breaks(std::initializer_list<Breaks> lists) {
  Breaks out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Fine-axis cumulative machinery shared by the grid evaluators: a sorted
// anchor chain subdivided m times per gap, integrated gap-by-gap with the
// composite Simpson rule over the fine values. Each gap owns its m+1 sample
// positions with the end ones nudged inward, so a jump sitting on an anchor
// integrates its one-sided limits.

struct FineAxis {
  std::vector<double> anchors;        // strictly increasing
  std::vector<int> m;                 // even subdivision count per gap
  std::vector<Eigen::Index> offset;   // start of each gap's (m+1)-value block
  Eigen::ArrayXd fine;                // sample positions, gap blocks concatenated

  Eigen::Index fine_index(std::size_t gap, int k) const { return offset[gap] + k; }
};

FineAxis make_fine_axis(std::vector<double> anchors, int m) {
  if (m % 2 != 0) ++m;
  std::sort(anchors.begin(), anchors.end());
  std::vector<double> uniq;
  const double span = anchors.back() - anchors.front();
  const double tol = std::max(1e-13 * std::max(1.0, std::abs(span)), 1e-300);
  for (double a : anchors)
    if (uniq.empty() || a - uniq.back() > tol) uniq.push_back(a);
  FineAxis ax;
  ax.anchors = std::move(uniq);
  const std::size_t gaps = ax.anchors.size() - 1;

  // typical gap: wide ones (e.g. base point to the grid) subdivide deeper
  std::vector<double> widths(gaps);
  for (std::size_t g = 0; g < gaps; ++g) widths[g] = ax.anchors[g + 1] - ax.anchors[g];
  std::vector<double> sorted = widths;
  std::sort(sorted.begin(), sorted.end());
  const double ref_gap = std::max(sorted[gaps / 2], 1e-300);

  Eigen::Index total = 0;
  ax.m.resize(gaps);
  ax.offset.resize(gaps);
  for (std::size_t g = 0; g < gaps; ++g) {
    int scale = static_cast<int>(std::min(4096.0, std::ceil(widths[g] / ref_gap)));
    int mg = m * std::max(1, scale);
    if (mg % 2 != 0) ++mg;
    ax.m[g] = mg;
    ax.offset[g] = total;
    total += mg + 1;
  }
  ax.fine.resize(total);
  for (std::size_t g = 0; g < gaps; ++g) {
    const double a = ax.anchors[g], b = ax.anchors[g + 1];
    const double nudge = 1e-13 * std::max({b - a, std::abs(a), std::abs(b)});
    for (int k = 0; k <= ax.m[g]; ++k) {
      double u = a + (b - a) * k / ax.m[g];
      if (k == 0) u += nudge;
      if (k == ax.m[g]) u -= nudge;
      ax.fine[ax.offset[g] + k] = u;
    }
  }
  return ax;
}

std::size_t anchor_index(const FineAxis& ax, double value) {
  auto it = std::lower_bound(ax.anchors.begin(), ax.anchors.end(), value - 1e-12);
  if (it == ax.anchors.end() || std::abs(*it - value) > 1e-9)
    throw std::logic_error("fine axis: value is not an anchor");
  return static_cast<std::size_t>(it - ax.anchors.begin());
}

// Cumulative integral at the anchors given integrand values on the fine grid.
std::vector<double> fine_cumulative(const std::function<double(Eigen::Index)>& value_at,
                                    const FineAxis& ax) {
  std::vector<double> cum(ax.anchors.size(), 0.0);
  for (std::size_t g = 0; g + 1 < ax.anchors.size(); ++g) {
    const int mg = ax.m[g];
    const double h = (ax.anchors[g + 1] - ax.anchors[g]) / mg;
    double odd = 0.0, even = 0.0;
    for (int k = 1; k < mg; ++k)
      (k % 2 ? odd : even) += value_at(ax.fine_index(g, k));
    cum[g + 1] = cum[g] + h / 3.0 * (value_at(ax.fine_index(g, 0)) +
                                     value_at(ax.fine_index(g, mg)) + 4.0 * odd + 2.0 * even);
  }
  return cum;
}

// ---------------------------------------------------------------------------
// Two-variable engine: the common core of the 1-D dynamic ((u,v) = (x,t),
// W = cE) and planar static ((u,v) = (x,y), W = B) solutions.

struct TwoVarSpec {
  Fn2 Au, Av, W;
  BreaksFn u_breaks;  // breaks in u at fixed v
  BreaksFn v_breaks;  // breaks in v at fixed u
  double u0 = 0.0, v0 = 0.0;
  int quad_n = 801;
  int refine = 8;
};

class TwoVarEngine {
 public:
  explicit TwoVarEngine(TwoVarSpec s) : s_(std::move(s)) {}

  const TwoVarSpec& spec() const { return s_; }

  Breaks ub(double v) const { return s_.u_breaks ? s_.u_breaks(v) : Breaks{}; }
  Breaks vb(double u) const { return s_.v_breaks ? s_.v_breaks(u) : Breaks{}; }

  double int_Au(double u, double v) const {
    return signed_line([&](double up) { return s_.Au(up, v); }, s_.u0, u, s_.quad_n, ub(v));
  }

  double int_Av(double v, double u) const {
    return signed_line([&](double vp) { return s_.Av(u, vp); }, s_.v0, v, s_.quad_n, vb(u));
  }

  // Enclosed flux of W over the rectangle spanned by the base corner and (u, v).
  double N(double u, double v) const {
    if (u == s_.u0 || v == s_.v0) return 0.0;
    const double ulo = std::min(s_.u0, u), uhi = std::max(s_.u0, u);
    const double vlo = std::min(s_.v0, v), vhi = std::max(s_.v0, v);
    auto f = [&](double vp, double up) { return s_.W(up, vp); };
    const double val =
        integrate_iterated(f, Interval(vlo, vhi, s_.quad_n), Interval(ulo, uhi, s_.quad_n),
                           [&](double vp) { return ub(vp); }, merge_breaks({vb(s_.u0), vb(u)}));
    const double sign = ((u > s_.u0) == (v > s_.v0)) ? 1.0 : -1.0;
    return sign * val;
  }

  Eigen::ArrayXd Au_at_v(const Eigen::ArrayXd& us, double v) const {
    return cumulative_at_targets([&](double up) { return s_.Au(up, v); }, s_.u0, us, ub(v),
                                 s_.refine);
  }

  Eigen::ArrayXd Av_at_u(const Eigen::ArrayXd& vs, double u) const {
    return cumulative_at_targets([&](double vp) { return s_.Av(u, vp); }, s_.v0, vs, vb(u),
                                 s_.refine);
  }

  Eigen::MatrixXd Au_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const {
    Eigen::MatrixXd out(us.size(), vs.size());
    for (Eigen::Index j = 0; j < vs.size(); ++j) out.col(j) = Au_at_v(us, vs[j]).matrix();
    return out;
  }

  Eigen::MatrixXd Av_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const {
    Eigen::MatrixXd out(us.size(), vs.size());
    for (Eigen::Index i = 0; i < us.size(); ++i)
      out.row(i) = Av_at_u(vs, us[i]).matrix().transpose();
    return out;
  }

  // N at every (u_i, v_j) via one cumulative sweep per axis.
  Eigen::MatrixXd N_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const {
    const double vmin = std::min(s_.v0, vs.minCoeff());
    const double vmax = std::max(s_.v0, vs.maxCoeff());

    std::vector<double> anchors(vs.data(), vs.data() + vs.size());
    anchors.push_back(s_.v0);
    // v-structure of the inner integral: union of the declared v-breakpoints
    // at a spread of u positions (clipped to the hull).
    std::set<double> vcuts;
    const Eigen::Index n_rep = std::min<Eigen::Index>(us.size(), 32);
    for (Eigen::Index r = 0; r < n_rep; ++r) {
      const double u = us[r * (us.size() - 1) / std::max<Eigen::Index>(1, n_rep - 1)];
      for (double c : vb(u))
        if (c > vmin && c < vmax) vcuts.insert(c);
    }
    for (double c : vb(s_.u0))
      if (c > vmin && c < vmax) vcuts.insert(c);
    anchors.insert(anchors.end(), vcuts.begin(), vcuts.end());

    const FineAxis ax = make_fine_axis(std::move(anchors), s_.refine);

    Eigen::MatrixXd S(us.size(), ax.fine.size());
    for (Eigen::Index k = 0; k < ax.fine.size(); ++k) {
      const double vp = ax.fine[k];
      S.col(k) = cumulative_at_targets([&](double up) { return s_.W(up, vp); }, s_.u0, us, ub(vp),
                                       s_.refine)
                     .matrix();
    }

    const std::size_t j0 = anchor_index(ax, s_.v0);
    std::vector<std::size_t> jt(vs.size());
    for (Eigen::Index j = 0; j < vs.size(); ++j) jt[j] = anchor_index(ax, vs[j]);

    Eigen::MatrixXd out(us.size(), vs.size());
    for (Eigen::Index i = 0; i < us.size(); ++i) {
      const auto cum = fine_cumulative([&](Eigen::Index k) { return S(i, k); }, ax);
      for (Eigen::Index j = 0; j < vs.size(); ++j) out(i, j) = cum[jt[j]] - cum[j0];
    }
    return out;
  }

 private:
  TwoVarSpec s_;
};

}  // namespace

// ---------------------------------------------------------------------------
// FixingFn

FixingFn FixingFn::zero() {
  FixingFn f;
  f.zero_ = true;
  return f;
}

FixingFn FixingFn::closed_form(std::function<double(double)> f) {
  FixingFn out;
  out.closed_ = std::move(f);
  out.zero_ = false;
  return out;
}

FixingFn FixingFn::sampled(Eigen::ArrayXd nodes, Eigen::ArrayXd vals, Eigen::ArrayXd deriv_left,
                           Eigen::ArrayXd deriv_right) {
  if (nodes.size() < 2 || nodes.size() != vals.size() || nodes.size() != deriv_left.size() ||
      nodes.size() != deriv_right.size())
    throw std::invalid_argument("FixingFn::sampled: inconsistent array sizes");
  FixingFn out;
  out.nodes_ = std::move(nodes);
  out.vals_ = std::move(vals);
  out.dl_ = std::move(deriv_left);
  out.dr_ = std::move(deriv_right);
  out.zero_ = out.vals_.abs().maxCoeff() == 0.0 && out.dl_.abs().maxCoeff() == 0.0 &&
              out.dr_.abs().maxCoeff() == 0.0;
  return out;
}

double FixingFn::operator()(double u) const {
  if (zero_) return 0.0;
  if (closed_) return closed_(u);
  const Eigen::Index n = nodes_.size();
  if (u <= nodes_[0]) return vals_[0] + dl_[0] * (u - nodes_[0]);
  if (u >= nodes_[n - 1]) return vals_[n - 1] + dr_[n - 1] * (u - nodes_[n - 1]);
  const double* begin = nodes_.data();
  Eigen::Index k = std::upper_bound(begin, begin + n, u) - begin - 1;
  if (k >= n - 1) k = n - 2;
  const double h = nodes_[k + 1] - nodes_[k];
  const double sloc = (u - nodes_[k]) / h;
  const double s2 = sloc * sloc, s3 = s2 * sloc;
  // cubic Hermite with one-sided end derivatives (kinks live on nodes)
  return vals_[k] * (2 * s3 - 3 * s2 + 1) + vals_[k + 1] * (-2 * s3 + 3 * s2) +
         h * dr_[k] * (s3 - 2 * s2 + sloc) + h * dl_[k + 1] * (s3 - s2);
}

double FixingFunctions::max_residual() const {
  double worst = 0.0;
  for (const auto& [key, value] : condition_residuals) worst = std::max(worst, value);
  return worst;
}

// ---------------------------------------------------------------------------
// Solution implementations

namespace detail {

struct SolutionImpl {
  virtual ~SolutionImpl() = default;
  virtual GaugeSolution::Parts dn_parts(double x, double y, double t) const = 0;

  virtual Eigen::MatrixXd dn_grid(const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const {
    auto [circuit, nonlocal] = dn_parts_grid(us, vs);
    return circuit + nonlocal;
  }
  virtual std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dn_parts_grid(const Eigen::ArrayXd&,
                                                                    const Eigen::ArrayXd&) const {
    throw std::logic_error("grid evaluation is not available for this solution");
  }
  virtual std::vector<Eigen::MatrixXd> dn_grid3(const Eigen::ArrayXd&, const Eigen::ArrayXd&,
                                                const Eigen::ArrayXd&) const {
    throw std::logic_error("three-axis grid evaluation is not available for this solution");
  }
};

namespace {

struct TwoVarImpl final : SolutionImpl {
  TwoVarEngine eng;
  Route route;
  FixingFn fix;
  bool one_d;  // (u, v) = (x, t) if true, (x, y) otherwise

  TwoVarImpl(TwoVarSpec spec, Route r, FixingFn f, bool od)
      : eng(std::move(spec)), route(r), fix(std::move(f)), one_d(od) {}

  GaugeSolution::Parts dn_parts(double x, double y, double t) const override {
    const double u = x;
    const double v = one_d ? t : y;
    const auto& s = eng.spec();
    GaugeSolution::Parts p;
    switch (route) {
      case Route::oneD_t_then_x:
      case Route::twoD_route1:
        p.circuit = eng.int_Au(u, v) + eng.int_Av(v, s.u0);
        p.nonlocal = eng.N(u, v) + fix(u);
        break;
      case Route::oneD_x_then_t:
      case Route::twoD_route2:
        p.circuit = eng.int_Au(u, s.v0) + eng.int_Av(v, u);
        p.nonlocal = -eng.N(u, v) + fix(v);
        break;
      case Route::naive_v1:
        p.circuit = eng.int_Au(u, v) + eng.int_Av(v, u);
        break;
      case Route::naive_v2:
        p.circuit = eng.int_Au(u, s.v0) + eng.int_Av(v, s.u0);
        break;
      default:
        throw std::logic_error("TwoVarImpl: unsupported route");
    }
    return p;
  }

  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dn_parts_grid(
      const Eigen::ArrayXd& us, const Eigen::ArrayXd& vs) const override {
    const auto& s = eng.spec();
    Eigen::MatrixXd circuit(us.size(), vs.size());
    Eigen::MatrixXd nonlocal = Eigen::MatrixXd::Zero(us.size(), vs.size());
    switch (route) {
      case Route::oneD_t_then_x:
      case Route::twoD_route1: {
        circuit = eng.Au_grid(us, vs);
        const Eigen::ArrayXd av0 = eng.Av_at_u(vs, s.u0);
        circuit.rowwise() += av0.matrix().transpose();
        nonlocal = eng.N_grid(us, vs);
        Eigen::ArrayXd g(us.size());
        for (Eigen::Index i = 0; i < us.size(); ++i) g[i] = fix(us[i]);
        nonlocal.colwise() += g.matrix();
        break;
      }
      case Route::oneD_x_then_t:
      case Route::twoD_route2: {
        circuit = eng.Av_grid(us, vs);
        const Eigen::ArrayXd au0 = eng.Au_at_v(us, s.v0);
        circuit.colwise() += au0.matrix();
        nonlocal = -eng.N_grid(us, vs);
        Eigen::ArrayXd h(vs.size());
        for (Eigen::Index j = 0; j < vs.size(); ++j) h[j] = fix(vs[j]);
        nonlocal.rowwise() += h.matrix().transpose();
        break;
      }
      case Route::naive_v1:
        circuit = eng.Au_grid(us, vs) + eng.Av_grid(us, vs);
        break;
      case Route::naive_v2: {
        const Eigen::ArrayXd au0 = eng.Au_at_v(us, s.v0);
        const Eigen::ArrayXd av0 = eng.Av_at_u(vs, s.u0);
        circuit = au0.matrix() * Eigen::RowVectorXd::Ones(vs.size());
        circuit.rowwise() += av0.matrix().transpose();
        break;
      }
      default:
        throw std::logic_error("TwoVarImpl: unsupported route");
    }
    return {std::move(circuit), std::move(nonlocal)};
  }
};

struct FullSpec {
  Field3 Ax, Ay, phi, Ex, Ey, B;
  double x0 = 0, y0 = 0, t0 = 0;
  double c = 1.0;
  int quad_n = 201;
  int refine = 6;
  std::function<Breaks(double, double)> x_breaks;  // of (y, t)
  std::function<Breaks(double, double)> y_breaks;  // of (x, t)
  std::function<Breaks(double, double)> t_breaks;  // of (x, y)

  Breaks xb(double y, double t) const { return x_breaks ? x_breaks(y, t) : Breaks{}; }
  Breaks yb(double x, double t) const { return y_breaks ? y_breaks(x, t) : Breaks{}; }
  Breaks tb(double x, double y) const { return t_breaks ? t_breaks(x, y) : Breaks{}; }
};

struct FullImpl final : SolutionImpl {
  FullSpec fs;
  Route route;  // full_primary or full_dual
  FixingFn G;   // G(y) for the primary, G_hat(x) for the dual
  std::function<double(double, double)> F;

  FullImpl(FullSpec s, Route r, FixingFn g, std::function<double(double, double)> f)
      : fs(std::move(s)), route(r), G(std::move(g)), F(std::move(f)) {}

  double Fval(double x, double y) const { return F ? F(x, y) : 0.0; }

  // Spacetime flux of a planar field component over [t0,t] x [w0,w].
  double spacetime_flux(const Fn2& field /*(w, t)*/, double w0, double w, double t,
                        const BreaksFn& w_breaks, const Breaks& t_cuts) const {
    if (w == w0 || t == fs.t0) return 0.0;
    const double wlo = std::min(w0, w), whi = std::max(w0, w);
    const double tlo = std::min(fs.t0, t), thi = std::max(fs.t0, t);
    auto f = [&](double tp, double wp) { return field(wp, tp); };
    const double val = integrate_iterated(f, Interval(tlo, thi, fs.quad_n),
                                          Interval(wlo, whi, fs.quad_n), w_breaks, t_cuts);
    const double sign = ((w > w0) == (t > fs.t0)) ? 1.0 : -1.0;
    return sign * val;
  }

  double MB(double x, double y) const {
    if (x == fs.x0 || y == fs.y0) return 0.0;
    const double xlo = std::min(fs.x0, x), xhi = std::max(fs.x0, x);
    const double ylo = std::min(fs.y0, y), yhi = std::max(fs.y0, y);
    auto f = [&](double yp, double xp) { return fs.B(xp, yp, fs.t0); };
    const double val = integrate_iterated(
        f, Interval(ylo, yhi, fs.quad_n), Interval(xlo, xhi, fs.quad_n),
        [&](double yp) { return fs.xb(yp, fs.t0); }, merge_breaks({fs.yb(fs.x0, fs.t0), fs.yb(x, fs.t0)}));
    const double sign = ((x > fs.x0) == (y > fs.y0)) ? 1.0 : -1.0;
    return sign * val;
  }

  GaugeSolution::Parts dn_parts(double x, double y, double t) const override {
    GaugeSolution::Parts p;
    const double c = fs.c;
    const double iphi = signed_line([&](double tp) { return fs.phi(fs.x0, fs.y0, tp); }, fs.t0, t,
                                    fs.quad_n, fs.tb(fs.x0, fs.y0));
    if (route == Route::full_primary) {
      const double iax = signed_line([&](double xp) { return fs.Ax(xp, fs.y0, t); }, fs.x0, x,
                                     fs.quad_n, fs.xb(fs.y0, t));
      const double iay = signed_line([&](double yp) { return fs.Ay(x, yp, t); }, fs.y0, y,
                                     fs.quad_n, fs.yb(x, t));
      const double iex = spacetime_flux([&](double xp, double tp) { return fs.Ex(xp, fs.y0, tp); },
                                        fs.x0, x, t, [&](double tp) { return fs.xb(fs.y0, tp); },
                                        merge_breaks({fs.tb(fs.x0, fs.y0), fs.tb(x, fs.y0)}));
      const double iey = spacetime_flux([&](double yp, double tp) { return fs.Ey(x, yp, tp); },
                                        fs.y0, y, t, [&](double tp) { return fs.yb(x, tp); },
                                        merge_breaks({fs.tb(x, fs.y0), fs.tb(x, y)}));
      p.circuit = iax + iay - c * iphi;
      p.nonlocal = -MB(x, y) + G(y) + c * iex + c * iey + Fval(x, y);
    } else {
      const double iax = signed_line([&](double xp) { return fs.Ax(xp, y, t); }, fs.x0, x,
                                     fs.quad_n, fs.xb(y, t));
      const double iay = signed_line([&](double yp) { return fs.Ay(fs.x0, yp, t); }, fs.y0, y,
                                     fs.quad_n, fs.yb(fs.x0, t));
      const double iex = spacetime_flux([&](double xp, double tp) { return fs.Ex(xp, y, tp); },
                                        fs.x0, x, t, [&](double tp) { return fs.xb(y, tp); },
                                        merge_breaks({fs.tb(fs.x0, y), fs.tb(x, y)}));
      const double iey = spacetime_flux([&](double yp, double tp) { return fs.Ey(fs.x0, yp, tp); },
                                        fs.y0, y, t, [&](double tp) { return fs.yb(fs.x0, tp); },
                                        merge_breaks({fs.tb(fs.x0, fs.y0), fs.tb(fs.x0, y)}));
      p.circuit = iax + iay - c * iphi;
      p.nonlocal = +MB(x, y) + G(x) + c * iex + c * iey + Fval(x, y);
    }
    return p;
  }

  std::vector<Eigen::MatrixXd> dn_grid3(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys,
                                        const Eigen::ArrayXd& ts) const override {
    const double c = fs.c;
    const Eigen::Index nx = xs.size(), ny = ys.size(), nt = ts.size();

    auto mk_engine = [&](Fn2 W, double u0, double v0, BreaksFn ubr, BreaksFn vbr) {
      TwoVarSpec sp;
      sp.Au = sp.Av = [](double, double) { return 0.0; };
      sp.W = std::move(W);
      sp.u0 = u0;
      sp.v0 = v0;
      sp.quad_n = fs.quad_n;
      sp.refine = fs.refine;
      sp.u_breaks = std::move(ubr);
      sp.v_breaks = std::move(vbr);
      return TwoVarEngine(std::move(sp));
    };

    // t-independent tables
    const Eigen::MatrixXd mb =
        mk_engine([&](double xp, double yp) { return fs.B(xp, yp, fs.t0); }, fs.x0, fs.y0,
                  [&](double yp) { return fs.xb(yp, fs.t0); },
                  [&](double xp) { return fs.yb(xp, fs.t0); })
            .N_grid(xs, ys);
    const Eigen::ArrayXd iphi =
        cumulative_at_targets([&](double tp) { return fs.phi(fs.x0, fs.y0, tp); }, fs.t0, ts,
                              fs.tb(fs.x0, fs.y0), fs.refine);

    Eigen::ArrayXd gfix(route == Route::full_primary ? ny : nx);
    for (Eigen::Index k = 0; k < gfix.size(); ++k)
      gfix[k] = G(route == Route::full_primary ? ys[k] : xs[k]);

    Eigen::MatrixXd fvals = Eigen::MatrixXd::Zero(nx, ny);
    if (F)
      for (Eigen::Index i = 0; i < nx; ++i)
        for (Eigen::Index j = 0; j < ny; ++j) fvals(i, j) = F(xs[i], ys[j]);

    std::vector<Eigen::MatrixXd> out(nt, Eigen::MatrixXd::Zero(nx, ny));

    if (route == Route::full_primary) {
      const Eigen::MatrixXd iexb =
          mk_engine([&](double xp, double tp) { return fs.Ex(xp, fs.y0, tp); }, fs.x0, fs.t0,
                    [&](double tp) { return fs.xb(fs.y0, tp); },
                    [&](double xp) { return fs.tb(xp, fs.y0); })
              .N_grid(xs, ts);
      // A line integrals along the bottom row, per time node
      Eigen::MatrixXd iaxb(nx, nt);
      for (Eigen::Index k = 0; k < nt; ++k)
        iaxb.col(k) = cumulative_at_targets([&](double xp) { return fs.Ax(xp, fs.y0, ts[k]); },
                                            fs.x0, xs, fs.xb(fs.y0, ts[k]), fs.refine)
                          .matrix();
      for (Eigen::Index i = 0; i < nx; ++i) {
        const double x = xs[i];
        const Eigen::MatrixXd ieyr =
            mk_engine([&](double yp, double tp) { return fs.Ey(x, yp, tp); }, fs.y0, fs.t0,
                      [&](double tp) { return fs.yb(x, tp); },
                      [&](double yp) { return fs.tb(x, yp); })
                .N_grid(ys, ts);
        Eigen::MatrixXd iayf(ny, nt);
        for (Eigen::Index k = 0; k < nt; ++k)
          iayf.col(k) = cumulative_at_targets([&](double yp) { return fs.Ay(x, yp, ts[k]); },
                                              fs.y0, ys, fs.yb(x, ts[k]), fs.refine)
                            .matrix();
        for (Eigen::Index k = 0; k < nt; ++k)
          for (Eigen::Index j = 0; j < ny; ++j)
            out[k](i, j) = iaxb(i, k) + iayf(j, k) - mb(i, j) + gfix[j] - c * iphi[k] +
                           c * iexb(i, k) + c * ieyr(j, k) + fvals(i, j);
      }
    } else {
      const Eigen::MatrixXd ieyl =
          mk_engine([&](double yp, double tp) { return fs.Ey(fs.x0, yp, tp); }, fs.y0, fs.t0,
                    [&](double tp) { return fs.yb(fs.x0, tp); },
                    [&](double yp) { return fs.tb(fs.x0, yp); })
              .N_grid(ys, ts);
      Eigen::MatrixXd iayl(ny, nt);
      for (Eigen::Index k = 0; k < nt; ++k)
        iayl.col(k) = cumulative_at_targets([&](double yp) { return fs.Ay(fs.x0, yp, ts[k]); },
                                            fs.y0, ys, fs.yb(fs.x0, ts[k]), fs.refine)
                          .matrix();
      for (Eigen::Index j = 0; j < ny; ++j) {
        const double y = ys[j];
        const Eigen::MatrixXd iext =
            mk_engine([&](double xp, double tp) { return fs.Ex(xp, y, tp); }, fs.x0, fs.t0,
                      [&](double tp) { return fs.xb(y, tp); },
                      [&](double xp) { return fs.tb(xp, y); })
                .N_grid(xs, ts);
        Eigen::MatrixXd iaxt(nx, nt);
        for (Eigen::Index k = 0; k < nt; ++k)
          iaxt.col(k) = cumulative_at_targets([&](double xp) { return fs.Ax(xp, y, ts[k]); },
                                              fs.x0, xs, fs.xb(y, ts[k]), fs.refine)
                            .matrix();
        for (Eigen::Index k = 0; k < nt; ++k)
          for (Eigen::Index i = 0; i < nx; ++i)
            out[k](i, j) = iaxt(i, k) + iayl(j, k) + mb(i, j) + gfix[i] - c * iphi[k] +
                           c * iext(i, k) + c * ieyl(j, k) + fvals(i, j);
      }
    }
    return out;
  }
};

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// GaugeSolution

double GaugeSolution::lambda_base() const {
  double mc = 0.0;
  switch (route_) {
    case Route::oneD_t_then_x:
    case Route::twoD_route1: mc = mult_.tau; break;
    case Route::oneD_x_then_t:
    case Route::twoD_route2: mc = mult_.chi; break;
    case Route::full_primary:
    case Route::full_dual: mc = mult_.f; break;
    default: break;
  }
  return lambda0_ + mc;
}

double GaugeSolution::evaluate(double x, double y, double t) const {
  return parts(x, y, t).total(lambda0_);
}

GaugeSolution::Parts GaugeSolution::parts(double x, double y, double t) const {
  Parts p = impl_->dn_parts(x, y, t);
  p.multiplicity = lambda_base() - lambda0_;
  return p;
}

Eigen::MatrixXd GaugeSolution::evaluate_grid(const Eigen::ArrayXd& us,
                                             const Eigen::ArrayXd& vs) const {
  Eigen::MatrixXd m = impl_->dn_grid(us, vs);
  m.array() += lambda_base();
  return m;
}

GaugeSolution::PartsGrid GaugeSolution::parts_grid(const Eigen::ArrayXd& us,
                                                   const Eigen::ArrayXd& vs) const {
  auto [circuit, nonlocal] = impl_->dn_parts_grid(us, vs);
  return {std::move(circuit), std::move(nonlocal), lambda_base() - lambda0_};
}

std::vector<Eigen::MatrixXd> GaugeSolution::evaluate_grid3(const Eigen::ArrayXd& xs,
                                                           const Eigen::ArrayXd& ys,
                                                           const Eigen::ArrayXd& ts) const {
  auto ms = impl_->dn_grid3(xs, ys, ts);
  for (auto& m : ms) m.array() += lambda_base();
  return ms;
}

// ---------------------------------------------------------------------------
// Construction helpers

namespace {

TwoVarSpec make_two_var_spec(const FieldSet* f, const PotentialSet* p, const Eigen::Vector3d& base,
                             DimTag dim, const Constants& con, const GaugeOptions& opt) {
  TwoVarSpec s;
  s.u0 = base[0];
  s.quad_n = opt.quad_n;
  s.refine = opt.refine;
  s.u_breaks = opt.u_breaks;
  s.v_breaks = opt.v_breaks;
  const double c = con.c;
  if (dim == DimTag::OneDDynamic) {
    s.v0 = base[2];
    if (p) {
      const Field3 Ax = p->Ax, phi = p->phi;
      s.Au = [Ax](double u, double v) { return Ax(u, 0.0, v); };
      s.Av = [phi, c](double u, double v) { return -c * phi(u, 0.0, v); };
    } else {
      s.Au = s.Av = [](double, double) { return 0.0; };
    }
    if (f) {
      const Field3 Ex = f->Ex;
      s.W = [Ex, c](double u, double v) { return c * Ex(u, 0.0, v); };
    } else {
      s.W = [](double, double) { return 0.0; };
    }
  } else {
    s.v0 = base[1];
    if (p) {
      const Field3 Ax = p->Ax, Ay = p->Ay;
      s.Au = [Ax](double u, double v) { return Ax(u, v, 0.0); };
      s.Av = [Ay](double u, double v) { return Ay(u, v, 0.0); };
    } else {
      s.Au = s.Av = [](double, double) { return 0.0; };
    }
    if (f) {
      const Field3 B = f->B;
      s.W = [B](double u, double v) { return B(u, v, 0.0); };
    } else {
      s.W = [](double, double) { return 0.0; };
    }
  }
  return s;
}

GaugeSolution finish_solution(std::shared_ptr<const detail::SolutionImpl> impl, Route route,
                              DimTag dim, const Eigen::Vector3d& base, FixingFunctions fix,
                              const Constants& con, const GaugeOptions& opt);

// Builds the sampled fixing function for one route of a two-variable family:
// the derivative of the independence bracket across the observation span,
// frozen to zero outside it, integrated from the base coordinate.
FixingFn build_fixing_fn(const TwoVarEngine& eng, const ObservationRegion& region, bool first,
                         double base_coord, const GaugeOptions& opt) {
  const TwoVarSpec& s = eng.spec();
  const Interval span = first ? region.x : region.yt;
  const double ref = first ? region.yt_ref : region.x_ref;

  auto deriv = [&](double w) -> double {
    if (w < span.lo || w > span.hi) return 0.0;
    if (first)
      return -signed_line([&](double vp) { return s.W(w, vp); }, s.v0, ref, s.quad_n, eng.vb(w));
    return +signed_line([&](double up) { return s.W(up, w); }, s.u0, ref, s.quad_n, eng.ub(w));
  };

  // Node chain over the hull of everything the function can be asked for.
  const double lo = std::min({base_coord, span.lo}) - 1e-9;
  const double hi = std::max({base_coord, span.hi}) + 1e-9;
  std::set<double> nodeset;
  const int n_nodes = 257;
  for (int i = 0; i < n_nodes; ++i) nodeset.insert(lo + (hi - lo) * i / (n_nodes - 1));
  nodeset.insert(base_coord);
  nodeset.insert(span.lo);
  nodeset.insert(span.hi);
  const Breaks structural = first ? eng.ub(ref) : eng.vb(ref);
  for (double b : structural)
    if (b > lo && b < hi) nodeset.insert(b);

  std::vector<double> nodes(nodeset.begin(), nodeset.end());
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
  Eigen::ArrayXd xs(n), vals(n), dl(n), dr(n);
  for (Eigen::Index i = 0; i < n; ++i) xs[i] = nodes[i];

  const double side = (hi - lo) * 1e-9;
  for (Eigen::Index i = 0; i < n; ++i) {
    dl[i] = deriv(xs[i] - side);
    dr[i] = deriv(xs[i] + side);
  }
  vals[0] = 0.0;
  for (Eigen::Index i = 1; i < n; ++i)
    vals[i] = vals[i - 1] + detail::integrate_segment(deriv, xs[i - 1], xs[i], {}, opt.refine);

  // normalize to zero at the base coordinate
  double at_base = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (xs[i] == base_coord) at_base = vals[i];
  vals -= at_base;

  if (vals.abs().maxCoeff() < 1e-14 && dl.abs().maxCoeff() < 1e-14 && dr.abs().maxCoeff() < 1e-14)
    return FixingFn::zero();
  return FixingFn::sampled(std::move(xs), std::move(vals), std::move(dl), std::move(dr));
}

// Max over reference slices of the bracket spread across the free variable.
double bracket_residual(const TwoVarEngine& eng, const ObservationRegion& region, bool first,
                        const std::function<double(double)>& fixfn, double* scale_out = nullptr) {
  const int n_free = 41, n_ref = 9;
  const Interval span = first ? region.x : region.yt;
  const Interval refs = first ? region.yt : region.x;
  const Eigen::ArrayXd ws = Eigen::ArrayXd::LinSpaced(n_free, span.lo, span.hi);
  const Eigen::ArrayXd rs = Eigen::ArrayXd::LinSpaced(n_ref, refs.lo, refs.hi);

  const Eigen::MatrixXd N = first ? eng.N_grid(ws, rs) : eng.N_grid(rs, ws);
  if (scale_out) *scale_out = N.array().abs().maxCoeff();

  double worst = 0.0;
  for (int r = 0; r < n_ref; ++r) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_free; ++i) {
      const double u = first ? ws[i] : rs[r];
      const double v = first ? rs[r] : ws[i];
      if (!region.inside(u, v)) continue;
      const double bracket = first ? N(i, r) + fixfn(ws[i]) : -N(r, i) + fixfn(ws[i]);
      mn = std::min(mn, bracket);
      mx = std::max(mx, bracket);
    }
    if (mx > mn) worst = std::max(worst, mx - mn);
  }
  return worst;
}

FixingFunctions solve_fixing_two_var(const FieldSet& f, const ObservationRegion& region,
                                     const Eigen::Vector3d& base, DimTag dim, Route route,
                                     const Constants& con, const GaugeOptions& opt) {
  con.validate();
  const TwoVarEngine eng(make_two_var_spec(&f, nullptr, base, dim, con, opt));
  const bool first = is_first_route(route);
  const double base_coord = first ? base[0] : (dim == DimTag::OneDDynamic ? base[2] : base[1]);

  FixingFn fn = build_fixing_fn(eng, region, first, base_coord, opt);
  double scale = 0.0;
  const double resid = bracket_residual(eng, region, first,
                                        [&](double w) { return fn(w); }, &scale);
  if (resid > opt.fixing_tol * (1.0 + scale))
    throw std::runtime_error(
        "no admissible fixing function: independence residual " + std::to_string(resid) +
        " exceeds tolerance (is the observation region inside the field support?)");

  FixingFunctions out;
  const char* key;
  if (dim == DimTag::OneDDynamic) {
    if (first) {
      out.g = fn;
      key = "g";
    } else {
      out.g_hat = fn;
      key = "g_hat";
    }
  } else {
    if (first) {
      out.g = fn;
      key = "g";
    } else {
      out.h = fn;
      key = "h";
    }
  }
  out.condition_residuals[key] = resid;
  return out;
}

GaugeSolution make_two_var_solution(const FieldSet& f, const PotentialSet& p,
                                    const FixingFunctions& fix, const Eigen::Vector3d& base,
                                    Route route, DimTag dim, const Constants& con,
                                    const GaugeOptions& opt) {
  con.validate();
  FixingFn fn = FixingFn::zero();
  if (!is_naive(route)) {
    const std::optional<FixingFn>* member = nullptr;
    if (route == Route::oneD_t_then_x || route == Route::twoD_route1) member = &fix.g;
    else if (route == Route::oneD_x_then_t) member = &fix.g_hat;
    else if (route == Route::twoD_route2) member = &fix.h;
    if (!member || !member->has_value())
      throw std::invalid_argument("lambda: missing fixing function for route " +
                                  route_name(route));
    fn = **member;
  }
  auto impl = std::make_shared<detail::TwoVarImpl>(
      make_two_var_spec(&f, &p, base, dim, con, opt), route, std::move(fn),
      dim == DimTag::OneDDynamic);
  return finish_solution(std::move(impl), route, dim, base, fix, con, opt);
}

}  // namespace

namespace detail {
struct SolutionAccess {
  static GaugeSolution make(std::shared_ptr<const SolutionImpl> impl, Route route, DimTag dim,
                            const Eigen::Vector3d& base, FixingFunctions fix,
                            const GaugeOptions& opt) {
    GaugeSolution sol;
    sol.route_ = route;
    sol.dim_ = dim;
    sol.base_ = base;
    sol.lambda0_ = opt.lambda0;
    sol.connectivity_ = opt.connectivity;
    sol.fixing_ = std::move(fix);
    sol.impl_ = std::move(impl);
    return sol;
  }
  static GaugeSolution with_values(const GaugeSolution& sol, const Multiplicities& values) {
    GaugeSolution out = sol;
    out.mult_ = values;
    return out;
  }
};
}  // namespace detail

namespace {

GaugeSolution finish_solution(std::shared_ptr<const detail::SolutionImpl> impl, Route route,
                              DimTag dim, const Eigen::Vector3d& base, FixingFunctions fix,
                              const Constants&, const GaugeOptions& opt) {
  return detail::SolutionAccess::make(std::move(impl), route, dim, base, std::move(fix), opt);
}

}  // namespace

GaugeSolution naive_dirac_lambda(const PotentialSet& p, const Eigen::Vector3d& base, Route variant,
                                 const Constants& con, const GaugeOptions& opt) {
  if (!is_naive(variant))
    throw std::invalid_argument("naive_dirac_lambda: variant must be naive_v1 or naive_v2");
  if (p.dim != DimTag::OneDDynamic)
    throw std::invalid_argument("naive_dirac_lambda: wrong dimension tag (1-D dynamic required)");
  FieldSet unused;
  return make_two_var_solution(unused, p, FixingFunctions{}, base, variant, DimTag::OneDDynamic,
                               con, opt);
}

FixingFunctions solve_fixing_1d(const FieldSet& f, const ObservationRegion& region,
                                const Eigen::Vector3d& base, Route route, const Constants& con,
                                const GaugeOptions& opt) {
  if (route != Route::oneD_t_then_x && route != Route::oneD_x_then_t)
    throw std::invalid_argument("solve_fixing_1d: route must be a 1-D dynamic route");
  return solve_fixing_two_var(f, region, base, DimTag::OneDDynamic, route, con, opt);
}

FixingFunctions solve_fixing_2d(const FieldSet& f, const ObservationRegion& region,
                                const Eigen::Vector3d& base, Route route, const Constants& con,
                                const GaugeOptions& opt) {
  if (route != Route::twoD_route1 && route != Route::twoD_route2)
    throw std::invalid_argument("solve_fixing_2d: route must be a planar route");
  return solve_fixing_two_var(f, region, base, DimTag::TwoDStatic, route, con, opt);
}

double fixing_condition_residual(const FieldSet& f, const ObservationRegion& region,
                                 const Eigen::Vector3d& base, DimTag dim, bool first_route,
                                 const std::function<double(double)>& candidate,
                                 const Constants& con, const GaugeOptions& opt) {
  const TwoVarEngine eng(make_two_var_spec(&f, nullptr, base, dim, con, opt));
  return bracket_residual(eng, region, first_route, candidate);
}

GaugeSolution lambda_1d(const FieldSet& f, const PotentialSet& p, const FixingFunctions& fix,
                        const Eigen::Vector3d& base, Route route, const Constants& con,
                        const GaugeOptions& opt) {
  if (route != Route::oneD_t_then_x && route != Route::oneD_x_then_t)
    throw std::invalid_argument("lambda_1d: route must be oneD_t_then_x or oneD_x_then_t");
  if (p.dim != DimTag::OneDDynamic)
    throw std::invalid_argument("lambda_1d: wrong dimension tag");
  return make_two_var_solution(f, p, fix, base, route, DimTag::OneDDynamic, con, opt);
}

GaugeSolution lambda_2d_static(const FieldSet& f, const PotentialSet& p,
                               const FixingFunctions& fix, const Eigen::Vector3d& base, Route route,
                               const Constants& con, const GaugeOptions& opt) {
  if (route != Route::twoD_route1 && route != Route::twoD_route2)
    throw std::invalid_argument("lambda_2d_static: route must be twoD_route1 or twoD_route2");
  if (p.dim != DimTag::TwoDStatic)
    throw std::invalid_argument("lambda_2d_static: wrong dimension tag");
  return make_two_var_solution(f, p, fix, base, route, DimTag::TwoDStatic, con, opt);
}

FixingFunctions solve_fixing_full(const FieldSet& f, const ObservationRegion& region,
                                  const Eigen::Vector3d& base, const Constants& con,
                                  const GaugeOptions& opt) {
  con.validate();
  const double c = con.c;
  // G and G_hat fix the initial-time planar flux bracket: reuse the planar
  // machinery on B(.,.,t0).
  FieldSet planar;
  const Field3 B = f.B;
  const double t0 = base[2];
  planar.B = [B, t0](double x, double y, double) { return B(x, y, t0); };
  GaugeOptions popt = opt;
  popt.u_breaks = opt.x_breaks3 ? BreaksFn([xb = opt.x_breaks3, t0](double y) { return xb(y, t0); })
                                : BreaksFn{};
  popt.v_breaks = opt.y_breaks3 ? BreaksFn([yb = opt.y_breaks3, t0](double x) { return yb(x, t0); })
                                : BreaksFn{};

  const TwoVarEngine eng(make_two_var_spec(&planar, nullptr, base, DimTag::TwoDStatic, con, popt));
  // G(y) plays the second-route role (bracket in y), G_hat(x) the first-route one.
  FixingFn Gfn = build_fixing_fn(eng, region, false, base[1], popt);
  FixingFn Ghat = build_fixing_fn(eng, region, true, base[0], popt);
  double scale_g = 0.0, scale_gh = 0.0;
  const double rG =
      bracket_residual(eng, region, false, [&](double w) { return Gfn(w); }, &scale_g);
  const double rGh =
      bracket_residual(eng, region, true, [&](double w) { return Ghat(w); }, &scale_gh);

  // F fixes the spacetime flux brackets of both E components.
  const double t_ref = region.t ? region.t->hi : t0;
  const Field3 Ex = f.Ex, Ey = f.Ey;
  auto Fx = [Ex, t0, t_ref, c, n = opt.quad_n](double x, double y) {
    return -c * signed_line([&](double tp) { return Ex(x, y, tp); }, t0, t_ref, n, {});
  };
  auto Fy = [Ey, t0, t_ref, c, n = opt.quad_n](double x, double y) {
    return -c * signed_line([&](double tp) { return Ey(x, y, tp); }, t0, t_ref, n, {});
  };
  const int ng = 17;
  const Eigen::ArrayXd gx = Eigen::ArrayXd::LinSpaced(ng, region.x.lo, region.x.hi);
  const Eigen::ArrayXd gy = Eigen::ArrayXd::LinSpaced(ng, region.yt.lo, region.yt.hi);
  double fx_max = 0.0, fy_max = 0.0, mixed = 0.0;
  const double hx = (region.x.hi - region.x.lo) / 64.0;
  const double hy = (region.yt.hi - region.yt.lo) / 64.0;
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      if (!region.inside(gx[i], gy[j])) continue;
      fx_max = std::max(fx_max, std::abs(Fx(gx[i], gy[j])));
      fy_max = std::max(fy_max, std::abs(Fy(gx[i], gy[j])));
    }
  FixingFunctions out;
  if (fx_max > 1e-13 || fy_max > 1e-13) {
    // nonzero F: assemble the path integral and check mixed partials
    for (int i = 1; i + 1 < ng; i += 4)
      for (int j = 1; j + 1 < ng; j += 4) {
        if (!region.inside(gx[i], gy[j])) continue;
        const double dFx_dy = (Fx(gx[i], gy[j] + hy) - Fx(gx[i], gy[j] - hy)) / (2 * hy);
        const double dFy_dx = (Fy(gx[i] + hx, gy[j]) - Fy(gx[i] - hx, gy[j])) / (2 * hx);
        mixed = std::max(mixed, std::abs(dFx_dy - dFy_dx));
      }
    const double x0 = base[0], y0 = base[1];
    const int n = opt.quad_n;
    out.F = [Fx, Fy, x0, y0, n](double x, double y) {
      return signed_line([&](double xp) { return Fx(xp, y0); }, x0, x, n, {}) +
             signed_line([&](double yp) { return Fy(x, yp); }, y0, y, n, {});
    };
  }
  out.G = Gfn;
  out.G_hat = Ghat;
  out.condition_residuals["G"] = rG;
  out.condition_residuals["G_hat"] = rGh;
  out.condition_residuals["F_x"] = fx_max;
  out.condition_residuals["F_y"] = fy_max;
  if (mixed > 0.0) out.condition_residuals["F_mixed"] = mixed;
  if (rG > opt.fixing_tol * (1.0 + scale_g) || rGh > opt.fixing_tol * (1.0 + scale_gh))
    throw std::runtime_error("no admissible fixing function for the (x, y, t) routes");
  return out;
}

GaugeSolution lambda_full(const FieldSet& f, const PotentialSet& p, const FixingFunctions& fix,
                          const Eigen::Vector3d& base, Route route, const Constants& con,
                          const GaugeOptions& opt) {
  if (route != Route::full_primary && route != Route::full_dual)
    throw std::invalid_argument("lambda_full: route must be full_primary or full_dual");
  if (p.dim != DimTag::TwoPlusOneD)
    throw std::invalid_argument("lambda_full: wrong dimension tag");
  con.validate();
  const auto& member = route == Route::full_primary ? fix.G : fix.G_hat;
  if (!member)
    throw std::invalid_argument("lambda_full: missing fixing function for route " +
                                route_name(route));
  detail::FullSpec fs;
  fs.Ax = p.Ax;
  fs.Ay = p.Ay;
  fs.phi = p.phi;
  fs.Ex = f.Ex;
  fs.Ey = f.Ey;
  fs.B = f.B;
  fs.x0 = base[0];
  fs.y0 = base[1];
  fs.t0 = base[2];
  fs.c = con.c;
  fs.quad_n = std::max(101, opt.quad_n / 4);
  fs.refine = opt.refine;
  fs.x_breaks = opt.x_breaks3;
  fs.y_breaks = opt.y_breaks3;
  fs.t_breaks = opt.t_breaks3;
  auto impl = std::make_shared<detail::FullImpl>(std::move(fs), route, *member, fix.F);
  return finish_solution(std::move(impl), route, DimTag::TwoPlusOneD, base, fix, con, opt);
}

GaugeSolution apply_multiplicity(const GaugeSolution& sol, const Multiplicities& values) {
  if (sol.connectivity() == Connectivity::Simple)
    throw std::invalid_argument(
        "apply_multiplicity: configuration is simply connected; multiplicity constants do not "
        "apply");
  return detail::SolutionAccess::with_values(sol, values);
}

GaugeSolution build_route(const ScenarioConfig& cfg, Route route, bool engage_multiplicities) {
  GaugeOptions opt;
  opt.lambda0 = cfg.lambda0;
  opt.connectivity = cfg.connectivity;
  const DimTag dim = cfg.potentials.dim;
  if (dim == DimTag::OneDDynamic) {
    if (cfg.x_breaks) opt.u_breaks = [xb = cfg.x_breaks](double t) { return xb(0.0, t); };
    if (cfg.t_breaks) opt.v_breaks = [tb = cfg.t_breaks](double x) { return tb(x, 0.0); };
  } else {
    if (cfg.x_breaks) opt.u_breaks = [xb = cfg.x_breaks](double y) { return xb(y, 0.0); };
    if (cfg.y_breaks) opt.v_breaks = [yb = cfg.y_breaks](double x) { return yb(x, 0.0); };
  }
  opt.x_breaks3 = cfg.x_breaks;
  opt.y_breaks3 = cfg.y_breaks;
  opt.t_breaks3 = cfg.t_breaks;

  GaugeSolution sol = [&] {
    if (is_naive(route)) return naive_dirac_lambda(cfg.potentials, cfg.base, route, cfg.con, opt);
    switch (dim) {
      case DimTag::OneDDynamic: {
        auto fix = solve_fixing_1d(cfg.fields, cfg.obs, cfg.base, route, cfg.con, opt);
        return lambda_1d(cfg.fields, cfg.potentials, fix, cfg.base, route, cfg.con, opt);
      }
      case DimTag::TwoDStatic: {
        auto fix = solve_fixing_2d(cfg.fields, cfg.obs, cfg.base, route, cfg.con, opt);
        return lambda_2d_static(cfg.fields, cfg.potentials, fix, cfg.base, route, cfg.con, opt);
      }
      case DimTag::TwoPlusOneD: {
        auto fix = solve_fixing_full(cfg.fields, cfg.obs, cfg.base, cfg.con, opt);
        return lambda_full(cfg.fields, cfg.potentials, fix, cfg.base, route, cfg.con, opt);
      }
    }
    throw std::logic_error("build_route: unhandled dimension");
  }();

  if (engage_multiplicities) {
    if (!cfg.multiplicity_values)
      throw std::invalid_argument("build_route: scenario declares no multiplicity values");
    sol = apply_multiplicity(sol, *cfg.multiplicity_values);
  }
  return sol;
}

}  // namespace gaugelab
