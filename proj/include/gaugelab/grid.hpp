#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace gaugelab {

/// A closed 1-D sample interval [lo, hi] with n uniformly spaced nodes.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  int n = 401;

  Interval() = default;
  Interval(double lo_, double hi_, int n_ = 401) : lo(lo_), hi(hi_), n(n_) { validate(); }

  void validate() const {
    if (!(lo < hi))
      throw std::invalid_argument("Interval: lo must be < hi (got lo=" + std::to_string(lo) +
                                  ", hi=" + std::to_string(hi) + ")");
    if (n < 3) throw std::invalid_argument("Interval: n must be >= 3 (got " + std::to_string(n) + ")");
  }

  double spacing() const { return (hi - lo) / static_cast<double>(n - 1); }

  double length() const { return hi - lo; }

  Eigen::ArrayXd nodes() const {
    return Eigen::ArrayXd::LinSpaced(n, lo, hi);
  }

  bool contains(double u) const { return u >= lo && u <= hi; }
};

enum class AxisTag { X, Y, T };

inline const char* axis_name(AxisTag tag) {
  switch (tag) {
    case AxisTag::X: return "x";
    case AxisTag::Y: return "y";
    case AxisTag::T: return "t";
  }
  return "?";
}

struct Axis {
  AxisTag tag = AxisTag::X;
  Interval iv;
};

/// Ordered set of 1, 2 or 3 axes spanning the sampling box.
struct BoxDomain {
  std::vector<Axis> axes;

  BoxDomain() = default;
  explicit BoxDomain(std::vector<Axis> ax) : axes(std::move(ax)) { validate(); }

  void validate() const {
    if (axes.empty() || axes.size() > 3)
      throw std::invalid_argument("BoxDomain: expected 1..3 axes");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      axes[i].iv.validate();
      for (std::size_t j = i + 1; j < axes.size(); ++j)
        if (axes[i].tag == axes[j].tag)
          throw std::invalid_argument(std::string("BoxDomain: duplicate axis tag ") +
                                      axis_name(axes[i].tag));
    }
  }

  bool has(AxisTag tag) const {
    for (const auto& a : axes)
      if (a.tag == tag) return true;
    return false;
  }

  const Interval& interval(AxisTag tag) const {
    for (const auto& a : axes)
      if (a.tag == tag) return a.iv;
    throw std::invalid_argument(std::string("BoxDomain: no axis tagged ") + axis_name(tag));
  }
};

}  // namespace gaugelab
