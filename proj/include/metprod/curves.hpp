// Copyright 2026 The metprod Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Curves on [0, 1] and their length as the supremum of subdivision sums,
// approximated by uniform dyadic subdivisions.

#ifndef METPROD_CURVES_HPP_
#define METPROD_CURVES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "metprod/common.hpp"
#include "metprod/phi.hpp"
#include "metprod/product.hpp"
#include "metprod/spaces.hpp"

namespace metprod {

enum class CurveKind { polyline, analytic, product };

class Curve {
 public:
  using Evaluator = std::function<Point(double)>;

  /// Piecewise affine through the breakpoints; breakpoint k sits at
  /// parameter k / (count - 1).
  static Curve polyline(std::vector<Point> breakpoints) {
    if (breakpoints.size() < 2) throw InvalidArgument("polyline needs at least two breakpoints");
    std::vector<double> params(breakpoints.size());
    for (std::size_t k = 0; k < params.size(); ++k) params[k] = static_cast<double>(k) / (params.size() - 1);
    return polyline_at(std::move(breakpoints), std::move(params));
  }

  /// Polyline parameterized proportionally to `space`-distance along it.
  /// Affine pieces in line, half-line and lp spaces have constant speed, so
  /// the whole curve does.
  static Curve constant_speed_polyline(const MetricSpace& space, std::vector<Point> breakpoints) {
    if (breakpoints.size() < 2) throw InvalidArgument("polyline needs at least two breakpoints");
    std::vector<double> cum(breakpoints.size(), 0.0);
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
      cum[k] = cum[k - 1] + space.distance(breakpoints[k - 1], breakpoints[k]);
    }
    if (cum.back() == 0.0) return polyline(std::move(breakpoints));
    for (double& c : cum) c /= cum.back();
    cum.back() = 1.0;
    return polyline_at(std::move(breakpoints), std::move(cum));
  }

  /// a + (b - a) t^k. k = 1 is the constant-speed segment.
  static Curve segment(Point a, Point b, double speed_exponent = 1.0) {
    if (a.size() != b.size()) throw InvalidArgument("segment endpoints differ in dimension");
    if (!(speed_exponent > 0.0)) throw InvalidArgument("segment speed exponent must be positive");
    auto eval = [a, b, speed_exponent](double t) {
      const double s = speed_exponent == 1.0 ? t : std::pow(t, speed_exponent);
      Point p(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + (b[i] - a[i]) * s;
      return p;
    };
    Curve c(CurveKind::analytic, "segment", std::move(eval));
    return c;
  }

  /// center + radius (cos theta, sin theta), theta from theta0 to theta1.
  static Curve circle_arc(Point center, double radius, double theta0, double theta1) {
    if (center.size() != 2) throw InvalidArgument("circle arc lives in the plane");
    auto eval = [center, radius, theta0, theta1](double t) {
      const double th = theta0 + (theta1 - theta0) * t;
      return Point{center[0] + radius * std::cos(th), center[1] + radius * std::sin(th)};
    };
    return Curve(CurveKind::analytic, "circle-arc", std::move(eval));
  }

  static Curve analytic(std::string name, Evaluator eval, std::size_t kinks = 0) {
    Curve c(CurveKind::analytic, std::move(name), std::move(eval));
    c.kinks_ = kinks;
    return c;
  }

  /// t -> (c_1(t), ..., c_k(t)) in the product of the components' spaces.
  static Curve product_of(std::vector<Curve> components) {
    if (components.empty()) throw InvalidArgument("product curve needs components");
    auto parts = std::make_shared<const std::vector<Curve>>(std::move(components));
    auto eval = [parts](double t) {
      Point p;
      for (const auto& c : *parts) {
        const Point q = c(t);
        p.insert(p.end(), q.begin(), q.end());
      }
      return p;
    };
    Curve c(CurveKind::product, "product", std::move(eval));
    for (const auto& part : *parts) c.kinks_ += part.kinks();
    c.components_ = std::move(parts);
    return c;
  }

  Point operator()(double t) const { return (*eval_)(std::clamp(t, 0.0, 1.0)); }
  Point start() const { return (*this)(0.0); }
  Point end() const { return (*this)(1.0); }

  CurveKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Number of interior points where the curve may turn a corner.
  std::size_t kinks() const { return kinks_; }
  const std::vector<Curve>& components() const {
    static const std::vector<Curve> none;
    return components_ ? *components_ : none;
  }

 private:
  Curve(CurveKind kind, std::string name, Evaluator eval)
      : kind_(kind), name_(std::move(name)), eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

  static Curve polyline_at(std::vector<Point> bps, std::vector<double> params) {
    const std::size_t dim = bps.front().size();
    for (const auto& b : bps)
      if (b.size() != dim) throw InvalidArgument("polyline breakpoints differ in dimension");
    auto eval = [bps, params](double t) {
      auto it = std::upper_bound(params.begin(), params.end(), t);
      std::size_t k = it == params.begin() ? 0 : static_cast<std::size_t>(it - params.begin()) - 1;
      if (k >= bps.size() - 1) return bps.back();
      const double span = params[k + 1] - params[k];
      const double u = span > 0.0 ? (t - params[k]) / span : 0.0;
      Point p(bps[k].size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = bps[k][i] + (bps[k + 1][i] - bps[k][i]) * u;
      return p;
    };
    Curve c(CurveKind::polyline, "polyline", std::move(eval));
    c.kinks_ = bps.size() - 2;
    return c;
  }

  CurveKind kind_;
  std::string name_;
  std::shared_ptr<const Evaluator> eval_;
  std::size_t kinks_ = 0;
  std::shared_ptr<const std::vector<Curve>> components_;
};

struct LengthEstimate {
  double length = 0.0;
  /// L_1, L_2, L_4, ..., L_{2^depth}.
  std::vector<double> trace;
  bool divergent = false;
};

/// Trace growth beyond this multiple of the first subdivision sums flags a
/// non-rectifiable path.
inline constexpr double kDivergenceFactor = 1e6;

namespace detail {

inline std::vector<Point> sample_curve(const MetricSpace& space, const Curve& c, std::size_t n) {
  std::vector<Point> pts(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    pts[j] = c(static_cast<double>(j) / static_cast<double>(n));
    space.validate_point(pts[j]);
  }
  return pts;
}

inline std::size_t segments_at(std::size_t depth) {
  if (depth > 30) throw InvalidArgument("subdivision depth must be <= 30");
  return std::size_t{1} << depth;
}

}  // namespace detail

/// Dyadic subdivision sums L_N = sum_j d(c(t_{j-1}), c(t_j)) for
/// N = 1, 2, ..., 2^depth, accumulated in index order.
inline LengthEstimate curve_length(const MetricSpace& space, const Curve& c, std::size_t depth) {
  if (depth < 1) throw InvalidArgument("curve length depth must be >= 1");
  const std::size_t n = detail::segments_at(depth);
  const auto pts = detail::sample_curve(space, c, n);
  LengthEstimate est;
  for (std::size_t level = 0; level <= depth; ++level) {
    const std::size_t stride = n >> level;
    double sum = 0.0;
    for (std::size_t j = stride; j <= n; j += stride) sum += space.distance_unchecked(pts[j - stride], pts[j]);
    est.trace.push_back(sum);
  }
  est.length = est.trace.back();
  const double reference = std::max(est.trace[0], est.trace[1]);
  est.divergent = reference > 0.0 && est.length > kDivergenceFactor * reference;
  return est;
}

/// max(floor, C / 2^depth): dyadic sums of a curve with k kinks and length L
/// are within 2 (k + 1) L / 2^depth of the true length.
inline double length_tolerance(std::size_t depth, double c, double floor = 1e-6) {
  return std::max(floor, c / static_cast<double>(detail::segments_at(depth)));
}

inline double length_constant(const Curve& c, double length) {
  return 2.0 * static_cast<double>(c.kinks() + 1) * length;
}

/// Checks |length of c on [s, t]| = L (t - s) on the grid s, t in {k / grid},
/// all measured with the same 2^depth-step subdivision. grid must divide
/// 2^depth. Witness layout: [s, t, measured, expected].
inline ValidationReport arclength_check(const MetricSpace& space, const Curve& c, std::size_t grid,
                                        std::size_t depth = 10, const Tolerances& tol = {}) {
  const std::size_t n = detail::segments_at(depth);
  if (grid == 0 || grid > n || n % grid != 0) throw InvalidArgument("arclength grid must divide 2^depth");
  const auto pts = detail::sample_curve(space, c, n);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t j = 1; j <= n; ++j) prefix[j] = prefix[j - 1] + space.distance_unchecked(pts[j - 1], pts[j]);
  const double total = prefix[n];
  if (!std::isfinite(total)) return undetermined_report("arclength", "curve length is not finite");

  const double tau = length_tolerance(depth, length_constant(c, total), tol.length_floor);
  MarginTracker t("arclength", tau);
  const std::size_t step = n / grid;
  for (std::size_t a = 0; a < grid; ++a) {
    for (std::size_t b = a + 1; b <= grid; ++b) {
      const double s = static_cast<double>(a) / grid, u = static_cast<double>(b) / grid;
      const double measured = prefix[b * step] - prefix[a * step];
      const double expected = total * (u - s);
      t.observe(std::abs(measured - expected), [&] { return Point{s, u, measured, expected}; });
    }
  }
  return t.finish("witness layout: [s, t, measured, expected]");
}

/// Measured length of the product curve versus Phi(l_1, ..., l_k) with l_i
/// the measured factor lengths. Components must have constant speed and Phi
/// must be norm-induced; otherwise the verdict is undetermined.
/// Witness layout: [L, Phi(l), l_1, ..., l_k].
inline ValidationReport product_curve_length_check(const ProductSpace& prod, const std::vector<Curve>& components,
                                                   std::size_t depth, const Tolerances& tol = {}) {
  const std::string id = "product_curve_length";
  if (components.size() != prod.dimension()) throw InvalidArgument("need one component curve per factor");
  if (!prod.classification().at_least(PhiClass::norm_induced)) {
    return undetermined_report(id, "phi is not norm-induced");
  }
  std::vector<double> lengths;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto speed = arclength_check(prod.factors()[i], components[i], 8, depth, tol);
    if (!speed.passed()) {
      return undetermined_report(id, "component " + std::to_string(i) + " is not parameterized at constant speed");
    }
    lengths.push_back(curve_length(prod.factors()[i], components[i], depth).length);
  }
  const Curve pc = Curve::product_of(components);
  const double measured = curve_length(prod.space(), pc, depth).length;
  const double expected = prod.phi().evaluate(lengths);
  const double tau = length_tolerance(depth, length_constant(pc, std::max(measured, expected)), tol.length_floor);
  MarginTracker t(id, tau);
  Point w{measured, expected};
  w.insert(w.end(), lengths.begin(), lengths.end());
  t.observe(std::abs(measured - expected), [&] { return w; });
  return t.finish("witness layout: [L, Phi(l), l_1, ..., l_k]");
}

/// The plane R x R under the two-valued Phi.
inline MetricSpace two_valued_plane() {
  return MetricSpace::product({MetricSpace::real_line(), MetricSpace::real_line()}, PhiFunction::two_valued(2));
}

/// For an injective path in the two-valued plane every dyadic step is
/// nonzero and so has length >= 1: L_{2^k} >= 2^k for k = 1..depth, exactly.
/// Endpoints that coincide (within tau in every coordinate) make the probe
/// inapplicable. Witness layout: [k, L_{2^k}].
inline ValidationReport non_length_space_probe(const Curve& path, std::size_t depth, const Tolerances& tol = {}) {
  const MetricSpace plane = two_valued_plane();
  const Point a = path.start(), b = path.end();
  bool separated = false;
  for (std::size_t i = 0; i < a.size(); ++i) separated |= std::abs(a[i] - b[i]) > tol.metric;
  const LengthEstimate est = curve_length(plane, path, depth);
  if (!separated) {
    auto r = undetermined_report("non_length_space", "endpoints coincide; divergence probe not applicable");
    r.witness = {static_cast<double>(depth), est.length};
    return r;
  }
  MarginTracker t("non_length_space", 0.0);
  for (std::size_t k = 1; k <= depth; ++k) {
    const double bound = static_cast<double>(std::size_t{1} << k);
    t.observe(bound - est.trace[k], [&] { return Point{static_cast<double>(k), est.trace[k]}; });
  }
  return t.finish("subdivision sums must be at least 2^k at level k");
}

/// Runs the probe on a seeded family of injective paths (straight
/// segments, monotone polylines, sine wiggles) between endpoints with
/// distinct first coordinates. Passes iff divergence is confirmed for all.
inline ValidationReport non_length_space_demo(std::size_t depth, std::size_t paths = 9, std::uint64_t seed = 0,
                                              const Tolerances& tol = {}) {
  Rng rng(derive_seed(seed, 0x11));
  MarginTracker t("non_length_space", 0.0);
  for (std::size_t k = 0; k < paths; ++k) {
    const double a1 = rng.uniform(-5.0, 0.0), b1 = rng.uniform(0.5, 5.0);
    const double a2 = rng.uniform(-5.0, 5.0), b2 = rng.uniform(-5.0, 5.0);
    Curve path = [&] {
      switch (k % 3) {
        case 0: return Curve::segment({a1, a2}, {b1, b2});
        case 1: {
          const double m1 = a1 + (b1 - a1) * rng.uniform(0.2, 0.8);
          return Curve::polyline({{a1, a2}, {m1, rng.uniform(-5.0, 5.0)}, {b1, b2}});
        }
        default:
          return Curve::analytic("sine-wiggle", [=](double s) {
            return Point{a1 + (b1 - a1) * s, a2 + (b2 - a2) * s + std::sin(3.0 * std::numbers::pi * s)};
          });
      }
    }();
    const auto r = non_length_space_probe(path, depth, tol);
    t.observe(r.worst_margin, [&] {
      Point w{static_cast<double>(k), a1, a2, b1, b2};
      w.insert(w.end(), r.witness.begin(), r.witness.end());
      return w;
    });
  }
  return t.finish("witness layout: [path index, a1, a2, b1, b2, k, L_{2^k}]");
}

}  // namespace metprod

#endif  // METPROD_CURVES_HPP_
