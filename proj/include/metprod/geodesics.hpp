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

// Unit-speed geodesics in catalog spaces and Phi-products, plus the
// geodesic-level checks: geodesy on a grid, uniqueness, Busemann convexity
// along geodesic pairs and the CAT(0) midpoint comparison.

#ifndef METPROD_GEODESICS_HPP_
#define METPROD_GEODESICS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metprod/common.hpp"
#include "metprod/product.hpp"
#include "metprod/spaces.hpp"

namespace metprod {

/// Picks a representative when geodesics are not unique. `corner(k)` uses
/// 1-based axis numbers: in l1 it moves axis k fully first and the remaining
/// axes in cyclic order; in l-infinity it sends axis k along a tent
/// (full speed out, full speed back).
struct GeodesicSelector {
  enum class Kind { affine, corner };
  Kind kind = Kind::affine;
  std::size_t axis = 0;

  static GeodesicSelector affine() { return {}; }
  static GeodesicSelector corner(std::size_t axis) {
    if (axis == 0) throw InvalidArgument("corner selector axes are numbered from 1");
    return {Kind::corner, axis};
  }

  std::string describe() const {
    return kind == Kind::affine ? "affine" : "corner(" + std::to_string(axis) + ")";
  }
};

/// Unit-speed geodesic t in [0, D] -> point, gamma(0) = from, gamma(D) = to.
class Geodesic {
 public:
  using Evaluator = std::function<Point(double)>;

  Geodesic(Point from, Point to, double length, Evaluator eval)
      : from_(std::move(from)), to_(std::move(to)), length_(length),
        eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

  static Geodesic constant(Point p) {
    return Geodesic(p, p, 0.0, [p](double) { return p; });
  }

  /// a followed by b; a.to() must equal b.from().
  static Geodesic concat(const Geodesic& a, const Geodesic& b) {
    const double split = a.length();
    return Geodesic(a.from(), b.to(), a.length() + b.length(),
                    [a, b, split](double t) { return t <= split ? a(t) : b(t - split); });
  }

  Point operator()(double t) const { return (*eval_)(std::clamp(t, 0.0, length_)); }
  /// gamma(u D) for u in [0, 1].
  Point at_fraction(double u) const { return (*this)(u * length_); }

  double length() const { return length_; }
  const Point& from() const { return from_; }
  const Point& to() const { return to_; }

 private:
  Point from_, to_;
  double length_;
  std::shared_ptr<const Evaluator> eval_;
};

namespace detail {

inline Geodesic affine_geodesic(Point x, Point y, double d) {
  if (d == 0.0) return Geodesic::constant(std::move(x));
  return Geodesic(x, y, d, [x, y, d](double t) {
    const double u = t / d;
    Point p(x.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x[i] + (y[i] - x[i]) * u;
    return p;
  });
}

/// Weighted l1: move each axis fully, starting with `first`, then cyclically.
inline Geodesic l1_corner_geodesic(const MetricSpace& space, Point x, Point y, double d, std::size_t first) {
  const std::size_t m = x.size();
  const auto w = space.weights();
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = (first + k) % m;
  return Geodesic(x, y, d, [x, y, w, order](double t) {
    Point p = x;
    double remaining = t;
    for (std::size_t axis : order) {
      const double delta = y[axis] - x[axis];
      const double cost = w[axis] * std::abs(delta);
      if (remaining >= cost) {
        p[axis] = y[axis];
        remaining -= cost;
      } else {
        p[axis] = x[axis] + (cost > 0.0 ? delta * remaining / cost : 0.0);
        remaining = 0.0;
      }
    }
    return p;
  });
}

/// l-infinity: all axes affine except `axis`, which runs a unit-speed tent
/// reaching its target at time D. Stays a geodesic because some other axis
/// realizes the max at unit speed.
inline Geodesic linf_tent_geodesic(Point x, Point y, double d, std::size_t axis) {
  const double delta = y[axis] - x[axis];
  if (std::abs(delta) >= d) return affine_geodesic(std::move(x), std::move(y), d);
  const double sign = delta >= 0.0 ? 1.0 : -1.0;
  const double mag = std::abs(delta);
  return Geodesic(x, y, d, [x, y, d, axis, sign, mag](double t) {
    Point p(x.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x[i] + (y[i] - x[i]) * (t / d);
    p[axis] = x[axis] + sign * std::min(t, mag + (d - t));
    return p;
  });
}

inline Geodesic build_product_geodesic(const MetricSpace& space, const Point& x, const Point& y,
                                       std::span<const GeodesicSelector> selectors);

inline Geodesic factor_geodesic_impl(const MetricSpace& space, const Point& x, const Point& y,
                                     const GeodesicSelector& sel) {
  const double d = space.distance(x, y);
  switch (space.kind()) {
    case SpaceKind::real_line:
    case SpaceKind::half_line: return affine_geodesic(x, y, d);
    case SpaceKind::lp: {
      const double p = space.exponent();
      if (sel.kind == GeodesicSelector::Kind::affine || (p > 1.0 && !std::isinf(p)) || d == 0.0) {
        return affine_geodesic(x, y, d);
      }
      if (sel.axis > x.size()) throw InvalidArgument("corner selector axis exceeds the space dimension");
      if (p == 1.0) return l1_corner_geodesic(space, x, y, d, sel.axis - 1);
      return linf_tent_geodesic(x, y, d, sel.axis - 1);
    }
    case SpaceKind::product:
      if (!space.properties().geodesic.value_or(false)) {
        throw PreconditionError(space.describe() + " is not known to be geodesic");
      }
      return build_product_geodesic(space, x, y, {});
    case SpaceKind::discrete:
    case SpaceKind::finite: break;
  }
  throw PreconditionError(space.describe() + " is not a geodesic space");
}

/// Components run along factor geodesics at constant speeds d_i / D, so the
/// factor distance vector from x at time t is (t / D) (d_1, ..., d_n).
inline Geodesic build_product_geodesic(const MetricSpace& space, const Point& x, const Point& y,
                                       std::span<const GeodesicSelector> selectors) {
  if (!selectors.empty() && selectors.size() != space.factor_count()) {
    throw InvalidArgument("need one selector per factor");
  }
  const double d = space.distance(x, y);
  if (d == 0.0) return Geodesic::constant(x);
  std::vector<Geodesic> parts;
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    const auto fx = space.factor_point(x, i), fy = space.factor_point(y, i);
    const GeodesicSelector sel = selectors.empty() ? GeodesicSelector::affine() : selectors[i];
    parts.push_back(factor_geodesic_impl(space.factors()[i], Point(fx.begin(), fx.end()), Point(fy.begin(), fy.end()), sel));
  }
  return Geodesic(x, y, d, [parts, d](double t) {
    Point p;
    for (const auto& g : parts) {
      const Point q = g(t * g.length() / d);
      p.insert(p.end(), q.begin(), q.end());
    }
    return p;
  });
}

}  // namespace detail

/// Closed-form geodesic of a catalog space (line, half-line, lp, or a
/// product already known to be geodesic).
inline Geodesic factor_geodesic(const MetricSpace& space, const Point& x, const Point& y,
                                const GeodesicSelector& selector = GeodesicSelector::affine()) {
  space.validate_point(x);
  space.validate_point(y);
  return detail::factor_geodesic_impl(space, x, y, selector);
}

/// Product geodesic for norm-induced Phi over geodesic factors; refuses
/// otherwise, since no geodesic is guaranteed to exist.
inline Geodesic product_geodesic(const ProductSpace& prod, const Point& x, const Point& y,
                                 std::span<const GeodesicSelector> selectors = {}) {
  if (!prod.classification().at_least(PhiClass::norm_induced)) {
    throw PreconditionError("product geodesics need a norm-induced phi; " + prod.phi().name() + " is " +
                            to_string(prod.classification().phi_class));
  }
  for (const auto& f : prod.factors()) {
    if (!f.properties().geodesic.value_or(false)) throw PreconditionError("factor " + f.describe() + " is not geodesic");
  }
  prod.space().validate_point(x);
  prod.space().validate_point(y);
  return detail::build_product_geodesic(prod.space(), x, y, selectors);
}

/// |d(gamma(s), gamma(t)) - |s - t|| <= tau max(1, D) on a grid x grid set
/// of parameter pairs, plus the endpoint conditions. Witness: [s, t, d].
inline ValidationReport geodesy_test(const MetricSpace& space, const Geodesic& g, std::size_t grid,
                                     const Tolerances& tol = {}) {
  if (grid < 2) throw InvalidArgument("geodesy grid needs at least two points");
  const double len = g.length();
  const double scale = relative_scale(len);
  MarginTracker t("geodesy", tol.metric);
  std::vector<Point> pts(grid);
  std::vector<double> ts(grid);
  for (std::size_t a = 0; a < grid; ++a) {
    ts[a] = len * static_cast<double>(a) / static_cast<double>(grid - 1);
    pts[a] = g(ts[a]);
    space.validate_point(pts[a]);
  }
  t.observe(space.distance(pts.front(), g.from()) / scale, [&] { return Point{0.0, 0.0, space.distance(pts.front(), g.from())}; });
  t.observe(space.distance(pts.back(), g.to()) / scale, [&] { return Point{len, len, space.distance(pts.back(), g.to())}; });
  for (std::size_t a = 0; a < grid; ++a) {
    for (std::size_t b = a + 1; b < grid; ++b) {
      const double d = space.distance_unchecked(pts[a], pts[b]);
      t.observe(std::abs(d - (ts[b] - ts[a])) / scale, [&] { return Point{ts[a], ts[b], d}; });
    }
  }
  return t.finish("witness layout: [s, t, d(gamma(s), gamma(t))]");
}

/// d_i(x_i, gamma_i(t)) = (t / D) d_i(x_i, y_i) for every factor on a grid of
/// t. Witness: [t, factor, measured, expected].
inline ValidationReport component_progress_check(const MetricSpace& product, const Geodesic& g, std::size_t grid,
                                                 const Tolerances& tol = {}) {
  if (grid < 2) throw InvalidArgument("progress grid needs at least two points");
  const double len = g.length();
  const auto total = product.factor_distances(g.from(), g.to());
  MarginTracker t("component_progress", tol.metric);
  for (std::size_t a = 0; a < grid; ++a) {
    const double s = len * static_cast<double>(a) / static_cast<double>(grid - 1);
    const auto here = product.factor_distances(g.from(), g(s));
    for (std::size_t i = 0; i < total.size(); ++i) {
      const double expected = len > 0.0 ? (s / len) * total[i] : 0.0;
      t.observe(std::abs(here[i] - expected) / relative_scale(len),
                [&] { return Point{s, static_cast<double>(i), here[i], expected}; });
    }
  }
  return t.finish("witness layout: [t, factor, measured, expected]");
}

inline double sup_distance(const MetricSpace& space, const Geodesic& a, const Geodesic& b, std::size_t grid,
                           double* at = nullptr) {
  double best = 0.0;
  for (std::size_t k = 0; k < grid; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(grid - 1);
    const double d = space.distance_unchecked(a.at_fraction(u), b.at_fraction(u));
    if (d > best) {
      best = d;
      if (at) *at = u;
    }
  }
  return best;
}

struct UniquenessResult {
  ValidationReport report;
  std::vector<Geodesic> found;
  /// Indices into `found` of two distinct geodesics when not unique.
  std::optional<std::pair<std::size_t, std::size_t>> witnesses;
  double sup_distance = 0.0;

  bool unique() const { return report.passed(); }
};

struct UniquenessOptions {
  std::size_t grid = 33;
  std::size_t perturbations = 64;
  std::uint64_t seed = 0;
};

/// Collects geodesics from x to y: one per selector set, plus every
/// two-segment geodesic through a perturbed midpoint m' (within D/4 of the
/// constructed midpoint) with d(x, m') + d(m', y) = D. Unique iff all of
/// them agree pointwise within tau.
inline UniquenessResult uniqueness_probe(const ProductSpace& prod, const Point& x, const Point& y,
                                         const std::vector<std::vector<GeodesicSelector>>& selector_sets = {},
                                         const UniquenessOptions& opt = {}, const Tolerances& tol = {}) {
  const MetricSpace& space = prod.space();
  UniquenessResult res;
  if (selector_sets.empty()) {
    res.found.push_back(product_geodesic(prod, x, y));
  } else {
    for (const auto& sel : selector_sets) res.found.push_back(product_geodesic(prod, x, y, sel));
  }
  const double len = res.found.front().length();
  const double scale = relative_scale(len);

  if (len > 0.0 && opt.perturbations > 0) {
    const Point mid = res.found.front().at_fraction(0.5);
    const auto cont = space.continuous_coordinates();
    const auto nonneg = space.nonnegative_coordinates();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < cont.size(); ++i)
      if (cont[i]) free.push_back(i);

    std::vector<Point> dirs;
    const std::size_t dim = mid.size();
    for (std::size_t a : free) {
      for (double s : {1.0, -1.0}) {
        Point u(dim, 0.0);
        u[a] = s;
        dirs.push_back(u);
      }
    }
    for (std::size_t i = 0; i < free.size(); ++i) {
      for (std::size_t j = i + 1; j < free.size(); ++j) {
        for (double s : {1.0, -1.0}) {
          for (double r : {1.0, -1.0}) {
            Point u(dim, 0.0);
            u[free[i]] = s / std::numbers::sqrt2;
            u[free[j]] = r / std::numbers::sqrt2;
            dirs.push_back(u);
          }
        }
      }
    }
    Rng rng(derive_seed(opt.seed, 0x77));
    while (!free.empty() && dirs.size() < opt.perturbations) {
      Point u(dim, 0.0);
      for (std::size_t a : free) u[a] = rng.uniform(-1.0, 1.0);
      const double n = euclidean_norm(u);
      if (n == 0.0) continue;
      for (double& v : u) v /= n;
      dirs.push_back(u);
    }
    if (dirs.size() > opt.perturbations) dirs.resize(opt.perturbations);

    const double radii[] = {len / 4.0, len / 8.0, len / 16.0};
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const double r = radii[k % 3];
      Point m = mid;
      for (std::size_t i = 0; i < dim; ++i) {
        m[i] += r * dirs[k][i];
        if (nonneg[i]) m[i] = std::max(0.0, m[i]);
      }
      const double gap = space.distance_unchecked(x, m) + space.distance_unchecked(m, y) - len;
      if (std::abs(gap) > tol.metric * scale) continue;
      Geodesic g = Geodesic::concat(detail::build_product_geodesic(space, x, m, {}),
                                    detail::build_product_geodesic(space, m, y, {}));
      if (geodesy_test(space, g, opt.grid, tol).passed()) res.found.push_back(std::move(g));
    }
  }

  MarginTracker t("uniqueness", tol.metric);
  std::size_t worst = 0;
  double worst_at = 0.0;
  for (std::size_t k = 1; k < res.found.size(); ++k) {
    double at = 0.0;
    const double d = sup_distance(space, res.found.front(), res.found[k], opt.grid, &at);
    if (d > res.sup_distance) {
      res.sup_distance = d;
      worst = k;
      worst_at = at;
    }
  }
  if (res.found.size() == 1) {
    res.report = undetermined_report("uniqueness", "only one geodesic constructed and no alternative found");
    res.report.verdict = Verdict::pass;
    res.report.samples = 1;
    res.report.worst_margin = 0.0;
    res.report.threshold = tol.metric;
    return res;
  }
  t.observe(res.sup_distance / scale, [&] {
    const Point a = res.found.front().at_fraction(worst_at);
    const Point b = res.found[worst].at_fraction(worst_at);
    Point w{worst_at, res.sup_distance};
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
  });
  res.report = t.finish(std::to_string(res.found.size()) + " geodesics compared; witness layout: [u, sup distance, gamma_a(uD), gamma_b(uD)]");
  res.report.samples = res.found.size();
  if (res.report.failed()) res.witnesses = std::make_pair(std::size_t{0}, worst);
  return res;
}

/// Joint midpoint convexity of (s, t) -> d(gamma_1(s), gamma_2(t)) on
/// [0, 1]^2, both geodesics taken at constant speed over [0, 1]. All grid
/// point pairs whose midpoint is again a grid point are tested. The check
/// is global on the given pair. Witness: [s, t, s', t', lhs, rhs].
inline ValidationReport busemann_convexity_check(const MetricSpace& space, const Geodesic& g1, const Geodesic& g2,
                                                 std::size_t grid, const Tolerances& tol = {}) {
  if (grid < 2) throw InvalidArgument("convexity grid needs at least two intervals");
  const std::size_t n = grid + 1;
  std::vector<Point> p1(n), p2(n);
  for (std::size_t a = 0; a < n; ++a) {
    const double u = static_cast<double>(a) / static_cast<double>(grid);
    p1[a] = g1.at_fraction(u);
    p2[a] = g2.at_fraction(u);
  }
  std::vector<double> f(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) f[a * n + b] = space.distance_unchecked(p1[a], p2[b]);

  MarginTracker t("busemann_convexity", tol.metric);
  const double g = static_cast<double>(grid);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a2 = a; a2 < n; a2 += 2)
        for (std::size_t b2 = b % 2; b2 < n; b2 += 2) {
          if (a2 == a && b2 <= b) continue;
          const double rhs = 0.5 * (f[a * n + b] + f[a2 * n + b2]);
          const double lhs = f[((a + a2) / 2) * n + (b + b2) / 2];
          t.observe((lhs - rhs) / relative_scale(rhs),
                    [&] { return Point{a / g, b / g, a2 / g, b2 / g, lhs, rhs}; });
        }
  return t.finish("global convexity on the given geodesic pair; witness layout: [s, t, s', t', lhs, rhs]");
}

struct Triangle {
  Point p, q, r;
};

inline Point geodesic_midpoint(const MetricSpace& space, const Point& a, const Point& b) {
  return factor_geodesic(space, a, b).at_fraction(0.5);
}

/// Length of the median from p-bar to the midpoint of q-bar r-bar in the
/// Euclidean triangle with sides |pq| = a, |pr| = b, |qr| = c.
inline double comparison_median(double a, double b, double c) {
  return 0.5 * std::sqrt(std::max(0.0, 2.0 * a * a + 2.0 * b * b - c * c));
}

/// CAT(0) midpoint comparison: d(p, m) <= |p-bar m-bar| for m the geodesic
/// midpoint of q and r. Triples violating the triangle inequality beyond
/// tau are skipped. Witness: [p, q, r, m].
inline ValidationReport cat0_four_point_check(const MetricSpace& space, std::span<const Triangle> triangles,
                                              const Tolerances& tol = {}) {
  MarginTracker t("cat0_four_point", tol.metric);
  for (const auto& tri : triangles) {
    const double a = space.distance(tri.p, tri.q);
    const double b = space.distance(tri.p, tri.r);
    const double c = space.distance(tri.q, tri.r);
    const double sides[] = {a, b, c};
    bool degenerate = false;
    for (int k = 0; k < 3; ++k) {
      const double others = sides[(k + 1) % 3] + sides[(k + 2) % 3];
      if (sides[k] > others + tol.metric * relative_scale(others)) degenerate = true;
    }
    if (degenerate) {
      t.skip();
      continue;
    }
    const Point m = geodesic_midpoint(space, tri.q, tri.r);
    const double dm = space.distance(tri.p, m);
    const double bound = comparison_median(a, b, c);
    t.observe((dm - bound) / relative_scale(bound), [&] { return concat({tri.p, tri.q, tri.r, m}); });
  }
  return t.finish("kappa = 0 comparison only; witness layout: [p, q, r, m]");
}

inline ValidationReport cat0_four_point_check(const MetricSpace& space, std::size_t count, std::uint64_t seed,
                                              double radius = 10.0, const Tolerances& tol = {}) {
  const auto pts = sample_points(space, 3 * count, seed, radius);
  std::vector<Triangle> tris;
  tris.reserve(count);
  for (std::size_t k = 0; k < count; ++k) tris.push_back({pts[3 * k], pts[3 * k + 1], pts[3 * k + 2]});
  return cat0_four_point_check(space, tris, tol);
}

}  // namespace metprod

#endif  // METPROD_GEODESICS_HPP_
