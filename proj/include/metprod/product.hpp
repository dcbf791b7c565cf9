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

#ifndef METPROD_PRODUCT_HPP_
#define METPROD_PRODUCT_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "metprod/common.hpp"
#include "metprod/phi.hpp"
#include "metprod/spaces.hpp"

namespace metprod {

namespace detail {

inline std::optional<bool> all_true(const std::vector<MetricSpace>& fs, std::optional<bool> DeclaredProperties::*flag) {
  for (const auto& f : fs) {
    const auto v = f.properties().*flag;
    if (!v.has_value() || !*v) return std::nullopt;
  }
  return true;
}

/// Properties the classification licenses: norm-induced Phi preserves
/// length and geodesic spaces; strictly convex norm balls additionally
/// preserve unique geodesics, convexity and (additively) Minkowski rank.
/// Anything not licensed stays unknown.
inline DeclaredProperties licensed_properties(const std::vector<MetricSpace>& factors, const Classification& c) {
  DeclaredProperties p;
  if (c.at_least(PhiClass::norm_induced)) {
    p.length_space = all_true(factors, &DeclaredProperties::length_space);
    p.geodesic = all_true(factors, &DeclaredProperties::geodesic);
  }
  if (c.at_least(PhiClass::strictly_convex_norm)) {
    p.uniquely_geodesic = all_true(factors, &DeclaredProperties::uniquely_geodesic);
    p.convex = all_true(factors, &DeclaredProperties::convex);
    int rank = 0;
    bool known = true;
    for (const auto& f : factors) {
      if (!f.properties().minkowski_rank) {
        known = false;
        break;
      }
      rank += *f.properties().minkowski_rank;
    }
    if (known) p.minkowski_rank = rank;
  }
  if (!p.geodesic) p.uniquely_geodesic.reset();
  return p;
}

}  // namespace detail

/// (X_1 x ... x X_n, d_Phi) together with the classification of Phi that
/// licensed its declared properties.
class ProductSpace {
 public:
  ProductSpace(std::vector<MetricSpace> factors, PhiFunction phi, Classification classification)
      : classification_(std::move(classification)),
        space_(MetricSpace::product(factors, std::move(phi), detail::licensed_properties(factors, classification_))) {}

  const MetricSpace& space() const { return space_; }
  const PhiFunction& phi() const { return space_.phi(); }
  const std::vector<MetricSpace>& factors() const { return space_.factors(); }
  std::size_t dimension() const { return space_.factor_count(); }
  const Classification& classification() const { return classification_; }
  const DeclaredProperties& properties() const { return space_.properties(); }

 private:
  Classification classification_;
  MetricSpace space_;
};

inline ProductSpace make_product(std::vector<MetricSpace> factors, PhiFunction phi, const SamplerParams& sp = {}) {
  Classification c = classify_phi(phi, sp);
  return ProductSpace(std::move(factors), std::move(phi), std::move(c));
}

/// d_Phi(x, y) = Phi(d_1(x_1, y_1), ..., d_n(x_n, y_n)).
inline double product_distance(const ProductSpace& prod, std::span<const double> x, std::span<const double> y) {
  return prod.space().distance(x, y);
}

/// Identity of indiscernibles, symmetry and the triangle inequality on
/// `count` sampled triples (all three orientations of each). Besides the raw
/// triples, pairs that differ in a single factor are probed, which is where
/// a degenerate Phi loses definiteness. Triangle witness layout: [x, y, z]
/// with d(x, z) > d(x, y) + d(y, z).
inline std::vector<ValidationReport> verify_metric_axioms(const MetricSpace& space, std::size_t count,
                                                          std::uint64_t seed, double radius = 10.0,
                                                          const Tolerances& tol = {}) {
  const double tau = tol.metric;
  const auto pts = sample_points(space, 3 * count, seed, radius);
  MarginTracker identity("metric_identity", 0.0);
  MarginTracker symmetry("metric_symmetry", tau);
  MarginTracker triangle("metric_triangle", tau);

  auto check_identity = [&](const Point& a, const Point& b) {
    const double d = space.distance_unchecked(a, b);
    const double margin = (a == b) ? d - tau : tau - d;
    identity.observe(margin, [&] { return concat({a, b}); });
  };
  auto check_triangle = [&](const Point& a, const Point& b, const Point& c) {
    const double rhs = space.distance_unchecked(a, b) + space.distance_unchecked(b, c);
    const double lhs = space.distance_unchecked(a, c);
    triangle.observe((lhs - rhs) / relative_scale(rhs), [&] { return concat({a, b, c}); });
  };

  for (std::size_t k = 0; k < count; ++k) {
    const Point& x = pts[3 * k];
    const Point& y = pts[3 * k + 1];
    const Point& z = pts[3 * k + 2];
    check_identity(x, x);
    check_identity(x, y);
    if (space.is_product()) {
      // y' agrees with x except in one factor.
      const std::size_t i = k % space.factor_count();
      Point yp = x;
      const auto fy = space.factor_point(y, i);
      const auto fx = space.factor_point(x, i);
      std::copy(fy.begin(), fy.end(), yp.begin() + (fx.data() - x.data()));
      if (yp != x) check_identity(x, yp);
    }
    const double dxy = space.distance_unchecked(x, y);
    const double dyx = space.distance_unchecked(y, x);
    symmetry.observe(std::abs(dxy - dyx) / relative_scale(dxy), [&] { return concat({x, y}); });
    check_triangle(x, y, z);
    check_triangle(y, z, x);
    check_triangle(z, x, y);
  }
  return {identity.finish("witness layout: [x, y]"), symmetry.finish("witness layout: [x, y]"),
          triangle.finish("witness layout: [x, y, z]")};
}

inline std::vector<ValidationReport> verify_metric_axioms(const ProductSpace& prod, std::size_t count,
                                                          std::uint64_t seed, double radius = 10.0,
                                                          const Tolerances& tol = {}) {
  return verify_metric_axioms(prod.space(), count, seed, radius, tol);
}

}  // namespace metprod

#endif  // METPROD_PRODUCT_HPP_
