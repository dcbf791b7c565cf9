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

#include "metprod/geodesics.hpp"

#include <gtest/gtest.h>

#include "metprod/rank.hpp"
#include "oracles.hpp"

namespace metprod {
namespace {

const MetricSpace kLine = MetricSpace::real_line();
const MetricSpace kHalf = MetricSpace::half_line();

ProductSpace Make(std::vector<MetricSpace> f, PhiFunction phi) {
  SamplerParams sp;
  sp.count = 2000;
  return make_product(std::move(f), std::move(phi), sp);
}

TEST(FactorGeodesicTest, LineIsIdentity) {
  const auto g = factor_geodesic(kLine, {0}, {5});
  EXPECT_DOUBLE_EQ(g.length(), 5.0);
  for (double t : {0.0, 1.25, 3.0, 5.0}) EXPECT_DOUBLE_EQ(g(t)[0], t);
}

TEST(FactorGeodesicTest, HalfLineBackwards) {
  const auto g = factor_geodesic(kHalf, {2}, {0});
  for (double t : {0.0, 0.5, 2.0}) EXPECT_DOUBLE_EQ(g(t)[0], 2.0 - t);
}

TEST(FactorGeodesicTest, TaxicabCorner) {
  const auto l1 = MetricSpace::lp(2, 1);
  const auto g = factor_geodesic(l1, {0, 0}, {1, 1}, GeodesicSelector::corner(1));
  EXPECT_DOUBLE_EQ(g.length(), 2.0);
  EXPECT_EQ(g(1.0), (Point{1, 0}));
  EXPECT_EQ(g(0.5), (Point{0.5, 0}));
  EXPECT_EQ(g(1.5), (Point{1, 0.5}));
  EXPECT_TRUE(geodesy_test(l1, g, 64).passed());
  const auto g2 = factor_geodesic(l1, {0, 0}, {1, 1}, GeodesicSelector::corner(2));
  EXPECT_EQ(g2(1.0), (Point{0, 1}));
  EXPECT_TRUE(geodesy_test(l1, g2, 64).passed());
}

TEST(FactorGeodesicTest, MaxNormTent) {
  const auto linf = MetricSpace::lp(2, kInfinity);
  const auto g = factor_geodesic(linf, {0, 0}, {2, 0}, GeodesicSelector::corner(2));
  EXPECT_DOUBLE_EQ(g(1.0)[1], 1.0);
  EXPECT_TRUE(geodesy_test(linf, g, 64).passed());
}

TEST(FactorGeodesicTest, Errors) {
  EXPECT_THROW(factor_geodesic(MetricSpace::discrete(3), {0}, {1}), PreconditionError);
  EXPECT_THROW(factor_geodesic(MetricSpace::finite({{0, 1}, {1, 0}}), {0}, {1}), PreconditionError);
  EXPECT_THROW(GeodesicSelector::corner(0), InvalidArgument);
  EXPECT_THROW(factor_geodesic(MetricSpace::lp(2, 1), {0, 0}, {1, 1}, GeodesicSelector::corner(3)), InvalidArgument);
}

TEST(ProductGeodesicTest, EuclideanMidpoint) {
  const auto p = Make({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const auto g = product_geodesic(p, {0, 0}, {3, 4});
  EXPECT_DOUBLE_EQ(g.length(), 5.0);
  const Point m = g(2.5);
  EXPECT_NEAR(m[0], 1.5, 1e-15);
  EXPECT_NEAR(m[1], 2.0, 1e-15);
}

TEST(ProductGeodesicTest, SumOfHalfLinesMovesSimultaneously) {
  const auto p = Make({kHalf, kHalf}, PhiFunction::sum(2));
  const auto g = product_geodesic(p, {1, 0}, {0, 1});
  EXPECT_DOUBLE_EQ(g.length(), 2.0);
  EXPECT_EQ(g(1.0), (Point{0.5, 0.5}));
  EXPECT_TRUE(geodesy_test(p.space(), g, 64).passed());
}

TEST(ProductGeodesicTest, DegenerateEndpoints) {
  const auto p = Make({kLine, kLine}, PhiFunction::weighted_lp(3, {1, 1}));
  const auto g = product_geodesic(p, {1, 2}, {1, 2});
  EXPECT_EQ(g.length(), 0.0);
  EXPECT_EQ(g(0.3), (Point{1, 2}));
}

TEST(ProductGeodesicTest, RefusesWithoutNorm) {
  const auto two = Make({kLine, kLine}, PhiFunction::two_valued(2));
  EXPECT_THROW(product_geodesic(two, {0, 0}, {1, 1}), PreconditionError);
  const auto disc = Make({kLine, MetricSpace::discrete(3)}, PhiFunction::weighted_euclidean({1, 1}));
  EXPECT_THROW(product_geodesic(disc, {0, 0}, {1, 1}), PreconditionError);
}

TEST(ProductGeodesicTest, SelectorsPerFactor) {
  const auto p = Make({MetricSpace::lp(2, 1), kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const GeodesicSelector sel[] = {GeodesicSelector::corner(1), GeodesicSelector::affine()};
  const auto g = product_geodesic(p, {0, 0, 0}, {1, 1, 2}, sel);
  EXPECT_TRUE(geodesy_test(p.space(), g, 64).passed());
  EXPECT_TRUE(component_progress_check(p.space(), g, 64).passed());
  EXPECT_THROW(product_geodesic(p, {0, 0, 0}, {1, 1, 2}, std::span<const GeodesicSelector>(sel, 1)), InvalidArgument);
}

TEST(GeodesyTest, HalfLineCounterexampleLine) {
  // c(t) = (-t, 0) for t <= 0 and (0, t) for t >= 0, on [-T, T].
  const auto plane = half_line_sum_plane();
  const double T = 10.0;
  const Geodesic g({T, 0}, {0, T}, 2 * T, [T](double s) { return half_line_corner_curve(s - T); });
  EXPECT_TRUE(geodesy_test(plane, g, 64).passed());
}

TEST(GeodesyTest, QuadraticSpeedFails) {
  const auto e2 = MetricSpace::lp(2, 2);
  const Geodesic g({0, 0}, {1, 0}, 1.0, [](double t) { return Point{t * t, 0}; });
  const auto r = geodesy_test(e2, g, 16);
  ASSERT_TRUE(r.failed());
  const double s = r.witness[0], t = r.witness[1];
  EXPECT_NEAR(r.witness[2], t * t - s * s, 1e-12);
}

TEST(UniquenessTest, EuclideanIsUnique) {
  const auto p = Make({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const auto r = uniqueness_probe(p, {0, 0}, {1, 1});
  EXPECT_TRUE(r.unique());
  EXPECT_LT(r.sup_distance, 1e-9);
}

TEST(UniquenessTest, SumPlaneHasTwoGeodesics) {
  const auto p = Make({kLine, kLine}, PhiFunction::sum(2));
  const auto r = uniqueness_probe(p, {0, 0}, {1, 1});
  ASSERT_FALSE(r.unique());
  ASSERT_TRUE(r.witnesses.has_value());
  EXPECT_GT(r.sup_distance, 0.1);
  const auto& a = r.found[r.witnesses->first];
  const auto& b = r.found[r.witnesses->second];
  EXPECT_DOUBLE_EQ(a.length(), 2.0);
  EXPECT_NEAR(b.length(), 2.0, 1e-12);
  EXPECT_TRUE(geodesy_test(p.space(), a, 64).passed());
  EXPECT_TRUE(geodesy_test(p.space(), b, 64).passed());
}

TEST(UniquenessTest, SelectorSetsAloneExposeTaxicabCorner) {
  const auto p = Make({MetricSpace::lp(2, 1)}, named_custom_phi("identity", 1));
  UniquenessOptions opt;
  opt.perturbations = 0;
  const auto r = uniqueness_probe(p, {0, 0}, {1, 1},
                                  {{GeodesicSelector::affine()}, {GeodesicSelector::corner(1)}}, opt);
  EXPECT_FALSE(r.unique());
  EXPECT_NEAR(r.sup_distance, 1.0, 1e-12);
}

TEST(UniquenessTest, MaxPlaneWanders) {
  const auto p = Make({kLine, kLine}, PhiFunction::max(2));
  const auto r = uniqueness_probe(p, {0, 0}, {1, 0});
  EXPECT_FALSE(r.unique());
  // Explicit wandering geodesic (t, eps min(t, 1 - t)).
  const Geodesic w({0, 0}, {1, 0}, 1.0, [](double t) { return Point{t, 0.5 * std::min(t, 1 - t)}; });
  EXPECT_TRUE(geodesy_test(p.space(), w, 64).passed());
}

// Property: strictly convex products of uniquely geodesic factors stay unique.
TEST(UniquenessPropertyTest, StrictlyConvexProducts) {
  for (const auto& phi : {PhiFunction::weighted_euclidean({1, 3}), PhiFunction::weighted_lp(3, {1, 1}),
                          PhiFunction::weighted_lp(1.5, {2, 1})}) {
    const auto p = Make({kLine, MetricSpace::lp(2, 2)}, phi);
    const auto pts = sample_points(p.space(), 20, 5, 5.0);
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
      UniquenessOptions opt;
      opt.perturbations = 24;
      EXPECT_TRUE(uniqueness_probe(p, pts[k], pts[k + 1], {}, opt).unique()) << phi.name();
    }
  }
}

// Property: product geodesics of norm-induced Phi pass geodesy and the
// component progress identity.
TEST(ProductGeodesicPropertyTest, GeodesyAndProgress) {
  const std::vector<PhiFunction> phis = {PhiFunction::weighted_euclidean({1, 2}), PhiFunction::sum(2),
                                         PhiFunction::max(2), PhiFunction::weighted_lp(3, {1, 1}),
                                         PhiFunction::weighted_lp(1.5, {1, 1})};
  const std::vector<std::pair<MetricSpace, MetricSpace>> pairs = {
      {kLine, kHalf}, {MetricSpace::lp(2, 2), MetricSpace::lp(2, 1.5)}, {kHalf, MetricSpace::lp(2, 1)}};
  for (const auto& phi : phis) {
    for (const auto& [a, b] : pairs) {
      const auto p = Make({a, b}, phi);
      const auto pts = sample_points(p.space(), 10, 8);
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        const auto g = product_geodesic(p, pts[k], pts[k + 1]);
        EXPECT_TRUE(geodesy_test(p.space(), g, 32).passed()) << phi.name();
        EXPECT_TRUE(component_progress_check(p.space(), g, 32).passed()) << phi.name();
      }
    }
  }
}

TEST(BusemannTest, EuclideanSegmentsPass) {
  const auto e2 = MetricSpace::lp(2, 2);
  const auto g1 = factor_geodesic(e2, {0, 0}, {4, 1});
  const auto g2 = factor_geodesic(e2, {1, 3}, {-2, 0});
  EXPECT_TRUE(busemann_convexity_check(e2, g1, g2, 16).passed());
}

TEST(BusemannTest, StrictlyConvexProductPairs) {
  const auto p = Make({kLine, kLine}, PhiFunction::weighted_lp(3, {1, 1}));
  const auto pts = sample_points(p.space(), 40, 2);
  for (std::size_t k = 0; k + 3 < pts.size(); k += 4) {
    EXPECT_TRUE(busemann_convexity_check(p.space(), product_geodesic(p, pts[k], pts[k + 1]),
                                         product_geodesic(p, pts[k + 2], pts[k + 3]), 16)
                    .passed());
  }
}

TEST(BusemannTest, SumPlaneCornerVersusDiagonalIsReported) {
  const auto p = Make({MetricSpace::lp(2, 1)}, named_custom_phi("identity", 1));
  const GeodesicSelector corner[] = {GeodesicSelector::corner(1)};
  const auto corner_path = product_geodesic(p, {0, 0}, {1, 1}, corner);
  const auto diagonal = product_geodesic(p, {0, 0}, {1, 1});
  const auto r = busemann_convexity_check(p.space(), corner_path, diagonal, 16);
  EXPECT_NE(r.verdict, Verdict::undetermined);
  EXPECT_TRUE(std::isfinite(r.worst_margin));
}

TEST(Cat0Test, EuclideanPlanePasses) {
  const auto p = Make({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  EXPECT_TRUE(cat0_four_point_check(p.space(), 1000, 0).passed());
}

TEST(Cat0Test, LineTimesHalfLinePasses) {
  const auto p = Make({kLine, kHalf}, PhiFunction::weighted_euclidean({1, 1}));
  EXPECT_TRUE(cat0_four_point_check(p.space(), 1000, 0).passed());
}

TEST(Cat0Test, SumTriangleFailsWithMarginTwo) {
  const auto p = Make({kLine, kLine}, PhiFunction::sum(2));
  const std::vector<Triangle> tri = {{{0, 0}, {2, 0}, {0, 2}}};
  const auto r = cat0_four_point_check(p.space(), tri);
  ASSERT_TRUE(r.failed());
  EXPECT_EQ(r.worst_margin, 2.0);
  EXPECT_EQ(r.witness, (Point{0, 0, 2, 0, 0, 2, 1, 1}));
  EXPECT_EQ(oracle::euclidean_median(2, 2, 4), 0.0);
}

TEST(Cat0Test, CollinearTriangleIsTight) {
  const auto e2 = MetricSpace::lp(2, 2);
  const std::vector<Triangle> tri = {{{0, 0}, {1, 0}, {2, 0}}};
  const auto r = cat0_four_point_check(e2, tri);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.skipped, 0u);
  EXPECT_NEAR(r.worst_margin, 0.0, 1e-15);
}

TEST(Cat0Test, MedianOracle) {
  EXPECT_NEAR(comparison_median(3, 4, 5), oracle::euclidean_median(3, 4, 5), 1e-15);
  EXPECT_NEAR(comparison_median(3, 4, 5), 2.5, 1e-15);
}

}  // namespace
}  // namespace metprod
