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

// Minkowski rank bookkeeping for Phi-products: declared factor ranks,
// additivity under strictly convex Phi, the sum-of-half-lines line that
// breaks additivity, a brute-force finite embedding search, and the
// per-factor pseudonorm decomposition of an isometric embedding.

#ifndef METPROD_RANK_HPP_
#define METPROD_RANK_HPP_

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metprod/common.hpp"
#include "metprod/product.hpp"
#include "metprod/spaces.hpp"

namespace metprod {

enum class RankProvenance { declared, additivity, lower_bound, unknown };

inline const char* to_string(RankProvenance p) {
  switch (p) {
    case RankProvenance::declared: return "declared";
    case RankProvenance::additivity: return "rank-additivity";
    case RankProvenance::lower_bound: return "counterexample-lower-bound";
    case RankProvenance::unknown: return "unknown";
  }
  return "unknown";
}

struct RankRecord {
  std::string space;
  std::optional<int> rank;
  RankProvenance provenance = RankProvenance::unknown;
  /// Set when only the superadditive lower bound sum(rank_i) is known.
  bool additivity_not_guaranteed = false;
  /// Quasi-Euclidean rank equals the Minkowski rank; only set when the
  /// caller asserts local compactness, convexity and a cocompact isometry
  /// group, which are never verified here.
  bool quasi_euclidean_equal = false;
  /// Euclidean rank, reported only for Euclidean lp(m, 2) spaces.
  std::optional<int> euclidean_rank;
  std::vector<std::string> warnings;
};

/// Rank from catalog metadata: line / lp(m) -> m, half-line and bounded
/// spaces -> 0. Products use their licensed metadata.
inline RankRecord declared_rank(const MetricSpace& space) {
  RankRecord r;
  r.space = space.describe();
  r.rank = space.properties().minkowski_rank;
  r.provenance = r.rank ? RankProvenance::declared : RankProvenance::unknown;
  if (space.kind() == SpaceKind::lp && space.exponent() == 2.0) {
    bool unit = true;
    for (double w : space.weights()) unit &= (w == 1.0);
    if (unit) r.euclidean_rank = r.rank;
  }
  if (space.kind() == SpaceKind::real_line) r.euclidean_rank = 1;
  return r;
}

/// rank(X, d_Phi) = sum rank(X_i) when Phi has a strictly convex norm ball;
/// otherwise only the lower bound, flagged as not guaranteed.
inline RankRecord product_rank(const ProductSpace& prod, bool assert_quasi_euclidean_hypotheses = false) {
  RankRecord r;
  r.space = prod.space().describe();
  int sum = 0;
  for (const auto& f : prod.factors()) {
    const auto fr = f.properties().minkowski_rank;
    if (!fr) {
      r.provenance = RankProvenance::unknown;
      r.warnings.push_back("factor " + f.describe() + " has unknown rank");
      return r;
    }
    sum += *fr;
  }
  r.rank = sum;
  const bool strict = prod.classification().at_least(PhiClass::strictly_convex_norm);
  if (strict) {
    r.provenance = RankProvenance::additivity;
    r.quasi_euclidean_equal = assert_quasi_euclidean_hypotheses;
  } else {
    r.provenance = RankProvenance::lower_bound;
    r.additivity_not_guaranteed = true;
    r.warnings.push_back("phi is " + std::string(to_string(prod.classification().phi_class)) +
                         "; the factor rank sum is only a lower bound");
    if (assert_quasi_euclidean_hypotheses) {
      r.warnings.push_back("quasi-Euclidean rank is not additive for a phi without a strictly convex norm ball");
    }
  }
  return r;
}

/// Sum-Phi product of two half-lines.
inline MetricSpace half_line_sum_plane() {
  return MetricSpace::product({MetricSpace::half_line(), MetricSpace::half_line()}, PhiFunction::sum(2),
                              DeclaredProperties{true, true, std::nullopt, std::nullopt, std::nullopt});
}

/// c(t) = (-t, 0) for t <= 0 and (0, t) for t >= 0.
inline Point half_line_corner_curve(double t) { return t <= 0.0 ? Point{-t, 0.0} : Point{0.0, t}; }

/// Verifies d_Phi(c(s), c(t)) = |s - t| exactly on `grid` equally spaced
/// parameters in [-T, T], so a line embeds in a product of two rank-0
/// factors. Witness: [s, t, d].
inline ValidationReport counterexample_sum_halflines(double T, std::size_t grid) {
  if (!(T > 0.0)) throw InvalidArgument("counterexample needs T > 0");
  if (grid < 2) throw InvalidArgument("counterexample grid needs at least two points");
  const MetricSpace plane = half_line_sum_plane();
  std::vector<double> ts(grid);
  const double half = static_cast<double>(grid - 1);
  for (std::size_t k = 0; k < grid; ++k) ts[k] = T * (2.0 * static_cast<double>(k) - half) / half;
  MarginTracker tr("counterexample_sum_halflines", 0.0);
  for (double s : ts) {
    for (double t : ts) {
      const double d = plane.distance(half_line_corner_curve(s), half_line_corner_curve(t));
      tr.observe(std::abs(d - std::abs(s - t)), [&] { return Point{s, t, d}; });
    }
  }
  return tr.finish("exact comparison; witness layout: [s, t, d]");
}

struct EmbeddingProbe {
  std::vector<std::vector<double>> pattern;
  std::vector<Point> targets;
  /// pattern point i -> index into targets.
  std::optional<std::vector<std::size_t>> assignment;
  std::size_t nodes = 0;

  bool found() const { return assignment.has_value(); }
};

inline constexpr std::size_t kMaxPatternSize = 8;
inline constexpr std::size_t kMaxTargetSize = 64;

/// Exhaustive depth-first search over injective maps pattern -> targets,
/// extending one pattern point at a time in index order and target indices
/// in increasing order, so the result is the lexicographically first
/// assignment matching all pairwise distances within tau_embed.
inline EmbeddingProbe finite_embedding_oracle(const std::vector<std::vector<double>>& pattern,
                                              const std::vector<Point>& targets, const MetricSpace& space,
                                              const Tolerances& tol = {}) {
  const std::size_t k = pattern.size();
  if (k > kMaxPatternSize) throw BudgetExceeded("pattern has " + std::to_string(k) + " points; limit is 8");
  if (targets.size() > kMaxTargetSize) {
    throw BudgetExceeded("target sample has " + std::to_string(targets.size()) + " points; limit is 64");
  }
  for (const auto& row : pattern)
    if (row.size() != k) throw InvalidArgument("pattern matrix must be square");

  EmbeddingProbe probe{pattern, targets, std::nullopt, 0};
  const std::size_t m = targets.size();
  std::vector<double> dist(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) dist[a * m + b] = space.distance(targets[a], targets[b]);

  std::vector<std::size_t> assign(k);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == k) return true;
    for (std::size_t c = 0; c < m; ++c) {
      if (used[c]) continue;
      ++probe.nodes;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = std::abs(dist[assign[j] * m + c] - pattern[i][j]) <= tol.embed;
      if (!ok) continue;
      assign[i] = c;
      used[c] = true;
      if (extend(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (extend(0)) probe.assignment = assign;
  return probe;
}

/// Isometric map from a normed space (R^k, |.|) into a product.
struct NormedDomain {
  std::size_t dimension = 1;
  std::function<double(std::span<const double>)> norm;
};

using Embedding = std::function<Point(std::span<const double>)>;

/// alpha_i(a, v) = d_i(phi_i(a), phi_i(a + v)) sampled on the vector grid,
/// from base points a and b.
struct AlphaDecomposition {
  std::vector<Point> vectors;
  std::vector<std::vector<double>> alpha_a;
  std::vector<std::vector<double>> alpha_b;
};

struct AlphaResult {
  AlphaDecomposition decomposition;
  /// isometry identity, base-point independence, homogeneity, triangle.
  std::vector<ValidationReport> reports;

  bool isometric() const { return !reports.empty() && reports.front().passed(); }
};

/// Checks that the alpha_i of an embedding behave as pseudonorms whose
/// Phi-combination is the domain norm: Phi(alpha(a, v)) = |v|,
/// alpha_i(a, v) = alpha_i(b, v), alpha_i(a, l v) = |l| alpha_i(a, v) and
/// alpha_i(v + w) <= alpha_i(v) + alpha_i(w).
inline AlphaResult alpha_decompose(const Embedding& embed, const NormedDomain& domain, const ProductSpace& prod,
                                   const Point& a, const Point& b, const std::vector<Point>& vectors,
                                   const std::vector<double>& scalars = {-2.0, -0.5, 0.0, 0.5, 2.0, 3.0},
                                   const Tolerances& tol = {}) {
  if (a.size() != domain.dimension || b.size() != domain.dimension) {
    throw InvalidArgument("base points must live in the domain");
  }
  for (const auto& v : vectors)
    if (v.size() != domain.dimension) throw InvalidArgument("grid vectors must live in the domain");

  const MetricSpace& space = prod.space();
  const std::size_t n = prod.dimension();
  auto shifted = [](const Point& base, const Point& v, double s = 1.0) {
    Point r = base;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * v[i];
    return r;
  };
  auto alpha = [&](const Point& base, const Point& v) {
    const Point x = embed(base), y = embed(shifted(base, v));
    space.validate_point(x);
    space.validate_point(y);
    return space.factor_distances(x, y);
  };

  AlphaResult res;
  res.decomposition.vectors = vectors;
  for (const auto& v : vectors) {
    res.decomposition.alpha_a.push_back(alpha(a, v));
    res.decomposition.alpha_b.push_back(alpha(b, v));
  }

  const bool licensed = prod.classification().at_least(PhiClass::strictly_convex_norm);
  const std::string pre = licensed ? "" : "phi lacks a strictly convex norm ball; pseudonorm properties are not guaranteed; ";

  MarginTracker iso("alpha_isometry_identity", tol.metric);
  MarginTracker base("alpha_base_independence", tol.metric);
  MarginTracker homog("alpha_homogeneity", tol.metric);
  MarginTracker tri("alpha_triangle", tol.metric);
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Point& v = vectors[k];
    const auto& aa = res.decomposition.alpha_a[k];
    const auto& ab = res.decomposition.alpha_b[k];
    const double len = domain.norm(v);
    const double combined = prod.phi().evaluate(aa);
    iso.observe(std::abs(combined - len) / relative_scale(len), [&] { return concat({v, Point{combined, len}}); });
    for (std::size_t i = 0; i < n; ++i) {
      base.observe(std::abs(aa[i] - ab[i]) / relative_scale(aa[i]),
                   [&] { return concat({v, Point{static_cast<double>(i), aa[i], ab[i]}}); });
    }
    for (double l : scalars) {
      const auto scaled = alpha(a, shifted(Point(v.size(), 0.0), v, l));
      for (std::size_t i = 0; i < n; ++i) {
        const double expected = std::abs(l) * aa[i];
        homog.observe(std::abs(scaled[i] - expected) / relative_scale(expected),
                      [&] { return concat({v, Point{l, static_cast<double>(i), scaled[i], expected}}); });
      }
    }
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const auto& aw = res.decomposition.alpha_a[j];
      const auto sum = alpha(a, shifted(v, vectors[j]));
      for (std::size_t i = 0; i < n; ++i) {
        const double rhs = aa[i] + aw[i];
        tri.observe((sum[i] - rhs) / relative_scale(rhs),
                    [&] { return concat({v, vectors[j], Point{static_cast<double>(i), sum[i], rhs}}); });
      }
    }
  }
  res.reports.push_back(iso.finish(pre + "witness layout: [v, Phi(alpha), |v|]"));
  if (res.reports.back().failed()) res.reports.back().note = "not an isometric embedding; " + res.reports.back().note;
  res.reports.push_back(base.finish(pre + "witness layout: [v, factor, alpha_i(a,v), alpha_i(b,v)]"));
  res.reports.push_back(homog.finish(pre + "witness layout: [v, lambda, factor, alpha_i(a,lambda v), |lambda| alpha_i(a,v)]"));
  res.reports.push_back(tri.finish(pre + "witness layout: [v, w, factor, alpha_i(v+w), alpha_i(v)+alpha_i(w)]"));
  return res;
}

}  // namespace metprod

#endif  // METPROD_RANK_HPP_
