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

#ifndef METPROD_SPACES_HPP_
#define METPROD_SPACES_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metprod/common.hpp"
#include "metprod/phi.hpp"

namespace metprod {

enum class SpaceKind { real_line, half_line, lp, discrete, finite, product };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::real_line: return "real-line";
    case SpaceKind::half_line: return "half-line";
    case SpaceKind::lp: return "lp";
    case SpaceKind::discrete: return "discrete";
    case SpaceKind::finite: return "finite";
    case SpaceKind::product: return "product";
  }
  return "product";
}

/// Structural metadata. An empty optional means "unknown".
struct DeclaredProperties {
  std::optional<bool> length_space;
  std::optional<bool> geodesic;
  std::optional<bool> uniquely_geodesic;
  std::optional<bool> convex;
  std::optional<int> minkowski_rank;

  /// uniquely geodesic => geodesic => length space.
  bool consistent() const {
    if (uniquely_geodesic.value_or(false) && !geodesic.value_or(false)) return false;
    if (geodesic.value_or(false) && !length_space.value_or(false)) return false;
    return true;
  }
};

class MetricSpace {
 public:
  static MetricSpace real_line() {
    MetricSpace s(SpaceKind::real_line, 1);
    s.props_ = {true, true, true, true, 1};
    return s;
  }

  /// [0, inf) with the metric of the line.
  static MetricSpace half_line() {
    MetricSpace s(SpaceKind::half_line, 1);
    s.props_ = {true, true, true, true, 0};
    return s;
  }

  /// R^m with (sum_i w_i |x_i - y_i|^p)^(1/p); p = kInfinity is the max
  /// distance. Empty weights mean unit weights.
  static MetricSpace lp(std::size_t m, double p, std::vector<double> weights = {}) {
    if (m == 0) throw InvalidArgument("lp space dimension must be >= 1");
    if (weights.empty()) weights.assign(m, 1.0);
    if (weights.size() != m) throw InvalidArgument("lp space needs one weight per coordinate");
    MetricSpace s(SpaceKind::lp, m);
    s.lp_ = std::make_shared<const PhiFunction>(PhiFunction::weighted_lp(p, std::move(weights)));
    const bool strict = p > 1.0 && !std::isinf(p);
    s.props_ = {true, true, strict, strict, static_cast<int>(m)};
    return s;
  }

  /// n points at mutual distance 1.
  static MetricSpace discrete(std::size_t n) {
    if (n == 0) throw InvalidArgument("discrete space needs at least one point");
    MetricSpace s(SpaceKind::discrete, 1);
    s.count_ = n;
    s.props_ = {false, false, false, false, 0};
    return s;
  }

  /// Finite space from a distance matrix. The matrix must be square,
  /// symmetric, zero on the diagonal, positive off it, and satisfy every
  /// triangle inequality (checked exhaustively, relative tolerance tau).
  static MetricSpace finite(std::vector<std::vector<double>> matrix, double tau = 1e-9) {
    const std::size_t n = matrix.size();
    if (n == 0) throw InvalidArgument("finite space needs at least one point");
    for (const auto& row : matrix)
      if (row.size() != n) throw InvalidArgument("distance matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix[i][i] != 0.0) throw InvalidArgument("distance matrix must have a zero diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        if (matrix[i][j] != matrix[j][i]) throw InvalidArgument("distance matrix must be symmetric");
        if (i != j && !(matrix[i][j] > 0.0 && std::isfinite(matrix[i][j]))) {
          throw InvalidArgument("off-diagonal distances must be positive and finite");
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const double rhs = matrix[i][k] + matrix[k][j];
          if (matrix[i][j] > rhs + tau * relative_scale(rhs)) {
            throw InvalidArgument("distance matrix violates the triangle inequality at (" + std::to_string(i) +
                                  "," + std::to_string(k) + "," + std::to_string(j) + ")");
          }
        }
    MetricSpace s(SpaceKind::finite, 1);
    s.count_ = n;
    s.matrix_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(matrix));
    s.props_ = {false, false, false, false, 0};
    return s;
  }

  /// Phi-product of the factors. Properties are taken as given; use
  /// make_product() in product.hpp to derive them from a classification.
  static MetricSpace product(std::vector<MetricSpace> factors, PhiFunction phi, DeclaredProperties props = {}) {
    if (factors.empty()) throw InvalidArgument("product needs at least one factor");
    if (factors.size() != phi.dimension()) {
      throw InvalidArgument("product has " + std::to_string(factors.size()) + " factors but phi has dimension " +
                            std::to_string(phi.dimension()));
    }
    auto data = std::make_shared<ProductData>(ProductData{std::move(factors), std::move(phi), {}});
    std::size_t dim = 0;
    for (const auto& f : data->factors) {
      data->offsets.push_back(dim);
      dim += f.point_dimension();
    }
    data->offsets.push_back(dim);
    MetricSpace s(SpaceKind::product, dim);
    s.product_ = std::move(data);
    s.props_ = props;
    return s;
  }

  SpaceKind kind() const { return kind_; }
  std::size_t point_dimension() const { return point_dim_; }
  const DeclaredProperties& properties() const { return props_; }

  /// lp accessors.
  double exponent() const { return lp_ ? lp_->exponent() : 0.0; }
  std::vector<double> weights() const { return lp_ ? lp_->weights() : std::vector<double>{}; }

  /// Number of points of discrete / finite spaces.
  std::size_t point_count() const { return count_; }
  const std::vector<std::vector<double>>& matrix() const { return *matrix_; }

  bool is_product() const { return kind_ == SpaceKind::product; }
  bool is_index_space() const { return kind_ == SpaceKind::discrete || kind_ == SpaceKind::finite; }
  const std::vector<MetricSpace>& factors() const { return require_product().factors; }
  const PhiFunction& phi() const { return require_product().phi; }
  std::size_t factor_count() const { return is_product() ? product_->factors.size() : 0; }

  std::span<const double> factor_point(std::span<const double> x, std::size_t i) const {
    const auto& d = require_product();
    return x.subspan(d.offsets[i], d.offsets[i + 1] - d.offsets[i]);
  }

  std::string describe() const {
    switch (kind_) {
      case SpaceKind::real_line: return "real-line";
      case SpaceKind::half_line: return "half-line";
      case SpaceKind::lp: {
        const double p = lp_->exponent();
        return "lp(m=" + std::to_string(point_dim_) + ",p=" + (std::isinf(p) ? std::string("inf") : trim(p)) + ")";
      }
      case SpaceKind::discrete: return "discrete(" + std::to_string(count_) + ")";
      case SpaceKind::finite: return "finite(" + std::to_string(count_) + ")";
      case SpaceKind::product: {
        std::string s = "product[" + product_->phi.name() + "](";
        for (std::size_t i = 0; i < product_->factors.size(); ++i) {
          if (i) s += ", ";
          s += product_->factors[i].describe();
        }
        return s + ")";
      }
    }
    return "";
  }

  void validate_point(std::span<const double> x) const {
    if (x.size() != point_dim_) {
      throw InvalidArgument(describe() + ": point has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(point_dim_));
    }
    switch (kind_) {
      case SpaceKind::half_line:
        if (!(x[0] >= 0.0)) throw InvalidArgument("half-line point must be >= 0");
        break;
      case SpaceKind::discrete:
      case SpaceKind::finite:
        if (!(x[0] >= 0.0) || x[0] != std::floor(x[0]) || x[0] >= static_cast<double>(count_)) {
          throw InvalidArgument(describe() + ": index out of range");
        }
        break;
      case SpaceKind::product:
        for (std::size_t i = 0; i < product_->factors.size(); ++i) product_->factors[i].validate_point(factor_point(x, i));
        break;
      default:
        for (double v : x)
          if (!std::isfinite(v)) throw InvalidArgument("coordinates must be finite");
    }
  }

  double distance(std::span<const double> x, std::span<const double> y) const {
    validate_point(x);
    validate_point(y);
    return distance_unchecked(x, y);
  }

  /// Componentwise factor distances (d_1(x_1, y_1), ..., d_n(x_n, y_n)).
  std::vector<double> factor_distances(std::span<const double> x, std::span<const double> y) const {
    const auto& d = require_product();
    std::vector<double> q(d.factors.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = d.factors[i].distance_unchecked(factor_point(x, i), factor_point(y, i));
    }
    return q;
  }

  double distance_unchecked(std::span<const double> x, std::span<const double> y) const {
    switch (kind_) {
      case SpaceKind::real_line:
      case SpaceKind::half_line: return std::abs(x[0] - y[0]);
      case SpaceKind::lp: {
        std::vector<double> q(point_dim_);
        for (std::size_t i = 0; i < point_dim_; ++i) q[i] = std::abs(x[i] - y[i]);
        return lp_->evaluate(q);
      }
      case SpaceKind::discrete: return x[0] == y[0] ? 0.0 : 1.0;
      case SpaceKind::finite: return (*matrix_)[static_cast<std::size_t>(x[0])][static_cast<std::size_t>(y[0])];
      case SpaceKind::product: return product_->phi.evaluate(factor_distances(x, y));
    }
    return 0.0;
  }

  /// Mask of coordinates that vary continuously (false for index coordinates).
  std::vector<bool> continuous_coordinates() const {
    if (is_index_space()) return {false};
    if (!is_product()) return std::vector<bool>(point_dim_, true);
    std::vector<bool> mask;
    for (const auto& f : product_->factors) {
      auto m = f.continuous_coordinates();
      mask.insert(mask.end(), m.begin(), m.end());
    }
    return mask;
  }

  /// Coordinates constrained to be nonnegative (half-line factors).
  std::vector<bool> nonnegative_coordinates() const {
    if (kind_ == SpaceKind::half_line) return {true};
    if (!is_product()) return std::vector<bool>(point_dim_, false);
    std::vector<bool> mask;
    for (const auto& f : product_->factors) {
      auto m = f.nonnegative_coordinates();
      mask.insert(mask.end(), m.begin(), m.end());
    }
    return mask;
  }

 private:
  struct ProductData {
    std::vector<MetricSpace> factors;
    PhiFunction phi;
    std::vector<std::size_t> offsets;
  };

  MetricSpace(SpaceKind kind, std::size_t dim) : kind_(kind), point_dim_(dim) {}

  const ProductData& require_product() const {
    if (!product_) throw InvalidArgument(describe() + " is not a product space");
    return *product_;
  }

  static std::string trim(double p) {
    std::string s = std::to_string(p);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  SpaceKind kind_;
  std::size_t point_dim_;
  DeclaredProperties props_;
  std::size_t count_ = 0;
  std::shared_ptr<const PhiFunction> lp_;
  std::shared_ptr<const std::vector<std::vector<double>>> matrix_;
  std::shared_ptr<const ProductData> product_;
};

inline double distance(const MetricSpace& space, std::span<const double> x, std::span<const double> y) {
  return space.distance(x, y);
}

/// Deterministic points within `radius` of the origin (coordinate box for
/// each factor, rescaled into the ball for lp spaces). Index spaces draw
/// uniform indices; products draw each factor from a derived stream.
inline std::vector<Point> sample_points(const MetricSpace& space, std::size_t count, std::uint64_t seed,
                                        double radius = 10.0) {
  if (count == 0) throw InvalidArgument("sample count must be >= 1");
  if (!(radius > 0.0)) throw InvalidArgument("sampling radius must be positive");
  std::vector<Point> out;
  out.reserve(count);
  if (space.is_product()) {
    std::vector<std::vector<Point>> per_factor;
    for (std::size_t i = 0; i < space.factor_count(); ++i) {
      per_factor.push_back(sample_points(space.factors()[i], count, derive_seed(seed, i), radius));
    }
    for (std::size_t k = 0; k < count; ++k) {
      Point p;
      for (const auto& f : per_factor) p.insert(p.end(), f[k].begin(), f[k].end());
      out.push_back(std::move(p));
    }
    return out;
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    switch (space.kind()) {
      case SpaceKind::real_line: out.push_back({rng.uniform(-radius, radius)}); break;
      case SpaceKind::half_line: out.push_back({std::max(0.0, rng.uniform(0.0, radius))}); break;
      case SpaceKind::discrete:
      case SpaceKind::finite: out.push_back({static_cast<double>(rng.index(space.point_count()))}); break;
      case SpaceKind::lp: {
        Point p(space.point_dimension());
        for (double& v : p) v = rng.uniform(-radius, radius);
        const Point origin(p.size(), 0.0);
        const double r = space.distance_unchecked(p, origin);
        if (r > radius) {
          for (double& v : p) v *= radius / r;
        }
        out.push_back(std::move(p));
        break;
      }
      case SpaceKind::product: break;
    }
  }
  return out;
}

}  // namespace metprod

#endif  // METPROD_SPACES_HPP_
