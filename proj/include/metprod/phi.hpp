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

// Gluing functions Phi: Q^n -> [0, inf) on the closed positive quadrant, the
// symmetrized function Psi(x) = Phi(|x_1|, ..., |x_n|), and sampled checks of
// the condition hierarchy that decides which metric structures a Phi-product
// preserves.

#ifndef METPROD_PHI_HPP_
#define METPROD_PHI_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metprod/common.hpp"

namespace metprod {

enum class PhiKind { weighted_lp, weighted_euclidean, sum, max, two_valued, custom };

inline const char* to_string(PhiKind k) {
  switch (k) {
    case PhiKind::weighted_lp: return "weighted-lp";
    case PhiKind::weighted_euclidean: return "weighted-euclidean";
    case PhiKind::sum: return "sum";
    case PhiKind::max: return "max";
    case PhiKind::two_valued: return "two-valued";
    case PhiKind::custom: return "custom";
  }
  return "custom";
}

class PhiFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  /// (sum_i w_i q_i^p)^(1/p); p = kInfinity gives max_i q_i (weights unused).
  static PhiFunction weighted_lp(double p, std::vector<double> weights) {
    if (!(p >= 1.0)) throw InvalidArgument("weighted-lp exponent must be >= 1");
    check_weights(weights);
    PhiFunction f(PhiKind::weighted_lp, weights.size());
    f.exponent_ = p;
    f.weights_ = std::move(weights);
    return f;
  }

  static PhiFunction weighted_euclidean(std::vector<double> weights) {
    check_weights(weights);
    PhiFunction f(PhiKind::weighted_euclidean, weights.size());
    f.exponent_ = 2.0;
    f.weights_ = std::move(weights);
    return f;
  }

  static PhiFunction sum(std::size_t n) {
    PhiFunction f(PhiKind::sum, n);
    f.exponent_ = 1.0;
    f.weights_.assign(n, 1.0);
    return f;
  }

  static PhiFunction max(std::size_t n) {
    PhiFunction f(PhiKind::max, n);
    f.exponent_ = kInfinity;
    f.weights_.assign(n, 1.0);
    return f;
  }

  /// Phi(0) = 0, Phi(q) = 1 if max(q) <= 1, else 2.
  static PhiFunction two_valued(std::size_t n) { return PhiFunction(PhiKind::two_valued, n); }

  static PhiFunction custom(std::size_t n, std::string name, Evaluator eval) {
    if (!eval) throw InvalidArgument("custom phi needs an evaluator");
    PhiFunction f(PhiKind::custom, n);
    f.name_ = std::move(name);
    f.custom_ = std::make_shared<const Evaluator>(std::move(eval));
    return f;
  }

  PhiKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  /// Exponent for the lp-type variants, 0 otherwise.
  double exponent() const { return exponent_; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_custom() const { return kind_ == PhiKind::custom; }

  std::string name() const {
    if (kind_ == PhiKind::custom) return "custom:" + name_;
    if (kind_ == PhiKind::weighted_lp) {
      return std::isinf(exponent_) ? "weighted-lp(p=inf)"
                                   : "weighted-lp(p=" + format_exponent(exponent_) + ")";
    }
    return to_string(kind_);
  }

  /// Evaluates without validating the argument. Callers inside the library
  /// only pass quadrant vectors of the right length.
  double evaluate(std::span<const double> q) const {
    switch (kind_) {
      case PhiKind::sum: {
        double s = 0.0;
        for (double x : q) s += x;
        return s;
      }
      case PhiKind::max: {
        double m = 0.0;
        for (double x : q) m = std::max(m, x);
        return m;
      }
      case PhiKind::weighted_euclidean: {
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) s += weights_[i] * q[i] * q[i];
        return std::sqrt(s);
      }
      case PhiKind::weighted_lp: return lp_value(q);
      case PhiKind::two_valued: {
        double m = 0.0;
        bool zero = true;
        for (double x : q) {
          m = std::max(m, x);
          if (x != 0.0) zero = false;
        }
        if (zero) return 0.0;
        return m <= 1.0 ? 1.0 : 2.0;
      }
      case PhiKind::custom: return (*custom_)(q);
    }
    return 0.0;
  }

  double operator()(std::span<const double> q) const {
    if (q.size() != dimension_) {
      throw InvalidArgument("phi expects a vector of length " + std::to_string(dimension_) +
                            ", got " + std::to_string(q.size()));
    }
    for (double x : q) {
      if (!(x >= 0.0)) throw InvalidArgument("phi is defined on the quadrant; got a negative component");
    }
    const double v = evaluate(q);
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("phi evaluator returned a non-finite or negative value");
    return v;
  }

  /// Phi(lambda * e_i).
  double on_axis(std::size_t i, double lambda = 1.0) const {
    std::vector<double> e(dimension_, 0.0);
    e[i] = lambda;
    return evaluate(e);
  }

 private:
  PhiFunction(PhiKind kind, std::size_t n) : kind_(kind), dimension_(n) {
    if (n == 0) throw InvalidArgument("phi dimension must be >= 1");
  }

  static void check_weights(const std::vector<double>& w) {
    if (w.empty()) throw InvalidArgument("phi needs at least one weight");
    for (double x : w) {
      if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("phi weights must be positive and finite");
    }
  }

  static std::string format_exponent(double p) {
    std::string s = std::to_string(p);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  double lp_value(std::span<const double> q) const {
    if (std::isinf(exponent_)) {
      double m = 0.0;
      for (double x : q) m = std::max(m, x);
      return m;
    }
    if (exponent_ == 1.0) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += weights_[i] * q[i];
      return s;
    }
    // Scale by the largest component so large radii do not overflow.
    double m = 0.0;
    for (double x : q) m = std::max(m, x);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += weights_[i] * std::pow(q[i] / m, exponent_);
    return m * std::pow(s, 1.0 / exponent_);
  }

  PhiKind kind_;
  std::size_t dimension_;
  double exponent_ = 0.0;
  std::vector<double> weights_;
  std::string name_;
  std::shared_ptr<const Evaluator> custom_;
};

/// Named black-box gluing functions used by the command line and the
/// negative examples: "first-coordinate" (q_1), "first-squared" (q_1^2),
/// "identity" (n = 1, q_1).
inline PhiFunction named_custom_phi(const std::string& name, std::size_t n) {
  if (name == "first-coordinate") {
    return PhiFunction::custom(n, name, [](std::span<const double> q) { return q[0]; });
  }
  if (name == "first-squared") {
    return PhiFunction::custom(n, name, [](std::span<const double> q) { return q[0] * q[0]; });
  }
  if (name == "identity") {
    if (n != 1) throw InvalidArgument("custom phi 'identity' requires dimension 1");
    return PhiFunction::custom(1, name, [](std::span<const double> q) { return q[0]; });
  }
  throw InvalidArgument("unknown custom phi '" + name + "'");
}

inline double eval_phi(const PhiFunction& phi, std::span<const double> q) { return phi(q); }

/// Psi(x) = Phi(|x_1|, ..., |x_n|) on all of R^n.
class PsiNorm {
 public:
  explicit PsiNorm(PhiFunction phi) : phi_(std::move(phi)) {}

  const PhiFunction& phi() const { return phi_; }
  std::size_t dimension() const { return phi_.dimension(); }

  double operator()(std::span<const double> x) const {
    if (x.size() != phi_.dimension()) throw InvalidArgument("psi argument has the wrong length");
    std::vector<double> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = std::abs(x[i]);
    return phi_.evaluate(a);
  }

 private:
  PhiFunction phi_;
};

// ---------------------------------------------------------------------------
// Sampled condition checks.

namespace detail {

/// Quadrant vectors: fixed corner cases first (zero, axis vectors, scaled and
/// tiny axis vectors, all-ones, tiny all-ones), then uniform samples in
/// [0, R]^n with each component zeroed with probability 1/4.
inline std::vector<Point> quadrant_corners(std::size_t n, double radius) {
  std::vector<Point> out;
  out.emplace_back(n, 0.0);
  for (double scale : {1.0, radius, 1e-6, 0.5}) {
    for (std::size_t i = 0; i < n; ++i) {
      Point e(n, 0.0);
      e[i] = scale;
      out.push_back(std::move(e));
    }
  }
  out.emplace_back(n, 1.0);
  out.emplace_back(n, 1e-6);
  out.emplace_back(n, radius);
  return out;
}

inline Point random_quadrant(Rng& rng, std::size_t n, double radius) {
  Point q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    q[i] = rng.index(4) == 0 ? 0.0 : u * radius;
  }
  return q;
}

inline Point random_fraction(Rng& rng, std::span<const double> of) {
  Point q(of.size());
  for (std::size_t i = 0; i < of.size(); ++i) q[i] = rng.index(5) == 0 ? 0.0 : rng.uniform() * of[i];
  return q;
}

inline bool is_zero(std::span<const double> q) {
  return std::all_of(q.begin(), q.end(), [](double x) { return x == 0.0; });
}

inline Point add(std::span<const double> a, std::span<const double> b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point scale(std::span<const double> a, double s) {
  Point r(a.begin(), a.end());
  for (double& x : r) x *= s;
  return r;
}

inline bool leq(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Definiteness on the quadrant: Phi(0) <= tau and Phi(q) > tau for q != 0.
inline ValidationReport definiteness_report(const PhiFunction& phi, const SamplerParams& sp,
                                            std::string condition) {
  const double tau = sp.tol.metric;
  MarginTracker t(std::move(condition), 0.0);
  auto visit = [&](const Point& q) {
    const double v = phi.evaluate(q);
    const double margin = is_zero(q) ? v - tau : tau - v;
    t.observe(margin, [&] { return q; });
  };
  const std::size_t n = phi.dimension();
  for (const auto& q : quadrant_corners(n, sp.radius)) visit(q);
  Rng rng(derive_seed(sp.seed, 0xA));
  while (t.samples() < sp.count) visit(random_quadrant(rng, n, sp.radius));
  return t.finish();
}

}  // namespace detail

/// (A): Phi(q) = 0 iff q = 0.
inline ValidationReport check_condition_A(const PhiFunction& phi, const SamplerParams& sp = {}) {
  return detail::definiteness_report(phi, sp, "condition_A");
}

/// Excess of the triangle-type conclusion Phi(r) <= Phi(p) + Phi(q),
/// normalized by max(1, Phi(p) + Phi(q)).
inline double condition_B_excess(const PhiFunction& phi, std::span<const double> r,
                                 std::span<const double> p, std::span<const double> q) {
  const double rhs = phi.evaluate(p) + phi.evaluate(q);
  return (phi.evaluate(r) - rhs) / relative_scale(rhs);
}

/// (B): for all q1, q2, q3 with q_j <= q_k + q_l, Phi(q_j) <= Phi(q_k) + Phi(q_l).
/// Every permutation whose hypothesis holds is tested. Sample shapes: the
/// forced triple (p, q, p + q), random r <= p + q, and (p, q, q) with p <= 2q.
/// Witness layout: [q_j, q_k, q_l].
inline ValidationReport check_condition_B(const PhiFunction& phi, const SamplerParams& sp = {}) {
  const std::size_t n = phi.dimension();
  MarginTracker t("condition_B", sp.tol.metric);
  auto visit_triple = [&](const Point& a, const Point& b, const Point& c) {
    const Point* tri[3] = {&a, &b, &c};
    for (int j = 0; j < 3; ++j) {
      const Point& qj = *tri[j];
      const Point& qk = *tri[(j + 1) % 3];
      const Point& ql = *tri[(j + 2) % 3];
      if (!detail::leq(qj, detail::add(qk, ql))) continue;
      t.observe(condition_B_excess(phi, qj, qk, ql), [&] { return concat({qj, qk, ql}); });
    }
  };
  // Corner triples: (e_i, e_i, 2e_i), (e_i, e_j, e_i + e_j), scaled ones.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Point ei(n, 0.0), ej(n, 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      visit_triple(detail::add(ei, ej), ei, ej);
    }
  }
  const Point ones(n, 1.0);
  visit_triple(detail::scale(ones, 2.0), ones, ones);
  visit_triple(Point(n, 0.0), Point(n, 0.0), Point(n, 0.0));

  Rng rng(derive_seed(sp.seed, 0xB));
  std::size_t shape = 0;
  while (t.samples() < sp.count) {
    const Point p = detail::random_quadrant(rng, n, sp.radius);
    const Point q = detail::random_quadrant(rng, n, sp.radius);
    switch (shape++ % 3) {
      case 0: visit_triple(detail::add(p, q), p, q); break;
      case 1: visit_triple(detail::random_fraction(rng, detail::add(p, q)), p, q); break;
      default: visit_triple(detail::random_fraction(rng, detail::scale(q, 2.0)), q, q); break;
    }
  }
  return t.finish("all permutations whose hypothesis holds are tested");
}

/// Conditions (1) positivity, (2) monotonicity, (3) subadditivity and
/// (4) positive homogeneity, which together say Psi is a norm.
inline std::vector<ValidationReport> check_conditions_1_to_4(const PhiFunction& phi,
                                                             const SamplerParams& sp = {}) {
  const std::size_t n = phi.dimension();
  const double tau = sp.tol.metric;
  std::vector<ValidationReport> out;
  out.push_back(detail::definiteness_report(phi, sp, "condition_1_positivity"));

  {
    MarginTracker t("condition_2_monotonicity", tau);
    auto visit = [&](const Point& q, const Point& p) {
      const double fp = phi.evaluate(p);
      t.observe((phi.evaluate(q) - fp) / relative_scale(fp), [&] { return concat({q, p}); });
    };
    for (const auto& p : detail::quadrant_corners(n, sp.radius)) visit(Point(n, 0.0), p);
    Rng rng(derive_seed(sp.seed, 0x2));
    while (t.samples() < sp.count) {
      const Point p = detail::random_quadrant(rng, n, sp.radius);
      visit(detail::random_fraction(rng, p), p);
    }
    out.push_back(t.finish("witness layout: [q, p] with q <= p"));
  }

  {
    MarginTracker t("condition_3_subadditivity", tau);
    auto visit = [&](const Point& p, const Point& q) {
      const double rhs = phi.evaluate(p) + phi.evaluate(q);
      t.observe((phi.evaluate(detail::add(p, q)) - rhs) / relative_scale(rhs),
                [&] { return concat({p, q}); });
    };
    const auto corners = detail::quadrant_corners(n, sp.radius);
    for (const auto& p : corners)
      for (const auto& q : corners) visit(p, q);
    Rng rng(derive_seed(sp.seed, 0x3));
    while (t.samples() < sp.count) {
      visit(detail::random_quadrant(rng, n, sp.radius), detail::random_quadrant(rng, n, sp.radius));
    }
    out.push_back(t.finish("witness layout: [p, q]"));
  }

  {
    MarginTracker t("condition_4_homogeneity", tau);
    auto visit = [&](double lambda, const Point& q) {
      const double rhs = lambda * phi.evaluate(q);
      const double lhs = phi.evaluate(detail::scale(q, lambda));
      Point w{lambda};
      w.insert(w.end(), q.begin(), q.end());
      t.observe(std::abs(lhs - rhs) / relative_scale(rhs), [&] { return w; });
    };
    const double lambdas[] = {0.0, 0.5, 2.0, 3.0, 10.0, 1e-3};
    for (const auto& q : detail::quadrant_corners(n, sp.radius))
      for (double l : lambdas) visit(l, q);
    Rng rng(derive_seed(sp.seed, 0x4));
    std::size_t k = 0;
    while (t.samples() < sp.count) {
      const double l = (k++ % 2 == 0) ? lambdas[rng.index(std::size(lambdas))] : rng.uniform(0.0, 4.0);
      visit(l, detail::random_quadrant(rng, n, sp.radius));
    }
    out.push_back(t.finish("witness layout: [lambda, q]"));
  }
  return out;
}

/// |Phi^2(lambda) - sum_i Phi^2(lambda_i e_i)|, unnormalized.
inline double condition_5_defect(const PhiFunction& phi, std::span<const double> lambda) {
  const double whole = phi.evaluate(lambda);
  double parts = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double a = phi.on_axis(i, lambda[i]);
    parts += a * a;
  }
  return std::abs(whole * whole - parts);
}

/// (5): Phi^2(sum lambda_i e_i) = sum Phi^2(lambda_i e_i) for lambda_i > 0;
/// with (1)-(4) this makes Psi a scalar-product norm with e_i orthogonal.
inline ValidationReport check_condition_5(const PhiFunction& phi, const SamplerParams& sp = {}) {
  const std::size_t n = phi.dimension();
  MarginTracker t("condition_5_orthogonal_sum", sp.tol.metric);
  auto visit = [&](const Point& lambda) {
    double parts = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = phi.on_axis(i, lambda[i]);
      parts += a * a;
    }
    t.observe(condition_5_defect(phi, lambda) / relative_scale(parts), [&] { return lambda; });
  };
  visit(Point(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    Point l(n, 1.0);
    l[i] = 2.0;
    visit(l);
  }
  Rng rng(derive_seed(sp.seed, 0x5));
  while (t.samples() < sp.count) {
    Point l(n);
    for (double& x : l) x = sp.radius * (1.0 - rng.uniform());  // (0, R]
    visit(l);
  }
  return t.finish();
}

namespace detail {

inline bool all_passed(const std::vector<ValidationReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const ValidationReport& r) { return r.passed(); });
}

/// Minimum Euclidean separation between x and +-y for strict convexity
/// samples; closer pairs have midpoint norms within tau_strict of 1 even for
/// strictly convex balls.
inline constexpr double kStrictSeparation = 0.1;

}  // namespace detail

/// Strict convexity of the Psi unit ball: for unit vectors x != +-y the
/// midpoint has norm < 1 - tau_strict. Pairs closer than 0.1 (Euclidean)
/// to being parallel are skipped. Witness layout: [x, y].
inline ValidationReport check_strict_convexity(const PsiNorm& psi,
                                               const std::vector<ValidationReport>& norm_reports,
                                               const SamplerParams& sp = {}) {
  if (!detail::all_passed(norm_reports)) {
    return undetermined_report("strict_convexity", "conditions (1)-(4) do not all pass; Psi is not known to be a norm");
  }
  const std::size_t n = psi.dimension();
  MarginTracker t("strict_convexity", 0.0);
  auto visit = [&](Point x, Point y) {
    const double nx = psi(x), ny = psi(y);
    if (nx == 0.0 || ny == 0.0) return t.skip();
    for (double& v : x) v /= nx;
    for (double& v : y) v /= ny;
    Point diff(n), sum(n);
    for (std::size_t i = 0; i < n; ++i) {
      diff[i] = x[i] - y[i];
      sum[i] = x[i] + y[i];
    }
    if (euclidean_norm(diff) < detail::kStrictSeparation || euclidean_norm(sum) < detail::kStrictSeparation) {
      return t.skip();
    }
    for (double& v : sum) v *= 0.5;
    t.observe(psi(sum) - (1.0 - sp.tol.strict), [&] { return concat({x, y}); });
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Point ei(n, 0.0), ej(n, 0.0);
      ei[i] = 1.0;
      ej[j] = 1.0;
      visit(ei, ej);
      Point a(n, 0.0), b(n, 0.0);
      a[i] = 1.0;
      a[j] = 1.0;
      b[i] = 1.0;
      b[j] = -1.0;
      visit(a, b);
    }
  }
  if (n == 1) {
    // The unit sphere is {-1, 1}; the only pair is antipodal, midpoint 0.
    t.observe(psi(Point{0.0}) - (1.0 - sp.tol.strict), [] { return Point{1.0, -1.0}; });
    return t.finish("one-dimensional norm; the unit sphere has no non-antipodal pairs");
  }
  Rng rng(derive_seed(sp.seed, 0x6));
  while (t.samples() < sp.count) {
    Point x(n), y(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    for (double& v : y) v = rng.uniform(-1.0, 1.0);
    visit(std::move(x), std::move(y));
  }
  return t.finish("pairs within 0.1 of parallel are skipped");
}

inline ValidationReport check_strict_convexity(const PsiNorm& psi, const SamplerParams& sp = {}) {
  return check_strict_convexity(psi, check_conditions_1_to_4(psi.phi(), sp), sp);
}

/// Ordered: each class implies the ones before it.
enum class PhiClass {
  not_a_metric_product,
  metric_compatible,
  norm_induced,
  strictly_convex_norm,
  scalar_product_induced,
};

inline const char* to_string(PhiClass c) {
  switch (c) {
    case PhiClass::not_a_metric_product: return "not-a-metric-product";
    case PhiClass::metric_compatible: return "metric-compatible";
    case PhiClass::norm_induced: return "norm-induced";
    case PhiClass::strictly_convex_norm: return "strictly-convex-norm";
    case PhiClass::scalar_product_induced: return "scalar-product-induced";
  }
  return "not-a-metric-product";
}

struct Classification {
  PhiClass phi_class = PhiClass::not_a_metric_product;
  std::vector<ValidationReport> reports;

  bool at_least(PhiClass c) const { return static_cast<int>(phi_class) >= static_cast<int>(c); }

  const ValidationReport* find(const std::string& condition) const {
    for (const auto& r : reports)
      if (r.condition == condition) return &r;
    return nullptr;
  }
};

inline Classification classify_phi(const PhiFunction& phi, const SamplerParams& sp = {}) {
  Classification c;
  c.reports.push_back(check_condition_A(phi, sp));
  c.reports.push_back(check_condition_B(phi, sp));
  const bool metric = c.reports[0].passed() && c.reports[1].passed();

  auto norm_reports = check_conditions_1_to_4(phi, sp);
  const bool norm = detail::all_passed(norm_reports);
  c.reports.insert(c.reports.end(), norm_reports.begin(), norm_reports.end());

  ValidationReport strict = check_strict_convexity(PsiNorm(phi), norm_reports, sp);
  ValidationReport five = norm ? check_condition_5(phi, sp)
                               : undetermined_report("condition_5_orthogonal_sum",
                                                     "conditions (1)-(4) do not all pass");
  const bool strictly_convex = strict.passed();
  const bool scalar = five.passed();
  c.reports.push_back(std::move(strict));
  c.reports.push_back(std::move(five));

  if (!metric) {
    c.phi_class = PhiClass::not_a_metric_product;
  } else if (!norm) {
    c.phi_class = PhiClass::metric_compatible;
  } else if (scalar && strictly_convex) {
    c.phi_class = PhiClass::scalar_product_induced;
  } else if (strictly_convex) {
    c.phi_class = PhiClass::strictly_convex_norm;
  } else {
    c.phi_class = PhiClass::norm_induced;
  }
  return c;
}

/// Weights (Phi^2(e_1), ..., Phi^2(e_n)) of the induced scalar product
/// <v, w>_Phi = sum_i Phi^2(e_i) <v_i, w_i>_i.
inline std::vector<double> induced_scalar_product(const PhiFunction& phi, const Classification& c) {
  if (c.phi_class != PhiClass::scalar_product_induced) {
    throw PreconditionError("phi '" + phi.name() + "' is " + to_string(c.phi_class) +
                            ", not induced by a scalar product");
  }
  std::vector<double> w(phi.dimension());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double a = phi.on_axis(i);
    w[i] = a * a;
  }
  return w;
}

inline std::vector<double> induced_scalar_product(const PhiFunction& phi, const SamplerParams& sp = {}) {
  return induced_scalar_product(phi, classify_phi(phi, sp));
}

}  // namespace metprod

#endif  // METPROD_PHI_HPP_
