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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "metprod/metprod.hpp"
#include "metprod/runner.hpp"

namespace {

using namespace metprod;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const MetricSpace kLine = MetricSpace::real_line();
const MetricSpace kHalf = MetricSpace::half_line();

struct NamedPhi {
  const char* name;
  PhiFunction phi;
};

std::vector<NamedPhi> Catalog() {
  return {{"weighted-euclidean", PhiFunction::weighted_euclidean({1, 1})},
          {"sum", PhiFunction::sum(2)},
          {"max", PhiFunction::max(2)},
          {"lp p=3", PhiFunction::weighted_lp(3, {1, 1})},
          {"lp p=1.5", PhiFunction::weighted_lp(1.5, {1, 1})},
          {"two-valued", PhiFunction::two_valued(2)}};
}

Outcome Ac1() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<std::pair<MetricSpace, MetricSpace>> combos = {
      {kLine, kLine}, {kLine, kHalf}, {kHalf, kHalf}, {kLine, MetricSpace::discrete(4)}};
  int passed = 0, total = 0;
  for (const auto& [name, phi] : Catalog()) {
    for (const auto& [a, b] : combos) {
      ++total;
      bool ok = true;
      for (const auto& r : verify_metric_axioms(MetricSpace::product({a, b}, phi), 10000, 0)) ok &= r.passed();
      if (ok) ++passed;
      else o.detail += std::string(" [") + name + " over " + a.describe() + " x " + b.describe() + " failed]";
    }
  }
  const auto broken = MetricSpace::product({kLine}, named_custom_phi("first-squared", 1));
  const auto reps = verify_metric_axioms(broken, 10000, 0);
  const auto& tri = reps[2];
  bool witness_ok = tri.failed() && tri.witness.size() == 3;
  if (witness_ok) {
    const double x = tri.witness[0], y = tri.witness[1], z = tri.witness[2];
    witness_ok = (x - z) * (x - z) > (x - y) * (x - y) + (y - z) * (y - z);
  }
  const double secs = Seconds(t0);
  o.pass = passed == total && witness_ok && secs < 10.0;
  o.detail = std::to_string(passed) + "/" + std::to_string(total) + " products pass on 1e4 triples; q1^2 triangle " +
             (witness_ok ? "fails with witness (" + Fmt(tri.witness[0]) + ", " + Fmt(tri.witness[1]) + ", " +
                               Fmt(tri.witness[2]) + ")"
                         : std::string("NOT rejected")) +
             "; " + Fmt(secs) + " s" + o.detail;
  return o;
}

Outcome Ac2() {
  Outcome o;
  std::ostringstream d;
  const PhiClass expected[] = {PhiClass::scalar_product_induced, PhiClass::norm_induced, PhiClass::norm_induced,
                               PhiClass::strictly_convex_norm, PhiClass::strictly_convex_norm,
                               PhiClass::metric_compatible};
  const auto cat = Catalog();
  for (std::size_t k = 0; k < cat.size(); ++k) {
    const auto c = classify_phi(cat[k].phi);
    const bool ok = c.phi_class == expected[k];
    o.pass &= ok;
    d << cat[k].name << "=" << to_string(c.phi_class) << (ok ? "" : "(WRONG)") << "; ";
    if (k == 1 || k == 2) {
      // Midpoint of the strict convexity witness has Psi = 1.
      const auto* sc = c.find("strict_convexity");
      bool mid_ok = sc && sc->failed() && sc->witness.size() == 4;
      if (mid_ok) {
        const Point m{(sc->witness[0] + sc->witness[2]) / 2, (sc->witness[1] + sc->witness[3]) / 2};
        mid_ok = std::abs(PsiNorm(cat[k].phi)(m) - 1.0) <= 1e-12;
      }
      o.pass &= mid_ok;
      if (!mid_ok) d << "(no unit midpoint witness) ";
    }
    if (k == 5) {
      const auto* h = c.find("condition_4_homogeneity");
      const bool found = h && h->failed();
      o.pass &= found;
      d << "homogeneity witness " << (found ? "found" : "MISSING") << "; ";
    }
  }
  const Point ones{1, 1};
  double min_defect = kInfinity;
  for (double p : {1.0, 1.5, 3.0, 4.0})
    min_defect = std::min(min_defect, condition_5_defect(PhiFunction::weighted_lp(p, {1, 1}), ones));
  const double d2 = condition_5_defect(PhiFunction::weighted_lp(2, {1, 1}), ones);
  const bool sep = min_defect > 1e-3 && d2 < 1e-12;
  o.pass &= sep;
  d << "condition (5) at (1,1): p=2 defect " << Fmt(d2) << ", min over p in {1,1.5,3,4} " << Fmt(min_defect);
  o.detail = d.str();
  return o;
}

Outcome Ac3() {
  Outcome o;
  int total = 0, passed = 0;
  double worst_ratio = 0.0;
  std::vector<NamedPhi> norms;
  for (auto& np : Catalog())
    if (std::string(np.name) != "two-valued") norms.push_back(np);
  std::vector<ProductSpace> prods;
  for (const auto& np : norms) prods.push_back(make_product({kLine, kLine}, np.phi));
  Rng rng(derive_seed(0, 3));
  for (int k = 0; k < 100; ++k) {
    std::vector<Curve> comps;
    for (int f = 0; f < 2; ++f) {
      std::vector<Point> bps;
      const int n = 2 + static_cast<int>(rng.index(4));
      for (int b = 0; b < n; ++b) bps.push_back({rng.uniform(-5, 5)});
      comps.push_back(Curve::constant_speed_polyline(kLine, bps));
    }
    for (const auto& prod : prods) {
      const auto r = product_curve_length_check(prod, comps, 12);
      ++total;
      if (r.passed()) ++passed;
      worst_ratio = std::max(worst_ratio, r.worst_margin / r.threshold);
    }
  }
  const auto euclid = make_product({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const auto r345 = product_curve_length_check(euclid, {Curve::segment({0}, {3}), Curve::segment({0}, {4})}, 12);
  const bool ok345 = r345.passed() && std::abs(r345.witness[0] - 5.0) <= 1e-6;
  o.pass = passed == total && ok345;
  o.detail = std::to_string(passed) + "/" + std::to_string(total) + " (pair, phi) instances within tau_len at depth 12" +
             " (worst margin/threshold " + Fmt(worst_ratio) + "); 3-4-5 length " + Fmt(r345.witness[0]);
  return o;
}

Outcome Ac4() {
  Outcome o;
  for (std::size_t depth = 1; depth <= 10; ++depth) {
    const auto r = non_length_space_demo(depth, 9, 0);
    if (!r.passed()) {
      o.pass = false;
      o.detail += "depth " + std::to_string(depth) + " failed; ";
    }
  }
  const auto est = curve_length(two_valued_plane(), Curve::segment({0, 0}, {1, 0}), 10);
  o.pass &= est.length >= 1024.0;
  o.detail += "L_{2^k} >= 2^k for 9 paths at depths 1..10; straight (0,0)->(1,0) at depth 10: " + Fmt(est.length);
  return o;
}

Outcome Ac5() {
  Outcome o;
  const std::vector<MetricSpace> geodesic_factors = {kLine, kHalf, MetricSpace::lp(2, 2), MetricSpace::lp(2, 1),
                                                     MetricSpace::lp(2, kInfinity), MetricSpace::lp(2, 1.5)};
  const std::vector<NamedPhi> strict = {{"weighted-euclidean", PhiFunction::weighted_euclidean({1, 1})},
                                        {"lp p=3", PhiFunction::weighted_lp(3, {1, 1})},
                                        {"lp p=1.5", PhiFunction::weighted_lp(1.5, {1, 1})}};
  int geos = 0, geo_ok = 0;
  for (const auto& np : strict) {
    const auto cls = classify_phi(np.phi);
    for (std::size_t i = 0; i < geodesic_factors.size(); ++i) {
      for (std::size_t j = i; j < geodesic_factors.size(); ++j) {
        const ProductSpace prod({geodesic_factors[i], geodesic_factors[j]}, np.phi, cls);
        const auto pts = sample_points(prod.space(), 10, derive_seed(i, j));
        for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
          const auto g = product_geodesic(prod, pts[k], pts[k + 1]);
          Tolerances tol;
          tol.metric = 1e-9 * std::min(1.0, g.length());  // threshold 1e-9 * D for every D
          ++geos;
          if (geodesy_test(prod.space(), g, 64, tol).passed() &&
              component_progress_check(prod.space(), g, 64, Tolerances{}).passed())
            ++geo_ok;
        }
      }
    }
  }
  const auto taxi = make_product({kLine, kLine}, PhiFunction::sum(2));
  const auto u = uniqueness_probe(taxi, {0, 0}, {1, 1});
  const bool taxi_ok = !u.unique() && u.witnesses && u.sup_distance > 0.1;

  const auto euclid = make_product({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const auto pts = sample_points(euclid.space(), 100, 55);
  int unique = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); k += 2) unique += uniqueness_probe(euclid, pts[k], pts[k + 1]).unique();

  o.pass = geo_ok == geos && taxi_ok && unique == 50;
  o.detail = std::to_string(geo_ok) + "/" + std::to_string(geos) +
             " product geodesics pass geodesy (grid 64, 1e-9 D) and the t/D identity; sum (0,0)->(1,1): " +
             std::to_string(u.found.size()) + " geodesics, sup-distance " + Fmt(u.sup_distance) +
             "; euclidean unique on " + std::to_string(unique) + "/50 pairs";
  return o;
}

Outcome Ac6() {
  Outcome o;
  const auto euclid = make_product({kLine, kLine}, PhiFunction::weighted_euclidean({1, 1}));
  const auto cat = cat0_four_point_check(euclid.space(), 1000, 0);
  const auto taxi = make_product({kLine, kLine}, PhiFunction::sum(2));
  const std::vector<Triangle> tri = {{{0, 0}, {2, 0}, {0, 2}}};
  const auto bad = cat0_four_point_check(taxi.space(), tri);
  const bool bad_ok = bad.failed() && bad.worst_margin == 2.0;

  const std::vector<PhiFunction> strict = {PhiFunction::weighted_euclidean({1, 1}), PhiFunction::weighted_lp(3, {1, 1}),
                                           PhiFunction::weighted_lp(1.5, {1, 1})};
  const std::vector<std::pair<MetricSpace, MetricSpace>> convex = {
      {kLine, kLine}, {kLine, kHalf}, {MetricSpace::lp(2, 2), kLine}, {MetricSpace::lp(2, 1.5), kHalf}};
  std::vector<Classification> classes;
  for (const auto& phi : strict) classes.push_back(classify_phi(phi));
  int pairs = 0, pairs_ok = 0;
  double worst = -kInfinity;
  for (std::size_t k = 0; pairs < 100; ++k) {
    const auto& [a, b] = convex[(k / strict.size()) % convex.size()];
    const ProductSpace prod({a, b}, strict[k % strict.size()], classes[k % strict.size()]);
    const auto pts = sample_points(prod.space(), 4, derive_seed(6, k));
    const auto r = busemann_convexity_check(prod.space(), product_geodesic(prod, pts[0], pts[1]),
                                            product_geodesic(prod, pts[2], pts[3]), 32);
    ++pairs;
    pairs_ok += r.passed();
    worst = std::max(worst, r.worst_margin);
  }
  o.pass = cat.passed() && cat.samples == 1000 && bad_ok && pairs_ok == pairs;
  o.detail = "euclidean CAT(0) " + std::string(to_string(cat.verdict)) + " on " + std::to_string(cat.samples) +
             " triangles; sum triangle margin " + Fmt(bad.worst_margin) + "; Busemann " + std::to_string(pairs_ok) +
             "/" + std::to_string(pairs) + " pairs (grid 32, worst margin " + Fmt(worst) + ")";
  return o;
}

Outcome Ac7() {
  Outcome o;
  const auto e = PhiFunction::weighted_euclidean({1, 1});
  const auto r1 = product_rank(make_product({kLine, kHalf}, e));
  const auto r5 = product_rank(make_product({MetricSpace::lp(2, 2), MetricSpace::lp(3, 2)}, e));
  const auto ce = counterexample_sum_halflines(10.0, 101);
  const auto rs = product_rank(make_product({kHalf, kHalf}, PhiFunction::sum(2)));
  bool ranks = r1.rank == 1 && r5.rank == 5 && ce.passed() && ce.worst_margin == 0.0 && rs.additivity_not_guaranteed;

  const NormedDomain line{1, [](std::span<const double> v) { return std::abs(v[0]); }};
  const std::vector<Point> vecs = {{-2.0}, {-1.0}, {-0.5}, {0.25}, {1.0}, {3.0}};
  bool alpha_ok = true;
  for (const auto& phi : {e, PhiFunction::weighted_lp(3, {1, 1}), PhiFunction::weighted_lp(1.5, {1, 1})}) {
    const auto prod = make_product({kLine, kLine}, phi);
    const double sa = 1.0 / phi.on_axis(0, 1.0);
    const double sd = 1.0 / phi.evaluate(Point{1, 1});
    const auto axis = alpha_decompose([sa](std::span<const double> a) { return Point{sa * a[0], 0.0}; }, line, prod,
                                      {0.0}, {2.5}, vecs);
    const auto diag = alpha_decompose([sd](std::span<const double> a) { return Point{sd * a[0], sd * a[0]}; }, line,
                                      prod, {0.0}, {-1.5}, vecs);
    for (const auto* res : {&axis, &diag})
      for (const auto& r : res->reports) alpha_ok &= r.passed();
  }
  const auto raw = alpha_decompose([](std::span<const double> a) { return Point{a[0], a[0]}; }, line,
                                   make_product({kLine, kLine}, e), {0.0}, {1.0}, vecs);
  const double m = raw.reports[0].worst_margin;
  const bool raw_ok = raw.reports[0].failed() && std::abs(m - (std::numbers::sqrt2 - 1.0)) <= 1e-9;
  o.pass = ranks && alpha_ok && raw_ok;
  o.detail = "rank(line x half-line)=" + (r1.rank ? std::to_string(*r1.rank) : std::string("?")) +
             ", rank(lp(2,2) x lp(3,2))=" + (r5.rank ? std::to_string(*r5.rank) : std::string("?")) +
             "; half-line line " + to_string(ce.verdict) + " exactly on 101 points; sum additivity flag " +
             (rs.additivity_not_guaranteed ? "set" : "MISSING") + "; rescaled axis/diagonal alpha " +
             (alpha_ok ? "pass" : "FAIL") + "; unrescaled diagonal margin " + Fmt(m);
  return o;
}

Outcome Ac8() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<Point> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back({0.25 * k});
  const auto found = finite_embedding_oracle({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, grid, kHalf);
  int none = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto sample = sample_points(kLine, 63, seed, 3.0);
    sample.push_back({0.0});
    for (auto& p : sample) p[0] = std::round(p[0] * 4.0) / 4.0;  // lattice so unit gaps occur
    none += !finite_embedding_oracle({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, sample, kLine).found();
  }
  const double secs = Seconds(t0);
  o.pass = found.found() && none == 10 && secs < 1.0;
  o.detail = std::string("line pattern in half-line grid: ") + (found.found() ? "found" : "none") +
             "; equilateral triple: none in " + std::to_string(none) + "/10 line samples; " + Fmt(secs) + " s";
  return o;
}

Outcome Ac9() {
  Outcome o;
  const auto cfg = load_config(std::string(METPROD_CONFIG_DIR) + "/full_suite.json");
  RunOptions opt;
  opt.seed = 0;
  const auto a = run_config(cfg, opt);
  const auto b = run_config(cfg, opt);
  const std::string ja = render_json(a), jb = render_json(b);
  o.pass = ja == jb && a.exit_code == kExitPass;
  o.detail = std::to_string(a.records.size()) + " records, " + std::to_string(ja.size()) + " bytes, " +
             (ja == jb ? "byte-identical" : "DIFFERENT") + ", exit " + std::to_string(a.exit_code);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 metric lemma suite", Ac1},   {"AC2 characterization ladder", Ac2}, {"AC3 product-length lemma", Ac3},
      {"AC4 non-length-space demo", Ac4}, {"AC5 geodesics", Ac5},                {"AC6 comparison/convexity", Ac6},
      {"AC7 rank", Ac7},                 {"AC8 embedding oracle", Ac8},         {"AC9 determinism", Ac9},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %-30s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
