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

// Declarative run configurations (JSON, version 1) and the pipeline that
// executes their checks in order and renders one record per report.
//
// Config layout:
//   {
//     "version": 1,
//     "seed": 0,                      // default seed for every check
//     "spaces": {"name": {...}},      // real-line | half-line | lp | discrete | finite | product
//     "phis":   {"name": {...}},      // weighted-lp | weighted-euclidean | sum | max | two-valued | custom
//     "curves": {"name": {...}},      // polyline | segment | circle-arc | product
//     "checks": [{"op": "...", ...}]
//   }
// Anywhere a space, phi or curve is referenced, either a name or an inline
// object is accepted. Every check may carry "id" and "expect"; with
// "expect" the check passes iff its verdict equals the expected one.

#ifndef METPROD_RUNNER_HPP_
#define METPROD_RUNNER_HPP_

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "metprod/metprod.hpp"

namespace metprod {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitBudgetExceeded = 3 };

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> depth;
  Tolerances tol{};
  bool timing = false;
};

struct RunResult {
  int exit_code = kExitPass;
  std::vector<nlohmann::json> records;
};

/// Applies "KEY=VAL" with KEY in {metric, strict, embed, length_floor}.
inline void set_tolerance(Tolerances& tol, const std::string& key, double value) {
  if (!(value >= std::numeric_limits<double>::epsilon())) {
    throw ConfigError("tolerance " + key + " must be at least machine epsilon");
  }
  if (key == "metric") tol.metric = value;
  else if (key == "strict") tol.strict = value;
  else if (key == "embed") tol.embed = value;
  else if (key == "length_floor") tol.length_floor = value;
  else throw ConfigError("unknown tolerance key '" + key + "'");
}

inline void apply_tolerance_override(Tolerances& tol, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerance override must be KEY=VAL: " + kv);
  double value = 0.0;
  try {
    value = std::stod(kv.substr(eq + 1));
  } catch (const std::exception&) {
    throw ConfigError("tolerance value is not a number: " + kv);
  }
  set_tolerance(tol, kv.substr(0, eq), value);
}

namespace detail {

using nlohmann::json;

inline double json_number(const json& j, const std::string& what) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return kInfinity;
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

inline Point json_point(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  Point p;
  for (const auto& v : j) p.push_back(json_number(v, what));
  return p;
}

inline std::vector<Point> json_points(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of points");
  std::vector<Point> out;
  for (const auto& v : j) out.push_back(json_point(v, what));
  return out;
}

inline std::vector<double> json_weights(const json& j, std::size_t n_default) {
  if (j.contains("weights")) return json_point(j.at("weights"), "weights");
  if (j.contains("dimension")) return std::vector<double>(j.at("dimension").get<std::size_t>(), 1.0);
  if (n_default) return std::vector<double>(n_default, 1.0);
  throw ConfigError("phi needs 'weights' or 'dimension'");
}

inline json witness_json(const std::vector<double>& w) {
  json a = json::array();
  for (double v : w) a.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  return a;
}

inline json margin_json(double m) { return std::isfinite(m) ? json(m) : json(nullptr); }

class Pipeline {
 public:
  Pipeline(json config, RunOptions opt) : cfg_(std::move(config)), opt_(std::move(opt)) {
    if (!cfg_.is_object()) throw ConfigError("config must be a JSON object");
    if (!cfg_.contains("version")) throw ConfigError("config needs a top-level 'version'");
    if (cfg_.at("version") != 1) throw ConfigError("unsupported config version");
    default_seed_ = opt_.seed.value_or(cfg_.value("seed", std::uint64_t{0}));
    if (cfg_.contains("tolerances")) {
      for (const auto& [k, v] : cfg_.at("tolerances").items()) {
        set_tolerance(base_tol_, k, json_number(v, "tolerance"));
      }
    }
    // Command-line overrides win over the config file.
    const Tolerances defaults{};
    if (opt_.tol.metric != defaults.metric) base_tol_.metric = opt_.tol.metric;
    if (opt_.tol.strict != defaults.strict) base_tol_.strict = opt_.tol.strict;
    if (opt_.tol.embed != defaults.embed) base_tol_.embed = opt_.tol.embed;
    if (opt_.tol.length_floor != defaults.length_floor) base_tol_.length_floor = opt_.tol.length_floor;
    // Resolve every declared name up front so dangling references fail early.
    for (const char* section : {"phis", "spaces", "curves"}) {
      if (cfg_.contains(section) && !cfg_.at(section).is_object()) {
        throw ConfigError(std::string("'") + section + "' must be an object");
      }
    }
    if (cfg_.contains("phis"))
      for (const auto& [name, _] : cfg_.at("phis").items()) phi(json(name));
    if (cfg_.contains("spaces"))
      for (const auto& [name, _] : cfg_.at("spaces").items()) space(json(name));
    if (cfg_.contains("curves"))
      for (const auto& [name, _] : cfg_.at("curves").items()) curve(json(name));
  }

  RunResult run() {
    RunResult res;
    if (!cfg_.contains("checks") || !cfg_.at("checks").is_array()) throw ConfigError("config needs a 'checks' array");
    bool failed = false;
    std::size_t index = 0;
    for (const auto& check : cfg_.at("checks")) {
      if (!check.is_object() || !check.contains("op")) throw ConfigError("each check needs an 'op'");
      const std::string op = check.at("op").get<std::string>();
      const std::string id = check.value("id", op + "#" + std::to_string(index));
      const auto t0 = std::chrono::steady_clock::now();
      std::vector<json> records = dispatch(op, check);
      const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const std::optional<std::string> expect =
          check.contains("expect") ? std::optional<std::string>(check.at("expect").get<std::string>()) : std::nullopt;
      for (auto& r : records) {
        r["check"] = id;
        r["op"] = op;
        if (opt_.timing) r["elapsed_ms"] = elapsed;
        bool ok = true;
        if (expect) {
          r["expected"] = *expect;
          ok = r.at("verdict") == *expect;
          r["informational"] = false;
        } else if (!r.value("informational", false)) {
          ok = r.at("verdict") != "fail";
        }
        r["ok"] = ok;
        failed |= !ok;
        res.records.push_back(std::move(r));
      }
      ++index;
    }
    res.exit_code = failed ? kExitCheckFailure : kExitPass;
    return res;
  }

 private:
  // ----- resolution -------------------------------------------------------

  const json& lookup(const char* section, const json& ref, const std::string& what) const {
    if (ref.is_object()) return ref;
    if (!ref.is_string()) throw ConfigError(what + " reference must be a name or an object");
    const std::string name = ref.get<std::string>();
    if (!cfg_.contains(section) || !cfg_.at(section).contains(name)) {
      throw ConfigError("unresolved " + what + " reference '" + name + "'");
    }
    return cfg_.at(section).at(name);
  }

  PhiFunction phi(const json& ref) const {
    const json& j = lookup("phis", ref, "phi");
    const std::string type = j.value("type", "");
    try {
      if (type == "weighted-lp") return PhiFunction::weighted_lp(json_number(j.at("p"), "p"), json_weights(j, 0));
      if (type == "weighted-euclidean") return PhiFunction::weighted_euclidean(json_weights(j, 0));
      if (type == "sum") return PhiFunction::sum(j.at("dimension").get<std::size_t>());
      if (type == "max") return PhiFunction::max(j.at("dimension").get<std::size_t>());
      if (type == "two-valued") return PhiFunction::two_valued(j.at("dimension").get<std::size_t>());
      if (type == "custom") return named_custom_phi(j.at("name").get<std::string>(), j.value("dimension", std::size_t{1}));
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("bad phi: ") + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad phi: ") + e.what());
    }
    throw ConfigError("unknown phi type '" + type + "'");
  }

  MetricSpace space(const json& ref) const {
    const json& j = lookup("spaces", ref, "space");
    const std::string type = j.value("type", "");
    try {
      if (type == "real-line") return MetricSpace::real_line();
      if (type == "half-line") return MetricSpace::half_line();
      if (type == "lp") {
        const std::size_t m = j.at("dimension").get<std::size_t>();
        std::vector<double> w;
        if (j.contains("weights")) w = json_point(j.at("weights"), "weights");
        return MetricSpace::lp(m, json_number(j.at("p"), "p"), w);
      }
      if (type == "discrete") return MetricSpace::discrete(j.at("points").get<std::size_t>());
      if (type == "finite") return MetricSpace::finite(j.at("matrix").get<std::vector<std::vector<double>>>());
      if (type == "product") return product(ref).space();
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("bad space: ") + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad space: ") + e.what());
    }
    throw ConfigError("unknown space type '" + type + "'");
  }

  ProductSpace product(const json& ref) const {
    const json& j = lookup("spaces", ref, "space");
    if (j.value("type", "") != "product") throw ConfigError("expected a product space");
    const std::string key = j.dump();
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    if (!j.contains("factors") || !j.at("factors").is_array()) throw ConfigError("product needs a 'factors' array");
    std::vector<MetricSpace> factors;
    for (const auto& f : j.at("factors")) factors.push_back(space(f));
    PhiFunction f = phi(j.at("phi"));
    SamplerParams sp = sampler(j);
    try {
      ProductSpace p = make_product(std::move(factors), std::move(f), sp);
      products_.emplace(key, p);
      return p;
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("bad product: ") + e.what());
    }
  }

  Curve curve(const json& ref) const {
    const json& j = lookup("curves", ref, "curve");
    const std::string type = j.value("type", "");
    try {
      if (type == "polyline") {
        auto pts = json_points(j.at("points"), "points");
        if (j.value("constant_speed", false)) return Curve::constant_speed_polyline(space(j.at("space")), std::move(pts));
        return Curve::polyline(std::move(pts));
      }
      if (type == "segment") {
        return Curve::segment(json_point(j.at("from"), "from"), json_point(j.at("to"), "to"),
                              j.value("speed_exponent", 1.0));
      }
      if (type == "circle-arc") {
        return Curve::circle_arc(json_point(j.at("center"), "center"), j.at("radius").get<double>(),
                                 j.at("theta0").get<double>(), j.at("theta1").get<double>());
      }
      if (type == "product") {
        std::vector<Curve> parts;
        for (const auto& c : j.at("components")) parts.push_back(curve(c));
        return Curve::product_of(std::move(parts));
      }
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("bad curve: ") + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad curve: ") + e.what());
    }
    throw ConfigError("unknown curve type '" + type + "'");
  }

  SamplerParams sampler(const json& check) const {
    SamplerParams sp;
    sp.count = opt_.samples.value_or(check.value("samples", std::size_t{10000}));
    sp.seed = check.contains("seed") ? check.at("seed").get<std::uint64_t>() : default_seed_;
    sp.radius = check.value("radius", 10.0);
    sp.tol = base_tol_;
    if (sp.count == 0 || !(sp.radius > 0.0)) throw ConfigError("samples must be >= 1 and radius > 0");
    return sp;
  }

  std::size_t depth(const json& check, std::size_t fallback) const {
    return opt_.depth.value_or(check.value("depth", fallback));
  }

  GeodesicSelector selector(const json& j) const {
    const std::string s = j.get<std::string>();
    if (s == "affine") return GeodesicSelector::affine();
    unsigned axis = 0;
    if (std::sscanf(s.c_str(), "corner(%u)", &axis) == 1) return GeodesicSelector::corner(axis);
    throw ConfigError("unknown geodesic selector '" + s + "'");
  }

  std::vector<GeodesicSelector> selectors(const json& check, const char* key) const {
    std::vector<GeodesicSelector> out;
    if (check.contains(key))
      for (const auto& s : check.at(key)) out.push_back(selector(s));
    return out;
  }

  // ----- records ----------------------------------------------------------

  static json record(const ValidationReport& r) {
    json j;
    j["condition"] = r.condition;
    j["verdict"] = to_string(r.verdict);
    j["margin"] = margin_json(r.worst_margin);
    j["threshold"] = r.threshold;
    j["samples"] = r.samples;
    j["skipped"] = r.skipped;
    j["witness"] = witness_json(r.witness);
    j["note"] = r.note;
    j["informational"] = r.informational;
    return j;
  }

  static json info(const std::string& condition, json fields) {
    json j;
    j["condition"] = condition;
    j["verdict"] = "pass";
    j["informational"] = true;
    for (auto& [k, v] : fields.items()) j[k] = v;
    return j;
  }

  static std::vector<json> records(const std::vector<ValidationReport>& rs) {
    std::vector<json> out;
    for (const auto& r : rs) out.push_back(record(r));
    return out;
  }

  static json properties_json(const DeclaredProperties& p) {
    auto flag = [](const std::optional<bool>& b) { return b ? json(*b) : json("unknown"); };
    json j;
    j["length_space"] = flag(p.length_space);
    j["geodesic"] = flag(p.geodesic);
    j["uniquely_geodesic"] = flag(p.uniquely_geodesic);
    j["convex"] = flag(p.convex);
    j["minkowski_rank"] = p.minkowski_rank ? json(*p.minkowski_rank) : json("unknown");
    return j;
  }

  static json rank_json(const RankRecord& r) {
    json j;
    j["space"] = r.space;
    j["rank"] = r.rank ? json(*r.rank) : json("unknown");
    j["provenance"] = to_string(r.provenance);
    j["additivity_not_guaranteed"] = r.additivity_not_guaranteed;
    j["quasi_euclidean_equal"] = r.quasi_euclidean_equal;
    if (r.euclidean_rank) j["euclidean_rank"] = *r.euclidean_rank;
    j["warnings"] = r.warnings;
    return j;
  }

  // ----- checks -----------------------------------------------------------

  std::vector<json> dispatch(const std::string& op, const json& c) {
    try {
      return dispatch_impl(op, c);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const ConfigError&) {
      throw;
    } catch (const json::exception& e) {
      throw ConfigError("check '" + op + "': " + e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigError("check '" + op + "': " + e.what());
    } catch (const PreconditionError& e) {
      json j;
      j["condition"] = op;
      j["verdict"] = "fail";
      j["note"] = std::string("precondition: ") + e.what();
      j["informational"] = false;
      j["witness"] = json::array();
      return {j};
    }
  }

  std::vector<json> dispatch_impl(const std::string& op, const json& c) {
    if (op == "eval_phi") {
      const PhiFunction f = phi(c.at("phi"));
      return {info("eval_phi", {{"phi", f.name()}, {"value", eval_phi(f, json_point(c.at("q"), "q"))}})};
    }
    if (op == "condition_A") return {record(check_condition_A(phi(c.at("phi")), sampler(c)))};
    if (op == "condition_B") return {record(check_condition_B(phi(c.at("phi")), sampler(c)))};
    if (op == "conditions_1_to_4") return records(check_conditions_1_to_4(phi(c.at("phi")), sampler(c)));
    if (op == "condition_5") return {record(check_condition_5(phi(c.at("phi")), sampler(c)))};
    if (op == "strict_convexity") return {record(check_strict_convexity(PsiNorm(phi(c.at("phi"))), sampler(c)))};
    if (op == "classify") {
      const PhiFunction f = phi(c.at("phi"));
      const Classification cl = classify_phi(f, sampler(c));
      json j = info("classify", {{"phi", f.name()}, {"class", to_string(cl.phi_class)}});
      json reps = json::array();
      for (const auto& r : cl.reports) reps.push_back({{"condition", r.condition}, {"verdict", to_string(r.verdict)}});
      j["reports"] = reps;
      j["witness"] = json::array();
      if (c.contains("expect_class")) {
        j["informational"] = false;
        j["verdict"] = c.at("expect_class") == to_string(cl.phi_class) ? "pass" : "fail";
      }
      return {j};
    }
    if (op == "induced_scalar_product") {
      const PhiFunction f = phi(c.at("phi"));
      return {info("induced_scalar_product", {{"phi", f.name()}, {"weights", induced_scalar_product(f, sampler(c))}})};
    }
    if (op == "distance") {
      const MetricSpace s = space(c.at("space"));
      return {info("distance", {{"space", s.describe()},
                                {"value", s.distance(json_point(c.at("x"), "x"), json_point(c.at("y"), "y"))}})};
    }
    if (op == "metric_axioms") {
      const MetricSpace s = space(c.at("space"));
      const SamplerParams sp = sampler(c);
      return records(verify_metric_axioms(s, sp.count, sp.seed, sp.radius, sp.tol));
    }
    if (op == "curve_length") {
      const MetricSpace s = space(c.at("space"));
      const LengthEstimate est = curve_length(s, curve(c.at("curve")), depth(c, 12));
      json j = info("curve_length", {{"length", est.length}, {"trace", est.trace}, {"divergent", est.divergent}});
      if (est.divergent) j["note"] = "subdivision sums diverge; the path is not rectifiable";
      return {j};
    }
    if (op == "product_curve_length") {
      const ProductSpace p = product(c.at("space"));
      std::vector<Curve> parts;
      for (const auto& cc : c.at("components")) parts.push_back(curve(cc));
      return {record(product_curve_length_check(p, parts, depth(c, 12), base_tol_))};
    }
    if (op == "arclength") {
      return {record(arclength_check(space(c.at("space")), curve(c.at("curve")), c.value("grid", std::size_t{16}),
                                     depth(c, 10), base_tol_))};
    }
    if (op == "non_length_space") {
      const std::size_t d = depth(c, 10);
      if (c.contains("from")) {
        const Curve path = Curve::segment(json_point(c.at("from"), "from"), json_point(c.at("to"), "to"));
        return {record(non_length_space_probe(path, d, base_tol_))};
      }
      return {record(non_length_space_demo(d, c.value("paths", std::size_t{9}), sampler(c).seed, base_tol_))};
    }
    if (op == "geodesic") {
      const MetricSpace s = space(c.at("space"));
      const Point x = json_point(c.at("from"), "from"), y = json_point(c.at("to"), "to");
      const std::size_t grid = c.value("grid", std::size_t{64});
      const auto sel = selectors(c, "selectors");
      const Geodesic g = s.is_product() ? product_geodesic(product(c.at("space")), x, y, sel)
                                        : factor_geodesic(s, x, y, sel.empty() ? GeodesicSelector::affine() : sel.front());
      std::vector<json> out;
      out.push_back(record(geodesy_test(s, g, grid, base_tol_)));
      if (s.is_product()) out.push_back(record(component_progress_check(s, g, grid, base_tol_)));
      out.front()["length"] = g.length();
      out.front()["midpoint"] = witness_json(g.at_fraction(0.5));
      return out;
    }
    if (op == "uniqueness") {
      const ProductSpace p = product(c.at("space"));
      std::vector<std::vector<GeodesicSelector>> sets;
      if (c.contains("selector_sets"))
        for (const auto& set : c.at("selector_sets")) {
          std::vector<GeodesicSelector> v;
          for (const auto& s : set) v.push_back(selector(s));
          sets.push_back(v);
        }
      UniquenessOptions uo;
      uo.grid = c.value("grid", std::size_t{33});
      uo.perturbations = c.value("perturbations", std::size_t{64});
      uo.seed = sampler(c).seed;
      const auto res = uniqueness_probe(p, json_point(c.at("from"), "from"), json_point(c.at("to"), "to"), sets, uo, base_tol_);
      json j = record(res.report);
      j["result"] = res.unique() ? "unique" : "not-unique";
      j["geodesics_found"] = res.found.size();
      j["sup_distance"] = res.sup_distance;
      // Non-uniqueness is a finding, not an error, unless the product is
      // licensed to be uniquely geodesic.
      j["informational"] = !p.properties().uniquely_geodesic.value_or(false);
      return {j};
    }
    if (op == "busemann") {
      const ProductSpace p = product(c.at("space"));
      const std::size_t grid = c.value("grid", std::size_t{32});
      std::vector<ValidationReport> reps;
      if (c.contains("pairs")) {
        for (const auto& pr : c.at("pairs")) {
          const auto pts = json_points(pr, "pair");
          if (pts.size() != 4) throw ConfigError("busemann pairs need [from1, to1, from2, to2]");
          reps.push_back(busemann_convexity_check(p.space(), product_geodesic(p, pts[0], pts[1]),
                                                  product_geodesic(p, pts[2], pts[3]), grid, base_tol_));
        }
      } else {
        const SamplerParams sp = sampler(c);
        const std::size_t pairs = c.value("pairs_count", std::size_t{10});
        const auto pts = sample_points(p.space(), 4 * pairs, sp.seed, sp.radius);
        for (std::size_t k = 0; k < pairs; ++k) {
          reps.push_back(busemann_convexity_check(p.space(), product_geodesic(p, pts[4 * k], pts[4 * k + 1]),
                                                  product_geodesic(p, pts[4 * k + 2], pts[4 * k + 3]), grid, base_tol_));
        }
      }
      // Merge into the worst pair.
      ValidationReport worst = reps.front();
      for (const auto& r : reps)
        if (r.worst_margin > worst.worst_margin) worst = r;
      worst.samples = 0;
      for (const auto& r : reps) worst.samples += r.samples;
      worst.informational = !p.classification().at_least(PhiClass::strictly_convex_norm);
      worst.note = std::to_string(reps.size()) + " geodesic pairs; " + worst.note;
      return {record(worst)};
    }
    if (op == "cat0") {
      const MetricSpace s = space(c.at("space"));
      if (c.contains("triangles")) {
        std::vector<Triangle> tris;
        for (const auto& t : c.at("triangles")) {
          const auto pts = json_points(t, "triangle");
          if (pts.size() != 3) throw ConfigError("triangles need three points");
          tris.push_back({pts[0], pts[1], pts[2]});
        }
        return {record(cat0_four_point_check(s, tris, base_tol_))};
      }
      const SamplerParams sp = sampler(c);
      return {record(cat0_four_point_check(s, sp.count, sp.seed, sp.radius, base_tol_))};
    }
    if (op == "declared_rank") return {info("declared_rank", rank_json(declared_rank(space(c.at("space")))))};
    if (op == "product_rank") {
      const RankRecord r = product_rank(product(c.at("space")), c.value("assert_quasi_euclidean", false));
      json j = info("product_rank", rank_json(r));
      if (c.contains("expect_rank")) {
        j["informational"] = false;
        j["verdict"] = (r.rank && *r.rank == c.at("expect_rank").get<int>()) ? "pass" : "fail";
      }
      return {j};
    }
    if (op == "counterexample") {
      return {record(counterexample_sum_halflines(c.value("T", 10.0), c.value("grid", std::size_t{101})))};
    }
    if (op == "embedding_oracle") {
      const MetricSpace s = space(c.at("space"));
      const auto pattern = c.at("pattern").get<std::vector<std::vector<double>>>();
      const auto targets = json_points(c.at("targets"), "targets");
      const EmbeddingProbe probe = finite_embedding_oracle(pattern, targets, s, base_tol_);
      json j;
      j["condition"] = "embedding_oracle";
      j["verdict"] = probe.found() ? "pass" : "fail";
      j["result"] = probe.found() ? "found" : "none";
      j["nodes"] = probe.nodes;
      j["informational"] = true;
      json w = json::array();
      if (probe.assignment)
        for (std::size_t i : *probe.assignment) w.push_back(i);
      j["witness"] = w;
      return {j};
    }
    if (op == "alpha_decompose") {
      const ProductSpace p = product(c.at("space"));
      const auto matrix = c.at("matrix").get<std::vector<std::vector<double>>>();
      if (matrix.size() != p.space().point_dimension()) throw ConfigError("embedding matrix needs one row per product coordinate");
      const std::size_t k = matrix.front().size();
      const double norm_p = c.contains("domain_p") ? json_number(c.at("domain_p"), "domain_p") : 2.0;
      NormedDomain dom{k, [norm_p](std::span<const double> v) {
                         const auto lp = MetricSpace::lp(v.size(), norm_p);
                         return lp.distance_unchecked(v, Point(v.size(), 0.0));
                       }};
      Embedding emb = [matrix](std::span<const double> a) {
        Point x(matrix.size(), 0.0);
        for (std::size_t r = 0; r < matrix.size(); ++r)
          for (std::size_t col = 0; col < a.size(); ++col) x[r] += matrix[r][col] * a[col];
        return x;
      };
      const auto res = alpha_decompose(emb, dom, p, json_point(c.at("base_a"), "base_a"),
                                       json_point(c.at("base_b"), "base_b"), json_points(c.at("vectors"), "vectors"),
                                       {-2.0, -0.5, 0.0, 0.5, 2.0, 3.0}, base_tol_);
      return records(res.reports);
    }
    throw ConfigError("unknown check op '" + op + "'");
  }

  json cfg_;
  RunOptions opt_;
  std::uint64_t default_seed_ = 0;
  Tolerances base_tol_{};
  mutable std::map<std::string, ProductSpace> products_;
};

}  // namespace detail

/// Runs every check of `config` in order. Throws ConfigError for malformed
/// or unresolvable configs and BudgetExceeded for oversized searches.
inline RunResult run_config(const nlohmann::json& config, const RunOptions& opt = {}) {
  detail::Pipeline p(config, opt);
  return p.run();
}

inline nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
}

/// Line-delimited JSON, one record per line.
inline std::string render_json(const RunResult& r) {
  std::string out;
  for (const auto& rec : r.records) out += rec.dump() + "\n";
  return out;
}

inline std::string render_text(const RunResult& r) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "check" << std::setw(30) << "condition" << std::setw(14) << "verdict"
     << std::setw(14) << "margin" << "note\n";
  for (const auto& rec : r.records) {
    std::ostringstream margin;
    if (rec.contains("margin") && rec.at("margin").is_number()) margin << std::setprecision(6) << rec.at("margin").get<double>();
    else margin << "-";
    std::string verdict = rec.at("verdict").get<std::string>();
    if (rec.value("informational", false)) verdict += "*";
    if (rec.contains("expected")) verdict += rec.at("ok").get<bool>() ? " (exp)" : " (unexp)";
    std::string note = rec.value("note", "");
    for (const char* key : {"class", "value", "length", "rank", "result"}) {
      if (rec.contains(key)) note = std::string(key) + "=" + rec.at(key).dump() + (note.empty() ? "" : "; " + note);
    }
    os << std::left << std::setw(28) << rec.at("check").get<std::string>() << std::setw(30)
       << rec.at("condition").get<std::string>() << std::setw(14) << verdict << std::setw(14) << margin.str() << note
       << "\n";
  }
  os << (r.exit_code == kExitPass ? "all checks passed" : "some checks failed") << " (* = informational, exp = matches expected verdict)\n";
  return os.str();
}

struct Demo {
  const char* name;
  const char* description;
  const char* config;
};

/// Built-in demonstrations, each a complete config.
inline const std::vector<Demo>& demos() {
  static const std::vector<Demo> all = {
      {"counterexample", "line embedded in the sum-product of two half-lines (rank additivity needs strict convexity)",
       R"json({"version":1,
           "spaces":{"H":{"type":"half-line"},
                     "HH":{"type":"product","factors":["H","H"],"phi":{"type":"sum","dimension":2}}},
           "checks":[{"op":"counterexample","T":10,"grid":101},
                     {"op":"declared_rank","space":"H"},
                     {"op":"product_rank","space":"HH"}]})json"},
      {"non-length-space", "two-valued phi: subdivision sums of any injective path diverge",
       R"json({"version":1,"checks":[{"op":"non_length_space","depth":10,"paths":9}]})json"},
      {"L1-non-uniqueness", "sum phi on two lines: diagonal and staircase geodesics from (0,0) to (1,1)",
       R"json({"version":1,
           "spaces":{"L":{"type":"real-line"},
                     "L1":{"type":"lp","dimension":2,"p":1},
                     "plane":{"type":"product","factors":["L","L"],"phi":{"type":"sum","dimension":2}}},
           "checks":[{"op":"uniqueness","space":"plane","from":[0,0],"to":[1,1],"expect":"fail"},
                     {"op":"geodesic","space":"L1","from":[0,0],"to":[1,1],"selectors":["corner(1)"]},
                     {"op":"geodesic","space":"L1","from":[0,0],"to":[1,1],"selectors":["affine"]}]})json"},
      {"CAT0-failure", "comparison triangles: Euclidean product passes, sum product fails with margin 2",
       R"json({"version":1,
           "spaces":{"L":{"type":"real-line"},
                     "euclid":{"type":"product","factors":["L","L"],"phi":{"type":"weighted-euclidean","weights":[1,1]}},
                     "taxi":{"type":"product","factors":["L","L"],"phi":{"type":"sum","dimension":2}}},
           "checks":[{"op":"cat0","space":"euclid","samples":1000},
                     {"op":"cat0","space":"taxi","triangles":[[[0,0],[2,0],[0,2]]],"expect":"fail"}]})json"},
  };
  return all;
}

}  // namespace metprod

#endif  // METPROD_RUNNER_HPP_
