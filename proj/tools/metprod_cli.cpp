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

// metprod: command-line front end for the check pipeline.
//
// Every subcommand other than `run` synthesizes a config from its flags
// (optionally merged with --config FILE for named spaces and phis) and
// hands it to the same pipeline.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "metprod/runner.hpp"

namespace {

using nlohmann::json;

// A reference is either a name in the config or inline JSON.
json parse_ref(const std::string& s) {
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw metprod::ConfigError("malformed inline JSON '" + s + "': " + e.what());
    }
  }
  return json(s);
}

json base_config(const std::string& path) {
  json cfg = path.empty() ? json{{"version", 1}} : metprod::load_config(path);
  cfg["checks"] = json::array();
  return cfg;
}

json space_desc(const json& cfg, const json& sp) {
  if (sp.is_object()) return sp;
  if (!sp.is_string()) throw metprod::ConfigError("space reference must be a name or an object");
  return cfg.value("spaces", json::object()).value(sp.get<std::string>(), json::object());
}

int emit(const metprod::RunResult& r, const std::string& format) {
  std::cout << (format == "json" ? metprod::render_json(r) : metprod::render_text(r));
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metprod: validation of Phi-products of metric spaces"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string format = "text";
  std::vector<std::string> tolerances;
  std::uint64_t seed = 0;
  std::size_t samples = 0, depth = 0;
  bool timing = false, list_demos = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--samples", samples, "samples per check")->check(CLI::PositiveNumber);
  app.add_option("--depth", depth, "dyadic subdivision depth")->check(CLI::Range(1, 30));
  app.add_option("--tolerance", tolerances, "override a tolerance, KEY=VAL (metric, strict, embed, length_floor)");
  app.add_flag("--timing", timing, "add elapsed_ms to each record");
  app.add_flag("--list-demos", list_demos, "list built-in demos");

  std::string config_path;
  auto* run = app.add_subcommand("run", "run every check in a config file");
  run->add_option("config", config_path, "config file")->required();

  std::string phi_ref, space_ref, curve_ref, from, to, selectors, demo_name;
  std::string extra_config;
  bool quasi = false;

  auto* vphi = app.add_subcommand("validate-phi", "check conditions (A), (B), (1)-(5), strict convexity; classify");
  vphi->add_option("phi", phi_ref, "phi name or inline JSON")->required();
  vphi->add_option("--config", extra_config, "config providing named phis");

  auto* cprod = app.add_subcommand("check-product", "metric axioms, geodesic and rank facts of a product");
  cprod->add_option("space", space_ref, "space name or inline JSON")->required();
  cprod->add_option("--config", extra_config, "config providing named spaces");

  auto* len = app.add_subcommand("length", "length of a curve and its arclength parametrization");
  len->add_option("space", space_ref, "space name or inline JSON")->required();
  len->add_option("curve", curve_ref, "curve name or inline JSON")->required();
  len->add_option("--config", extra_config, "config providing named spaces and curves");

  auto* geo = app.add_subcommand("geodesic", "construct and test a geodesic; probe uniqueness for products");
  geo->add_option("space", space_ref, "space name or inline JSON")->required();
  geo->add_option("from", from, "start point as JSON array")->required();
  geo->add_option("to", to, "end point as JSON array")->required();
  geo->add_option("--selectors", selectors, "JSON array of selectors, e.g. [\"corner(1)\",\"affine\"]");
  geo->add_option("--config", extra_config, "config providing named spaces");

  auto* rank = app.add_subcommand("rank", "Minkowski rank of a space");
  rank->add_option("space", space_ref, "space name or inline JSON")->required();
  rank->add_flag("--assert-quasi-euclidean", quasi, "assert the hypotheses for rank equality");
  rank->add_option("--config", extra_config, "config providing named spaces");

  auto* demo = app.add_subcommand("demo", "run a built-in demonstration");
  demo->add_option("name", demo_name, "demo name (see --list-demos)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? metprod::kExitPass : metprod::kExitConfigError;
  }

  if (list_demos) {
    for (const auto& d : metprod::demos()) std::cout << d.name << "\t" << d.description << "\n";
    return metprod::kExitPass;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return metprod::kExitConfigError;
  }

  try {
    metprod::RunOptions opt;
    if (app.count("--seed")) opt.seed = seed;
    if (app.count("--samples")) opt.samples = samples;
    if (app.count("--depth")) opt.depth = depth;
    for (const auto& t : tolerances) metprod::apply_tolerance_override(opt.tol, t);
    opt.timing = timing;

    json cfg;
    if (*run) {
      cfg = metprod::load_config(config_path);
    } else if (*vphi) {
      cfg = base_config(extra_config);
      const json phi = parse_ref(phi_ref);
      for (const char* op : {"condition_A", "condition_B", "conditions_1_to_4", "condition_5", "strict_convexity",
                             "classify"}) {
        cfg["checks"].push_back({{"op", op}, {"phi", phi}});
      }
    } else if (*cprod) {
      cfg = base_config(extra_config);
      const json sp = parse_ref(space_ref);
      cfg["checks"].push_back({{"op", "metric_axioms"}, {"space", sp}});
      cfg["checks"].push_back({{"op", "product_rank"}, {"space", sp}});
      cfg["checks"].push_back({{"op", "cat0"}, {"space", sp}, {"samples", 1000}});
    } else if (*len) {
      cfg = base_config(extra_config);
      const json sp = parse_ref(space_ref), cv = parse_ref(curve_ref);
      cfg["checks"].push_back({{"op", "curve_length"}, {"space", sp}, {"curve", cv}});
      cfg["checks"].push_back({{"op", "arclength"}, {"space", sp}, {"curve", cv}});
    } else if (*geo) {
      cfg = base_config(extra_config);
      const json sp = parse_ref(space_ref);
      json g = {{"op", "geodesic"}, {"space", sp}, {"from", parse_ref(from)}, {"to", parse_ref(to)}};
      if (!selectors.empty()) g["selectors"] = parse_ref(selectors);
      cfg["checks"].push_back(g);
      // Uniqueness only applies to products.
      const json desc = space_desc(cfg, sp);
      if (desc.value("type", "") == "product") {
        json u = {{"op", "uniqueness"}, {"space", sp}, {"from", g["from"]}, {"to", g["to"]}};
        if (g.contains("selectors")) u["selector_sets"] = json::array({g["selectors"]});
        cfg["checks"].push_back(u);
      }
    } else if (*rank) {
      cfg = base_config(extra_config);
      const json sp = parse_ref(space_ref);
      const json desc = space_desc(cfg, sp);
      if (desc.value("type", "") == "product") {
        cfg["checks"].push_back({{"op", "product_rank"}, {"space", sp}, {"assert_quasi_euclidean", quasi}});
      } else {
        cfg["checks"].push_back({{"op", "declared_rank"}, {"space", sp}});
      }
    } else if (*demo) {
      const metprod::Demo* found = nullptr;
      for (const auto& d : metprod::demos())
        if (demo_name == d.name) found = &d;
      if (!found) throw metprod::ConfigError("unknown demo '" + demo_name + "' (see --list-demos)");
      cfg = json::parse(found->config);
    }
    return emit(metprod::run_config(cfg, opt), format);
  } catch (const metprod::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return metprod::kExitBudgetExceeded;
  } catch (const metprod::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return metprod::kExitConfigError;
  } catch (const metprod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return metprod::kExitConfigError;
  }
}
