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

#ifndef METPROD_COMMON_HPP_
#define METPROD_COMMON_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metprod {

/// A point of any catalog space. Continuous spaces store coordinates,
/// discrete/finite spaces store the index as a single coordinate, and
/// product spaces concatenate the points of their factors.
using Point = std::vector<double>;

/// Exponent sentinel for max-type norms.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimension, index out of range, bad parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an object that does not meet its
/// structural precondition (e.g. a geodesic in a non-geodesic space).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search asked to exceed its fixed budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double metric = 1e-9;   // relative, all distance comparisons
  double strict = 1e-6;   // absolute, midpoint norm in strict convexity
  double embed = 1e-9;    // absolute, finite embedding search
  double length_floor = 1e-6;
};

/// Sampling parameters shared by the universally quantified checks.
struct SamplerParams {
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  double radius = 10.0;
  Tolerances tol{};
};

/// Seeded generator. Draws are derived from the raw 64-bit engine output so
/// that sequences do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Stream splitting for derived seeds (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Verdict { pass, fail, undetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

/// Outcome of one checked condition. `worst_margin` is the largest observed
/// excess (violation amount, normalized by max(1, reference)); the verdict is
/// fail iff it exceeds `threshold`. `witness` holds the inputs achieving it.
struct ValidationReport {
  std::string condition;
  Verdict verdict = Verdict::undetermined;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double worst_margin = -kInfinity;
  double threshold = 0.0;
  std::vector<double> witness;
  std::string note;
  bool informational = false;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }
};

/// Order-dependent running maximum: a later sample replaces the witness only
/// when strictly worse, so the first worst sample wins.
class MarginTracker {
 public:
  explicit MarginTracker(std::string condition, double threshold)
      : condition_(std::move(condition)), threshold_(threshold) {}

  template <typename WitnessFn>
  void observe(double margin, WitnessFn&& witness) {
    ++samples_;
    if (std::isnan(margin)) margin = kInfinity;
    if (margin > worst_) {
      worst_ = margin;
      witness_ = witness();
    }
  }

  void skip() { ++skipped_; }
  std::size_t samples() const { return samples_; }

  ValidationReport finish(std::string note = {}) const {
    ValidationReport r;
    r.condition = condition_;
    r.samples = samples_;
    r.skipped = skipped_;
    r.worst_margin = worst_;
    r.threshold = threshold_;
    r.note = std::move(note);
    if (samples_ == 0) {
      r.verdict = Verdict::undetermined;
    } else {
      r.verdict = worst_ > threshold_ ? Verdict::fail : Verdict::pass;
      r.witness = witness_;
    }
    return r;
  }

 private:
  std::string condition_;
  double threshold_;
  double worst_ = -kInfinity;
  std::vector<double> witness_;
  std::size_t samples_ = 0;
  std::size_t skipped_ = 0;
};

inline ValidationReport undetermined_report(std::string condition, std::string note) {
  ValidationReport r;
  r.condition = std::move(condition);
  r.verdict = Verdict::undetermined;
  r.note = std::move(note);
  return r;
}

inline double relative_scale(double reference) { return std::max(1.0, std::abs(reference)); }

inline std::vector<double> concat(std::initializer_list<std::span<const double>> parts) {
  std::vector<double> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace metprod

#endif  // METPROD_COMMON_HPP_
