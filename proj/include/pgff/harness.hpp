/*
   Copyright 2026 The pgff Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pgff/field.hpp"
#include "pgff/rng.hpp"
#include "pgff/stats.hpp"
#include "pgff/unipoly.hpp"

namespace pgff {

enum class Experiment { Lemma23, Prop18, Thm11, Thm12, Thm13, DiscClass, Thm16, Chowla, StatsTv, EventsBcd };
enum class Mode { Exact, MonteCarlo };

/// "lemma23", "prop18", ..., "events-bcd".
std::string to_string(Experiment e);
/// Throws InvalidArgument for an unknown name.
Experiment parse_experiment(const std::string& name);
std::string to_string(Mode m);

/// One coordinate of a gcd profile: exact degree n, degree <= n - 1, or monic of degree n.
enum class SlotShape { Full, Low, Monic };
struct Slot {
  SlotShape shape = SlotShape::Full;
  unsigned degree = 1;
  bool operator==(const Slot&) const = default;
};

/// "full:2,low:2,monic:1". Throws InvalidArgument on bad syntax.
std::vector<Slot> parse_profile(const std::string& text);
std::string to_string(const std::vector<Slot>& profile);
/// Degrees non-increasing and >= 1, last slot not Low.
bool is_valid_profile(const std::vector<Slot>& profile);
/// Every valid profile with m slots and degrees in [1, max_degree].
std::vector<std::vector<Slot>> all_profiles(unsigned m, unsigned max_degree);

struct ExperimentConfig {
  Experiment experiment = Experiment::Thm12;
  std::uint32_t p = 3;
  unsigned k = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  unsigned d = 1;
  std::vector<unsigned> n{10};
  std::vector<unsigned> d_sweep;  ///< thm11; empty means {d}
  std::vector<unsigned> r{1, 2, 4, 8};  ///< stats-tv restriction levels
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  Mode mode = Mode::MonteCarlo;
  double alpha = 0.45;
  unsigned probe_budget = 0;  ///< 0: default_probe_budget(n)
  unsigned workers = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  /// lemma23: "all" (every profile with m slots and degrees <= max_degree),
  /// "cor" (d low slots and one monic slot, all of degree n) or an explicit profile.
  std::string profile = "all";
  unsigned m = 2;
  unsigned max_degree = 2;
  /// chowla: "T", "T^2", "T(T+y)" or "norm".
  std::string shape = "T";

  const Field& field() const;
};

/// Throws InvalidArgument when the configuration is malformed.
void validate(const ExperimentConfig& config);

struct ReportRow {
  std::vector<std::pair<std::string, std::string>> point;
  std::string metric;
  double estimate = 0;
  std::optional<double> stderr_;  ///< Monte Carlo rows only
  std::optional<double> exact;    ///< reference value when known
  /// "identity" (holds at every n), "limit" (n -> infinity) or "truncated" (series cut off).
  std::string exact_kind;
  std::optional<Rational> observed_rational;  ///< exact-mode rows
  std::optional<Rational> exact_rational;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;

  /// "n=40;d=1"
  std::string point_key() const;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0;

  /// First row with this metric whose point contains every given (key, value).
  const ReportRow* find(const std::string& metric,
                        const std::vector<std::pair<std::string, std::string>>& where = {}) const;
};

/// {experiment, params, rows, seed, version[, wall_seconds]}.
std::string to_json(const ExperimentReport& report, bool with_wall_time = true);
/// Frozen header, one line per row.
std::string to_csv(const ExperimentReport& report);
std::string csv_header();

/// Runs the configured experiment in its configured mode. Throws CapExceeded
/// when an exact enumeration is larger than config.cap.
ExperimentReport run_experiment(const ExperimentConfig& config);
/// run_experiment with mode forced to Exact.
ExperimentReport enumerate_exact(ExperimentConfig config);

/// Laplace-smoothed binomial standard error, positive for every hits.
double binomial_stderr(std::uint64_t hits, std::uint64_t trials);

/// Runs fn(i, acc) for i < trials over `workers` threads, each with its own Acc,
/// and merges the accumulators. The merge must be commutative for the result to
/// be independent of the worker count.
template <class Acc, class Fn>
Acc parallel_trials(std::uint64_t trials, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = 1;
  if (workers > trials) workers = static_cast<unsigned>(trials == 0 ? 1 : trials);
  std::vector<Acc> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](unsigned w) {
    const std::uint64_t lo = trials * w / workers, hi = trials * (w + 1) / workers;
    try {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i, parts[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(body, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc total = std::move(parts[0]);
  for (unsigned w = 1; w < workers; ++w) total.merge(parts[w]);
  return total;
}

}  // namespace pgff
