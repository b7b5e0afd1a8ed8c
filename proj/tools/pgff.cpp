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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgff/errors.hpp"
#include "pgff/harness.hpp"

namespace {

// "3", "3^2"
void parse_q(const std::string& text, pgff::ExperimentConfig& c) {
  const auto caret = text.find('^');
  try {
    std::size_t used = 0;
    c.p = static_cast<std::uint32_t>(std::stoul(text.substr(0, caret), &used));
    if (used != (caret == std::string::npos ? text.size() : caret)) throw std::invalid_argument(text);
    c.k = 1;
    if (caret != std::string::npos) {
      const std::string e = text.substr(caret + 1);
      c.k = static_cast<unsigned>(std::stoul(e, &used));
      if (used != e.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw pgff::InvalidArgument("bad --q value '" + text + "'");
  }
}

// "10,20,40" or "1..8"
std::vector<unsigned> parse_list(const std::string& text) {
  std::vector<unsigned> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
      const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
      for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      out.push_back(static_cast<unsigned>(std::stoul(text.substr(start, comma - start))));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw pgff::InvalidArgument("bad list '" + text + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polynomials over finite fields: experiments"};
  std::string experiment, q = "3", modulus, n = "10", d_sweep, r = "1,2,4,8", mode = "mc", format = "csv";
  pgff::ExperimentConfig c;
  app.add_option("experiment", experiment,
                 "lemma23 | prop18 | thm11 | thm12 | thm13 | disc-class | thm16 | chowla | stats-tv | events-bcd")
      ->required();
  app.add_option("--q", q, "field size p or p^k");
  app.add_option("--modulus", modulus, "defining polynomial coefficients, low to high, comma separated");
  app.add_option("--d", c.d, "coefficient degree bound");
  app.add_option("--n", n, "y-degree(s): a list 10,20 or a range 1..8");
  app.add_option("--d-sweep", d_sweep, "coefficient degree bounds for thm11");
  app.add_option("--r", r, "restriction levels for stats-tv");
  app.add_option("--trials", c.trials, "Monte Carlo trials per point");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--mode", mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  app.add_option("--alpha", c.alpha, "exponent for the small-factor threshold in events-bcd");
  app.add_option("--budget", c.probe_budget, "Galois probe budget (0: default)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", c.workers, "worker threads");
  app.add_option("--cap", c.cap, "largest allowed exact enumeration");
  app.add_option("--m", c.m, "number of polynomials for lemma23");
  app.add_option("--max-degree", c.max_degree, "largest slot degree for lemma23 profile sweeps");
  app.add_option("--profile", c.profile, "lemma23: all | cor | full:2,low:1,monic:1");
  app.add_option("--shape", c.shape, "chowla: T | T^2 | T(T+y) | norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    c.experiment = pgff::parse_experiment(experiment);
    parse_q(q, c);
    if (!modulus.empty()) {
      const auto coeffs = parse_list(modulus);
      c.modulus = std::vector<std::uint32_t>(coeffs.begin(), coeffs.end());
    }
    c.n = parse_list(n);
    if (!d_sweep.empty()) c.d_sweep = parse_list(d_sweep);
    c.r = parse_list(r);
    c.mode = mode == "exact" ? pgff::Mode::Exact : pgff::Mode::MonteCarlo;
    const pgff::ExperimentReport report = pgff::run_experiment(c);
    std::cout << (format == "json" ? pgff::to_json(report) : pgff::to_csv(report));
    return 0;
  } catch (const pgff::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const pgff::InvalidArgument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const pgff::Unsupported& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
}
