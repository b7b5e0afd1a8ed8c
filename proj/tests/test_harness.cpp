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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "pgff/bipoly.hpp"
#include "pgff/galois.hpp"
#include "pgff/harness.hpp"

using namespace pgff;

namespace {

ExperimentConfig config(Experiment e, std::uint32_t p, unsigned d, std::vector<unsigned> n, Mode mode,
                        std::uint64_t trials = 2000) {
  ExperimentConfig c;
  c.experiment = e;
  c.p = p;
  c.d = d;
  c.n = std::move(n);
  c.mode = mode;
  c.trials = trials;
  c.seed = 20260418;
  return c;
}

// x-slices of f: sum_j f[i][j] y^j for each x-degree i.
std::vector<Poly> x_slices(const BiPoly& f) {
  std::vector<Poly> out;
  for (int i = 0; i <= std::max(f.deg_x(), 0); ++i) {
    std::vector<Elem> c;
    for (int j = 0; j <= f.deg_y(); ++j) c.push_back(f.at(i, j));
    out.emplace_back(f.field(), c, 'y');
  }
  return out;
}

// Content in F_q[y] by searching the largest monic common divisor of the x-slices.
Poly content_by_search(const BiPoly& f) {
  const auto slices = x_slices(f);
  for (int k = f.deg_y(); k >= 0; --k) {
    for (const auto& c : oracle::all_monic(f.field(), static_cast<unsigned>(k))) {
      bool all = true;
      for (const auto& s : slices) all = all && (s % c).is_zero();
      if (all) return c;
    }
  }
  return Poly::constant(f.field(), 1, 'y');
}

// gcd(a_1..a_m) = 1 iff no monic irreducible of degree <= the smallest degree divides every a_i.
bool coprime_by_trial(const std::vector<Poly>& as) {
  const Field& K = as[0].field();
  int low = 1 << 20;
  for (const auto& a : as) {
    if (!a.is_zero()) low = std::min(low, a.degree());
  }
  for (int k = 1; k <= low; ++k) {
    for (const auto& P : oracle::all_monic(K, static_cast<unsigned>(k), 'x')) {
      if (!oracle::irreducible_by_trial(P)) continue;
      bool all = true;
      for (const auto& a : as) all = all && (a % P).is_zero();
      if (all) return false;
    }
  }
  return true;
}

Rational rpow(const Rational& a, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= a;
  return r;
}

bool irreducible_by_oracle(const BiPoly& f) {
  auto fa = factor_bivariate_oracle(f);
  return fa.factors.size() == 1 && fa.factors[0].second == 1;
}

// Every row of the Monte Carlo report lies within 4 binomial standard errors
// (computed at the exact frequency) of the matching exact row.
void check_agreement(const ExperimentReport& exact, const ExperimentReport& mc) {
  REQUIRE(exact.rows.size() <= mc.rows.size() + 1000);
  for (const auto& e : exact.rows) {
    const ReportRow* m = nullptr;
    for (const auto& r : mc.rows) {
      if (r.metric == e.metric && r.point == e.point) m = &r;
    }
    if (!m || e.trials == 0 || m->trials == 0) continue;
    const double p = e.estimate;
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(m->trials));
    INFO(mc.experiment << " " << e.point_key() << " " << e.metric << " exact " << p << " mc " << m->estimate);
    if (sigma == 0) {
      CHECK(m->estimate == p);
    } else {
      CHECK(std::abs(m->estimate - p) <= 4 * sigma);
    }
  }
}

}  // namespace

TEST_CASE("profiles") {
  auto p = parse_profile("full:2,low:2,monic:1");
  CHECK(p == std::vector<Slot>{{SlotShape::Full, 2}, {SlotShape::Low, 2}, {SlotShape::Monic, 1}});
  CHECK(to_string(p) == "full:2,low:2,monic:1");
  CHECK(is_valid_profile(p));
  CHECK_FALSE(is_valid_profile(parse_profile("full:1,monic:2")));
  CHECK_FALSE(is_valid_profile(parse_profile("full:2,low:1")));
  CHECK_FALSE(is_valid_profile(parse_profile("full:2,full:0")));
  CHECK_THROWS_AS(parse_profile("wide:2"), InvalidArgument);
  CHECK_THROWS_AS(parse_profile("full:x"), InvalidArgument);
  CHECK_THROWS_AS(parse_profile(""), InvalidArgument);
  // Shapes: 3 choices per slot except the last (2), degrees non-increasing in {1, 2}.
  CHECK(all_profiles(2, 2).size() == 3 * 2 * 3);
  CHECK(all_profiles(3, 2).size() == 3 * 3 * 2 * 4);
  for (const auto& prof : all_profiles(3, 2)) CHECK(is_valid_profile(prof));
}

TEST_CASE("gcd profile probabilities are exact") {
  for (std::uint32_t p : {2u, 3u}) {
    for (unsigned m : {2u, 3u}) {
      auto c = config(Experiment::Lemma23, p, 1, {1}, Mode::Exact);
      c.m = m;
      c.max_degree = 2;
      auto rep = run_experiment(c);
      CHECK(rep.rows.size() == all_profiles(m, 2).size());
      const Rational target = 1 - Rational(1, static_cast<int>(std::pow(p, m - 1)));
      for (const auto& row : rep.rows) {
        REQUIRE(row.observed_rational);
        CHECK(*row.observed_rational == target);
        CHECK(*row.exact_rational == target);
        CHECK_FALSE(row.stderr_);
      }
    }
  }
  auto c = config(Experiment::Lemma23, 2, 1, {1}, Mode::Exact);
  c.profile = "monic:1,monic:1";
  CHECK(*run_experiment(c).rows.at(0).observed_rational == Rational(1, 2));
  // The cor profile: d bounded slots and one monic slot, all of degree n.
  for (unsigned d : {1u, 2u}) {
    auto cc = config(Experiment::Lemma23, 2, d, {1, 2}, Mode::Exact);
    cc.profile = "cor";
    for (const auto& row : run_experiment(cc).rows) {
      CHECK(*row.observed_rational == 1 - Rational(1, 1 << d));
    }
  }
  c.profile = "low:2,low:1";
  CHECK_THROWS_AS(run_experiment(c), InvalidArgument);
}

TEST_CASE("gcd counts agree with trial division") {
  const Field& K = Field::make(3);
  auto c = config(Experiment::Lemma23, 3, 1, {1}, Mode::Exact);
  c.profile = "full:2,low:2,monic:1";
  const auto row = run_experiment(c).rows.at(0);
  std::uint64_t hits = 0, total = 0;
  for_each_bounded(K, 2, [&](const Poly& a) {
    if (a.degree() != 2) return;
    for_each_bounded(K, 1, [&](const Poly& b) {
      for (const auto& m : oracle::all_monic(K, 1, 'x')) {
        ++total;
        hits += coprime_by_trial({a, b, m});
      }
    });
  });
  CHECK(row.trials == total);
  CHECK(row.hits == hits);
}

TEST_CASE("content law cells are exact") {
  for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}}) {
    auto rep = run_experiment(config(Experiment::Prop18, p, 1, {n}, Mode::Exact));
    const Field& K = Field::make(p);
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    for_each_ensemble(K, n, 1, [&](const BiPoly& f) {
      ++counts[to_string(content_by_search(f))];
      ++total;
    });
    unsigned cells = 0;
    for (const auto& row : rep.rows) {
      if (row.metric != "p_content_equals") continue;
      const std::string c = row.point.back().second;
      CHECK(row.hits == counts[c]);
      CHECK(row.trials == total);
      const unsigned k = static_cast<unsigned>(std::stoul(row.point[2].second));
      const Rational q(p);
      Rational expect = k < n ? (1 - 1 / q) / rpow(q, k * 2) : 1 / rpow(q, n * 2);
      CHECK(*row.observed_rational == expect);
      ++cells;
    }
    std::uint64_t monic = 0;
    for (unsigned k = 0; k <= n; ++k) monic += static_cast<std::uint64_t>(std::pow(p, k));
    CHECK(cells == monic);
    // Summing the cells of degree k gives the degree law.
    for (unsigned k = 0; k < n; ++k) {
      const ReportRow* row = rep.find("p_content_degree", {{"k", std::to_string(k)}});
      REQUIRE(row);
      CHECK(*row->observed_rational == (1 - Rational(1, p)) / rpow(Rational(p), k));
    }
  }
  auto rep = run_experiment(config(Experiment::Prop18, 2, 1, {3}, Mode::Exact));
  CHECK(*rep.find("p_content_equals", {{"c", "y"}})->observed_rational == Rational(1, 8));
  CHECK(*rep.find("p_content_degree", {{"k", "0"}})->observed_rational == Rational(1, 2));
}

TEST_CASE("irreducibility counts agree with the brute-force factorizer") {
  for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 2u}}) {
    auto rep = run_experiment(config(Experiment::Thm12, p, 1, {n}, Mode::Exact));
    std::uint64_t irr = 0, nontrivial = 0;
    for_each_ensemble(Field::make(p), n, 1, [&](const BiPoly& f) {
      irr += irreducible_by_oracle(f);
      nontrivial += content_by_search(f).degree() > 0;
    });
    CHECK(rep.find("p_irreducible")->hits == irr);
    CHECK(rep.find("p_con_nontrivial")->hits == nontrivial);
    CHECK(*rep.find("p_con_nontrivial")->observed_rational == Rational(1, p));
  }
}

TEST_CASE("Galois experiments agree with the small oracle") {
  for (std::uint32_t p : {3u, 5u}) {
    auto rep = run_experiment(config(Experiment::Thm13, p, 1, {2, 3}, Mode::Exact));
    for (unsigned n : {2u, 3u}) {
      const std::vector<std::pair<std::string, std::string>> at{{"n", std::to_string(n)}};
      CHECK(rep.find("p_oracle_mismatch", at)->hits == 0);
      CHECK(rep.find("p_audit_failure", at)->hits == 0);
      CHECK(rep.find("p_unknown", at)->hits == 0);
    }
  }
  auto c = config(Experiment::Thm11, 3, 1, {2}, Mode::Exact);
  c.d_sweep = {0, 1};
  auto rep = run_experiment(c);
  for (unsigned d : {0u, 1u}) {
    std::uint64_t sn = 0, total = 0;
    for_each_ensemble(Field::make(3), 2, d, [&](const BiPoly& f) {
      ++total;
      sn += galois_oracle_small(f).tag == VerdictTag::Sn;
    });
    const auto* row = rep.find("p_sn", {{"d", std::to_string(d)}});
    CHECK(row->hits == sn);
    CHECK(row->trials == total);
    CHECK(rep.find("p_unknown", {{"d", std::to_string(d)}})->hits == 0);
  }
  auto mc = run_experiment(config(Experiment::Thm11, 3, 6, {3}, Mode::MonteCarlo, 3000));
  CHECK(mc.find("p_sn")->estimate > 0.8);
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
  struct Case {
    Experiment e;
    std::uint32_t p;
    unsigned d;
    unsigned n;
  };
  for (const Case& k : {Case{Experiment::Thm12, 2, 1, 3}, Case{Experiment::Thm12, 3, 1, 2},
                        Case{Experiment::Prop18, 2, 1, 3}, Case{Experiment::Thm11, 3, 1, 2},
                        Case{Experiment::Thm13, 3, 1, 3}, Case{Experiment::DiscClass, 3, 1, 3},
                        Case{Experiment::Thm16, 3, 1, 3}, Case{Experiment::EventsBcd, 2, 1, 4}}) {
    const auto exact = run_experiment(config(k.e, k.p, k.d, {k.n}, Mode::Exact));
    auto mcc = config(k.e, k.p, k.d, {k.n}, Mode::MonteCarlo, 4000);
    mcc.workers = 2;
    const auto mc = run_experiment(mcc);
    check_agreement(exact, mc);
  }
  auto c = config(Experiment::Lemma23, 3, 1, {1}, Mode::Exact);
  c.profile = "full:2,low:2,monic:2";
  const auto exact = run_experiment(c);
  c.mode = Mode::MonteCarlo;
  c.trials = 5000;
  check_agreement(exact, run_experiment(c));
}

TEST_CASE("character sum experiment") {
  auto c = config(Experiment::Chowla, 3, 1, {1, 2, 3, 4, 5, 6, 7, 8}, Mode::Exact);
  for (const auto& row : run_experiment(c).rows) {
    if (row.metric != "chowla_ratio") continue;
    CHECK(*row.observed_rational == *row.exact_rational);
  }
  for (const std::string shape : {"T", "T(T+y)", "norm"}) {
    c.shape = shape;
    c.n = {3, 5};
    c.mode = Mode::Exact;
    const auto exact = run_experiment(c);
    c.mode = Mode::MonteCarlo;
    c.trials = 5000;
    const auto mc = run_experiment(c);
    for (const auto& e : exact.rows) {
      if (e.metric != "chowla_ratio") continue;
      const auto* m = mc.find("chowla_ratio", {e.point[0]});
      REQUIRE(m);
      CHECK(std::abs(m->estimate - e.estimate) <= 4 * *m->stderr_);
    }
  }
  c.shape = "T^2";
  c.n = {4};
  const auto sq = run_experiment(c);
  CHECK(sq.rows[0].estimate == 1);
  CHECK(sq.find("chowla_ratio", {{"separable_in_T", "0"}}));
  c.shape = "T^3";
  CHECK_THROWS_AS(run_experiment(c), InvalidArgument);
}

TEST_CASE("restricted total variation experiment") {
  auto c = config(Experiment::StatsTv, 2, 1, {2}, Mode::Exact);
  c.r = {1};
  auto rep = run_experiment(c);
  CHECK(*rep.find("tv")->observed_rational == Rational(1, 4));
  c.n = {12};
  c.r = {1, 2, 4};
  c.mode = Mode::MonteCarlo;
  c.trials = 50000;
  rep = run_experiment(c);
  for (unsigned r : c.r) {
    const auto* row = rep.find("tv", {{"r", std::to_string(r)}});
    CHECK(std::abs(row->estimate - *row->exact) <= 4 * *row->stderr_ + 0.01);
    CHECK(rep.find("r_times_tv", {{"r", std::to_string(r)}})->estimate == doctest::Approx(r * row->estimate));
  }
  c.n = {31};
  c.mode = Mode::Exact;
  CHECK_THROWS_AS(run_experiment(c), InvalidArgument);
}

TEST_CASE("small-box event frequencies") {
  auto c = config(Experiment::EventsBcd, 3, 1, {12}, Mode::MonteCarlo, 1500);
  auto rep = run_experiment(c);
  const double b = rep.find("p_b")->estimate, d = rep.find("p_d")->estimate;
  const double all = rep.find("p_b_c_proxy_d")->estimate;
  CHECK(all <= d);
  CHECK(all <= b);
  CHECK(rep.find("p_b_and_d")->estimate <= d);
  c.alpha = 1.5;
  CHECK_THROWS_AS(run_experiment(c), InvalidArgument);
}

TEST_CASE("reports are reproducible and independent of the worker count") {
  for (Experiment e : {Experiment::Thm12, Experiment::Thm16, Experiment::Chowla, Experiment::StatsTv,
                       Experiment::Lemma23, Experiment::EventsBcd}) {
    auto c = config(e, 3, 1, {6}, Mode::MonteCarlo, 300);
    if (e == Experiment::Lemma23) c.profile = "full:2,monic:1";
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    c.workers = 4;
    const auto par = run_experiment(c);
    CHECK(to_json(a, false) == to_json(b, false));
    CHECK(to_json(a, false) == to_json(par, false));
    CHECK(to_csv(a) == to_csv(par));
    c.seed += 1;
    CHECK(to_json(run_experiment(c), false) != to_json(a, false));
  }
}

TEST_CASE("report format") {
  auto mc = run_experiment(config(Experiment::Thm12, 3, 1, {5}, Mode::MonteCarlo, 200));
  auto j = nlohmann::json::parse(to_json(mc));
  CHECK(j["experiment"] == "thm12");
  CHECK(j["seed"] == 20260418);
  CHECK(j["version"].is_string());
  CHECK(j["params"]["q"] == "3");
  CHECK(j.contains("wall_seconds"));
  CHECK_FALSE(nlohmann::json::parse(to_json(mc, false)).contains("wall_seconds"));
  for (const auto& row : j["rows"]) {
    CHECK(row.contains("estimate"));
    CHECK(row["stderr"].get<double>() > 0);
  }
  auto ex = run_experiment(config(Experiment::Thm12, 3, 1, {2}, Mode::Exact));
  for (const auto& row : nlohmann::json::parse(to_json(ex))["rows"]) {
    CHECK_FALSE(row.contains("stderr"));
    CHECK(row.contains("observed_rational"));
  }
  CHECK(csv_header() ==
        "experiment,q,point,metric,estimate,stderr,exact,exact_kind,observed_rational,exact_rational,trials,hits,seed");
  const std::string csv = to_csv(mc);
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(mc.rows.size() + 1));
  CHECK(binomial_stderr(0, 100) > 0);
  CHECK(binomial_stderr(100, 100) > 0);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(enumerate_exact(config(Experiment::Prop18, 3, 1, {10}, Mode::MonteCarlo)), CapExceeded);
  auto c = config(Experiment::Thm12, 2, 1, {3}, Mode::Exact);
  c.cap = 63;
  CHECK_THROWS_AS(run_experiment(c), CapExceeded);
  c.cap = 64;
  CHECK_NOTHROW(run_experiment(c));
  CHECK_THROWS_AS(run_experiment(config(Experiment::Thm12, 3, 1, {3}, Mode::MonteCarlo, 0)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(config(Experiment::Thm12, 3, 1, {0}, Mode::MonteCarlo)), InvalidArgument);
  CHECK_THROWS_AS(run_experiment(config(Experiment::Thm12, 4, 1, {3}, Mode::MonteCarlo)), InvalidArgument);
  for (Experiment e : {Experiment::Thm13, Experiment::DiscClass, Experiment::Thm16, Experiment::Chowla}) {
    CHECK_THROWS_AS(run_experiment(config(e, 2, 1, {3}, Mode::MonteCarlo)), Unsupported);
  }
  CHECK(parse_experiment("disc-class") == Experiment::DiscClass);
  CHECK(to_string(Experiment::EventsBcd) == "events-bcd");
  CHECK_THROWS_AS(parse_experiment("thm99"), InvalidArgument);
}

TEST_CASE("enumeration is deterministic") {
  auto c = config(Experiment::Thm12, 2, 1, {3}, Mode::MonteCarlo);
  const auto a = enumerate_exact(c);
  c.seed = 99;
  const auto b = enumerate_exact(c);
  CHECK(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].hits == b.rows[i].hits);
  CHECK(a.find("p_irreducible")->trials == 64);
}

#ifdef PGFF_CLI
TEST_CASE("command line exit codes") {
  const std::string cli = PGFF_CLI;
  auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("thm12 --q 2 --d 1 --n 3 --mode exact") == 0);
  CHECK(run("thm12 --q 3 --n 5 --trials 10 --format json") == 0);
  CHECK(run("prop18 --q 3 --d 1 --n 20 --mode exact") == 3);
  CHECK(run("thm13 --q 2 --n 5") == 2);
  CHECK(run("thm12 --q 6 --n 5") == 2);
  CHECK(run("thm12 --n 5 --trials 0") == 2);
  CHECK(run("nosuch") == 2);
  CHECK(run("thm12 --mode sometimes") == 2);
  CHECK(run("lemma23 --profile low:1") == 2);
  CHECK(run("--help") == 0);
}
#endif
