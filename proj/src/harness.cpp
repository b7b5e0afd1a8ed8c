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

#include "pgff/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pgff/bipoly.hpp"
#include "pgff/errors.hpp"
#include "pgff/galois.hpp"

namespace pgff {

namespace {

using Point = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
  static const std::vector<std::pair<Experiment, std::string>> names{
      {Experiment::Lemma23, "lemma23"},     {Experiment::Prop18, "prop18"}, {Experiment::Thm11, "thm11"},
      {Experiment::Thm12, "thm12"},         {Experiment::Thm13, "thm13"},   {Experiment::DiscClass, "disc-class"},
      {Experiment::Thm16, "thm16"},         {Experiment::Chowla, "chowla"}, {Experiment::StatsTv, "stats-tv"},
      {Experiment::EventsBcd, "events-bcd"}};
  return names;
}

struct Tally {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t attempts = 0;

  void add(const std::string& key, std::uint64_t v = 1) { counts[key] += v; }
  std::uint64_t get(const std::string& key) const {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  }
  void merge(const Tally& o) {
    for (const auto& [k, v] : o.counts) counts[k] += v;
    samples += o.samples;
    attempts += o.attempts;
  }
};

BigInt big_pow(std::uint64_t q, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

Rational inv_pow(std::uint64_t q, unsigned e) { return Rational(BigInt(1), big_pow(q, e)); }

std::string fmt(unsigned v) { return std::to_string(v); }

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (unsigned x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

ReportRow make_row(const Point& point, std::string metric, std::uint64_t hits, std::uint64_t trials, Mode mode,
                   std::optional<Rational> target = std::nullopt, std::string kind = "") {
  ReportRow row;
  row.point = point;
  row.metric = std::move(metric);
  row.hits = hits;
  row.trials = trials;
  row.estimate = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  if (mode == Mode::Exact) {
    if (trials) row.observed_rational = Rational(BigInt(hits), BigInt(trials));
  } else {
    row.stderr_ = binomial_stderr(hits, trials);
  }
  if (target) {
    row.exact = static_cast<double>(*target);
    row.exact_rational = *target;
    row.exact_kind = std::move(kind);
  }
  return row;
}

std::uint64_t experiment_stream(const ExperimentConfig& c, const Point& point) {
  std::string key = to_string(c.experiment);
  for (const auto& [k, v] : point) key += ";" + k + "=" + v;
  return stream_id(key);
}

/// Runs observe over the whole ensemble (exact) or over sampled members (Monte
/// Carlo). With `accept`, only accepted members are observed; Monte Carlo
/// trials resample until one is accepted.
Tally run_ensemble(const ExperimentConfig& c, const Point& point, unsigned n, unsigned d,
                   const std::function<void(const BiPoly&, Tally&)>& observe,
                   const std::function<bool(const BiPoly&)>& accept = {}) {
  const Field& K = c.field();
  if (c.mode == Mode::Exact) {
    checked_pow(K.q(), std::uint64_t{n} * (d + 1), c.cap);
    Tally t;
    for_each_ensemble(K, n, d, [&](const BiPoly& f) {
      ++t.attempts;
      if (accept && !accept(f)) return;
      ++t.samples;
      observe(f, t);
    });
    return t;
  }
  const std::uint64_t stream = experiment_stream(c, point);
  constexpr std::uint64_t kMaxAttempts = 1'000'000;
  return parallel_trials<Tally>(c.trials, c.workers, [&](std::uint64_t i, Tally& t) {
    Rng rng = substream(c.seed, stream, i);
    for (std::uint64_t a = 0;; ++a) {
      if (a == kMaxAttempts) throw InvalidArgument("conditioning event too rare for rejection sampling");
      BiPoly f = sample_ensemble(K, {n, d, BoxMode::Small}, rng);
      ++t.attempts;
      if (accept && !accept(f)) continue;
      ++t.samples;
      observe(f, t);
      return;
    }
  });
}

Rational one_minus_inv(std::uint64_t q, unsigned e) { return 1 - inv_pow(q, e); }

// ---------------------------------------------------------------- lemma23

std::vector<Poly> slot_members(const Field& K, const Slot& s) {
  std::vector<Poly> out;
  switch (s.shape) {
    case SlotShape::Full:
      for_each_bounded(K, s.degree, [&](const Poly& a) {
        if (a.degree() == static_cast<int>(s.degree)) out.push_back(a);
      });
      break;
    case SlotShape::Low:
      for_each_bounded(K, s.degree - 1, [&](const Poly& a) { out.push_back(a); });
      break;
    case SlotShape::Monic:
      for_each_monic(K, s.degree, [&](const Poly& a) { out.push_back(a); }, 'x');
      break;
  }
  return out;
}

Poly sample_slot(const Field& K, const Slot& s, Rng& rng) {
  Poly a = random_bounded(K, s.degree - 1, rng, 'x');
  if (s.shape == SlotShape::Low) return a;
  Elem lead = 1;
  if (s.shape == SlotShape::Full) lead = static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(1, K.q() - 1)(rng));
  return a + Poly::monomial(K, lead, s.degree, 'x');
}

std::vector<std::vector<Slot>> lemma23_profiles(const ExperimentConfig& c) {
  if (c.profile == "all") return all_profiles(c.m, c.max_degree);
  if (c.profile == "cor") {
    std::vector<std::vector<Slot>> out;
    for (unsigned n : c.n) {
      std::vector<Slot> p(c.d, Slot{SlotShape::Low, n});
      p.push_back({SlotShape::Monic, n});
      out.push_back(std::move(p));
    }
    return out;
  }
  return {parse_profile(c.profile)};
}

void run_lemma23(const ExperimentConfig& c, ExperimentReport& rep) {
  const Field& K = c.field();
  for (const auto& prof : lemma23_profiles(c)) {
    if (!is_valid_profile(prof)) throw InvalidArgument("invalid profile " + to_string(prof));
    const unsigned m = static_cast<unsigned>(prof.size());
    const Point point{{"profile", to_string(prof)}, {"m", fmt(m)}};
    const Rational target = one_minus_inv(K.q(), m - 1);
    std::uint64_t hits = 0, total = 0;
    if (c.mode == Mode::Exact) {
      std::vector<std::vector<Poly>> members;
      std::uint64_t size = 1;
      for (const auto& s : prof) {
        const std::uint64_t slot_size = s.shape == SlotShape::Full ? (K.q() - 1) * checked_pow(K.q(), s.degree, c.cap)
                                                                   : checked_pow(K.q(), s.degree, c.cap);
        if (size > c.cap / slot_size) throw CapExceeded("enumeration size exceeds cap of " + std::to_string(c.cap));
        size *= slot_size;
      }
      for (const auto& s : prof) members.push_back(slot_members(K, s));
      std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t i, const Poly& g) {
        if (i == members.size()) {
          ++total;
          hits += g.degree() == 0;
          return;
        }
        for (const auto& a : members[i]) rec(i + 1, gcd(g, a));
      };
      rec(0, Poly(K, 'x'));
    } else {
      Tally t = parallel_trials<Tally>(c.trials, c.workers, [&](std::uint64_t i, Tally& acc) {
        Rng rng = substream(c.seed, experiment_stream(c, point), i);
        Poly g(K, 'x');
        for (const auto& s : prof) g = gcd(g, sample_slot(K, s, rng));
        ++acc.samples;
        if (g.degree() == 0) acc.add("coprime");
      });
      hits = t.get("coprime");
      total = t.samples;
    }
    rep.rows.push_back(make_row(point, "p_gcd_one", hits, total, c.mode, target, "identity"));
  }
}

// ---------------------------------------------------------------- prop18

void run_prop18(const ExperimentConfig& c, ExperimentReport& rep) {
  const Field& K = c.field();
  const std::uint64_t q = K.q();
  const unsigned d = c.d;
  for (unsigned n : c.n) {
    const Point base{{"n", fmt(n)}, {"d", fmt(d)}};
    Tally t = run_ensemble(c, base, n, d, [](const BiPoly& f, Tally& acc) {
      const Poly con = content_x(f);
      acc.add("c:" + to_string(con));
      acc.add("k:" + std::to_string(con.degree()));
    });
    for (unsigned k = 0; k <= n; ++k) {
      Point p = base;
      p.emplace_back("k", fmt(k));
      const Rational target = k < n ? one_minus_inv(q, d) * inv_pow(q, d * k) : inv_pow(q, n * d);
      rep.rows.push_back(make_row(p, "p_content_degree", t.get("k:" + fmt(k)), t.samples, c.mode, target, "identity"));
    }
    // Per-content rows for the first few degrees (all of them when small).
    std::uint64_t listed = 0;
    for (unsigned k = 0; k <= n; ++k) {
      listed += static_cast<std::uint64_t>(std::pow(static_cast<double>(q), k));
      if (listed > 512) break;
      const Rational target = k < n ? one_minus_inv(q, d) * inv_pow(q, k * (d + 1)) : inv_pow(q, n * (d + 1));
      for_each_monic(K, k, [&](const Poly& cpoly) {
        const std::string name = to_string(cpoly);
        Point p = base;
        p.emplace_back("k", fmt(k));
        p.emplace_back("c", name);
        rep.rows.push_back(make_row(p, "p_content_equals", t.get("c:" + name), t.samples, c.mode, target, "identity"));
      });
    }
  }
}

// ---------------------------------------------------------------- thm12

void run_thm12(const ExperimentConfig& c, ExperimentReport& rep) {
  const std::uint64_t q = c.field().q();
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"d", fmt(c.d)}};
    Tally t = run_ensemble(c, point, n, c.d, [](const BiPoly& f, Tally& acc) {
      const bool trivial = content_x(f).degree() == 0;
      const bool irr = is_irreducible_bivariate(f);
      if (irr) acc.add("irreducible");
      if (!trivial) acc.add("con_nontrivial");
      if (trivial && !irr) acc.add("primitive_reducible");
    });
    rep.rows.push_back(
        make_row(point, "p_irreducible", t.get("irreducible"), t.samples, c.mode, one_minus_inv(q, c.d), "limit"));
    rep.rows.push_back(
        make_row(point, "p_con_nontrivial", t.get("con_nontrivial"), t.samples, c.mode, inv_pow(q, c.d), "identity"));
    rep.rows.push_back(make_row(point, "p_primitive_reducible", t.get("primitive_reducible"), t.samples, c.mode,
                                Rational(0), "limit"));
  }
}

// ---------------------------------------------------------------- thm11

void run_thm11(const ExperimentConfig& c, ExperimentReport& rep) {
  const std::vector<unsigned> ds = c.d_sweep.empty() ? std::vector<unsigned>{c.d} : c.d_sweep;
  for (unsigned n : c.n) {
    for (unsigned d : ds) {
      const Point point{{"n", fmt(n)}, {"d", fmt(d)}};
      Tally t = run_ensemble(c, point, n, d, [&](const BiPoly& f, Tally& acc) {
        acc.add("tag:" + to_string(classify_irreducible(f, c.probe_budget).tag));
      });
      const std::uint64_t N = t.samples;
      rep.rows.push_back(make_row(point, "p_sn", t.get("tag:Sn"), N, c.mode, Rational(1), "limit"));
      rep.rows.push_back(make_row(point, "p_an", t.get("tag:An"), N, c.mode));
      rep.rows.push_back(make_row(point, "p_irreducible", N - t.get("tag:NotIrreducible"), N, c.mode, Rational(1), "limit"));
      rep.rows.push_back(make_row(point, "p_inseparable", t.get("tag:Inseparable"), N, c.mode));
      rep.rows.push_back(make_row(point, "p_unknown", t.get("tag:Unknown"), N, c.mode));
    }
  }
}

// ---------------------------------------------------------------- thm13

unsigned resolved_budget(const ExperimentConfig& c, unsigned n) {
  return c.probe_budget ? c.probe_budget : default_probe_budget(n);
}

/// Re-reads f at four times the probe budget and checks that a certified verdict
/// is unchanged and that every Frobenius sign agrees with the fiber discriminant
/// and with the global discriminant class.
bool audit_verdict(const BiPoly& f, const Verdict& v, unsigned budget) {
  if (v.tag != VerdictTag::Sn && v.tag != VerdictTag::An && v.tag != VerdictTag::Unknown) return true;
  const Field& K = f.field();
  const unsigned n = static_cast<unsigned>(f.deg_y());
  const auto probes = probe_schedule(K, 4 * budget);
  const Verdict again = classify_irreducible(f, probes);
  if (v.tag != VerdictTag::Unknown && again.tag != v.tag) return false;
  for (const auto& p : probes) {
    auto ct = frobenius_cycle_type(f, p);
    if (!ct) continue;
    unsigned cycles = 0;
    for (auto [len, mult] : ct->parts) cycles += mult;
    const int sign = (n - cycles) % 2 ? -1 : 1;
    const Extension* ext = p.k == 1 ? nullptr : &Extension::of(K, p.k);
    const Field& L = ext ? ext->field() : K;
    const Poly fiber = ext ? specialize_x(f, p.tau, *ext) : specialize_x(f, p.tau);
    if (L.quadratic_character(discriminant(fiber)) != sign) return false;
    if (v.disc->tag == DiscTag::Square && sign != 1) return false;
    if (v.disc->tag == DiscTag::ConstantTwist) {
      const Elem a = ext ? ext->embed(v.disc->witness->a) : v.disc->witness->a;
      if (L.quadratic_character(a) != sign) return false;
    }
  }
  return true;
}

void require_odd(const ExperimentConfig& c) {
  if (c.field().p() == 2) throw Unsupported(to_string(c.experiment) + " needs odd characteristic");
}

void run_thm13(const ExperimentConfig& c, ExperimentReport& rep) {
  require_odd(c);
  const std::uint64_t q = c.field().q();
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"d", fmt(c.d)}};
    const unsigned budget = resolved_budget(c, n);
    Tally t = run_ensemble(
        c, point, n, c.d,
        [&](const BiPoly& f, Tally& acc) {
          const Verdict v = classify_irreducible(f, budget);
          acc.add("tag:" + to_string(v.tag));
          acc.add("disc:" + to_string(v.disc->tag));
          if (v.tag == VerdictTag::Sn || v.tag == VerdictTag::An) acc.add("certified");
          if (!audit_verdict(f, v, budget)) acc.add("audit_fail");
          if (n <= 3 && galois_oracle_small(f).tag != v.tag) acc.add("oracle_mismatch");
        },
        [](const BiPoly& f) { return is_irreducible_bivariate(f); });
    const std::uint64_t N = t.samples;
    rep.rows.push_back(make_row(point, "p_contains_an", t.get("certified"), N, c.mode, Rational(1), "limit"));
    rep.rows.push_back(make_row(point, "p_disc_square", t.get("disc:Square"), N, c.mode, Rational(0), "limit"));
    rep.rows.push_back(make_row(point, "p_disc_zero", t.get("disc:Zero"), N, c.mode, Rational(0), "limit"));
    rep.rows.push_back(make_row(point, "p_unknown", t.get("tag:Unknown"), N, c.mode));
    rep.rows.push_back(make_row(point, "p_sn", t.get("tag:Sn"), N, c.mode));
    rep.rows.push_back(make_row(point, "p_an", t.get("tag:An"), N, c.mode));
    rep.rows.push_back(make_row(point, "p_audit_failure", t.get("audit_fail"), N, c.mode, Rational(0), "identity"));
    if (n <= 3) {
      rep.rows.push_back(
          make_row(point, "p_oracle_mismatch", t.get("oracle_mismatch"), N, c.mode, Rational(0), "identity"));
    }
    rep.rows.push_back(
        make_row(point, "conditioning_rate", N, t.attempts, c.mode, one_minus_inv(q, c.d), "limit"));
  }
}

// ---------------------------------------------------------------- disc-class

void run_disc_class(const ExperimentConfig& c, ExperimentReport& rep) {
  require_odd(c);
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"d", fmt(c.d)}};
    Tally t = run_ensemble(c, point, n, c.d, [](const BiPoly& f, Tally& acc) {
      const DiscTag tag = disc_square_class(f).tag;
      acc.add("disc:" + to_string(tag));
      const bool square_class = tag == DiscTag::Square || tag == DiscTag::ConstantTwist;
      if (square_class && content_x(f).degree() == 0) acc.add("primitive_square_class");
    });
    const std::uint64_t N = t.samples;
    rep.rows.push_back(
        make_row(point, "p_primitive_square_class", t.get("primitive_square_class"), N, c.mode, Rational(0), "limit"));
    for (DiscTag tag : {DiscTag::Zero, DiscTag::Square, DiscTag::ConstantTwist, DiscTag::NonSquare}) {
      Point p = point;
      p.emplace_back("class", to_string(tag));
      rep.rows.push_back(make_row(p, "p_disc_class", t.get("disc:" + to_string(tag)), N, c.mode));
    }
  }
}

// ---------------------------------------------------------------- thm16

/// P(r = j) implied by the content law, summed over monic c of degree < n (and
/// the degenerate c = f), as far as the enumeration stays under `limit` polynomials.
std::pair<std::map<unsigned, Rational>, bool> predicted_r(const Field& K, unsigned n, unsigned d, std::uint64_t limit) {
  std::map<unsigned, Rational> out;
  std::uint64_t used = 0;
  const std::uint64_t q = K.q();
  for (unsigned k = 0; k <= n; ++k) {
    used += static_cast<std::uint64_t>(std::pow(static_cast<double>(q), k));
    if (used > limit) return {out, false};
    const Rational mass = k < n ? one_minus_inv(q, d) * inv_pow(q, k * (d + 1)) : inv_pow(q, n * (d + 1));
    for_each_monic(K, k, [&](const Poly& c) { out[cyclic_order_r(c)] += mass; });
  }
  return {out, true};
}

void run_thm16(const ExperimentConfig& c, ExperimentReport& rep) {
  require_odd(c);
  const Field& K = c.field();
  const std::uint64_t q = K.q();
  const unsigned d = c.d;
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"d", fmt(d)}};
    Tally t = run_ensemble(c, point, n, d, [&](const BiPoly& f, Tally& acc) {
      const SplitVerdict sv = classify_splitting(f, c.probe_budget);
      acc.add("case:" + to_string(sv.tag));
      acc.add("k:" + fmt(n - sv.m));
      acc.add("r:" + fmt(sv.r));
      if (sv.m >= 1) {
        acc.add("g_nonconstant");
        if (is_irreducible_bivariate(primitive_decompose(f).second)) acc.add("g_irreducible");
      }
    });
    const std::uint64_t N = t.samples;
    for (SplitCase sc : {SplitCase::CaseA, SplitCase::CaseB, SplitCase::CaseC, SplitCase::Unknown}) {
      Point p = point;
      p.emplace_back("case", to_string(sc));
      rep.rows.push_back(make_row(p, "p_case", t.get("case:" + to_string(sc)), N, c.mode));
    }
    rep.rows.push_back(make_row(point, "p_case_b_or_c", t.get("case:CaseB") + t.get("case:CaseC"), N, c.mode,
                                Rational(0), "limit"));
    for (unsigned k = 0; k <= std::min(n, 5u); ++k) {
      Point p = point;
      p.emplace_back("k", fmt(k));
      p.emplace_back("m", fmt(n - k));
      const Rational target = k < n ? one_minus_inv(q, d) * inv_pow(q, d * k) : inv_pow(q, n * d);
      rep.rows.push_back(make_row(p, "p_content_degree", t.get("k:" + fmt(k)), N, c.mode, target, "identity"));
    }
    auto [pred, complete] = predicted_r(K, n, d, 20000);
    std::set<unsigned> rs;
    for (const auto& [r, m] : pred) rs.insert(r);
    for (const auto& [key, v] : t.counts) {
      if (key.rfind("r:", 0) == 0) rs.insert(static_cast<unsigned>(std::stoul(key.substr(2))));
    }
    for (unsigned r : rs) {
      Point p = point;
      p.emplace_back("r", fmt(r));
      auto it = pred.find(r);
      const Rational target = it == pred.end() ? Rational(0) : it->second;
      rep.rows.push_back(
          make_row(p, "p_cyclic_order", t.get("r:" + fmt(r)), N, c.mode, target, complete ? "identity" : "truncated"));
    }
    rep.rows.push_back(make_row(point, "p_primitive_irreducible", t.get("g_irreducible"), t.get("g_nonconstant"),
                                c.mode, Rational(1), "limit"));
  }
}

// ---------------------------------------------------------------- chowla

BiPoly chowla_shape(const ExperimentConfig& c) {
  const Field& K = c.field();
  const Poly zero(K, 'x'), one = Poly::constant(K, 1, 'x'), y = Poly::variable(K, 'x');
  if (c.shape == "T") return BiPoly(K, {zero, one});
  if (c.shape == "T^2") return BiPoly(K, {zero, zero, one});
  if (c.shape == "T(T+y)") return BiPoly(K, {zero, y, one});
  if (c.shape == "norm") {
    // f0 = y^2 + x, read at one cubic point.
    const BiPoly f0(K, {Poly::variable(K, 'x'), zero, one});
    return build_norm_poly(f0, find_probe_points(K, 3, 1, 1)).n;
  }
  throw InvalidArgument("unknown chowla shape " + c.shape);
}

Rational chowla_identity_rational(std::uint64_t q, unsigned n) {
  return n % 2 == 0 ? inv_pow(q, n / 2) : Rational(-inv_pow(q, (n - 1) / 2));
}

void run_chowla(const ExperimentConfig& c, ExperimentReport& rep) {
  require_odd(c);
  const Field& K = c.field();
  const BiPoly F = chowla_shape(c);
  const bool separable = is_separable_y(F);
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"shape", c.shape}, {"separable_in_T", separable ? "1" : "0"}};
    ReportRow row;
    row.point = point;
    row.metric = "chowla_ratio";
    std::uint64_t zeros = 0, total = 0;
    if (c.mode == Mode::Exact) {
      const ChowlaEstimate e = chowla_sum_exact(F, n, c.cap);
      row.estimate = e.value;
      row.observed_rational = Rational(BigInt(e.sum), big_pow(K.q(), n));
      row.trials = total = e.samples;
      row.hits = (e.samples - e.zeros + static_cast<std::uint64_t>(e.sum)) / 2;
      zeros = e.zeros;
    } else {
      const std::uint64_t stream = experiment_stream(c, point);
      Tally t = parallel_trials<Tally>(c.trials, c.workers, [&](std::uint64_t i, Tally& acc) {
        Rng rng = substream(c.seed, stream, i);
        Poly h = random_bounded(K, n - 1, rng, 'y') + Poly::monomial(K, 1, n, 'y');
        const Poly v = substitute_t(F, h);
        ++acc.samples;
        if (v.is_zero()) {
          acc.add("zero");
        } else {
          acc.add(liouville(v) > 0 ? "plus" : "minus");
        }
      });
      const double N = static_cast<double>(t.samples);
      const double plus = static_cast<double>(t.get("plus")), minus = static_cast<double>(t.get("minus"));
      row.estimate = (plus - minus) / N;
      // One pseudo-count on each of -1, 0, +1 keeps the error positive.
      const double Ns = N + 3, mean = (plus - minus) / Ns, second = (plus + minus + 2) / Ns;
      row.stderr_ = std::sqrt(std::max(second - mean * mean, 0.0) / N);
      row.trials = total = t.samples;
      row.hits = t.get("plus");
      zeros = t.get("zero");
    }
    if (c.shape == "T") {
      row.exact_rational = chowla_identity_rational(K.q(), n);
      row.exact = static_cast<double>(*row.exact_rational);
      row.exact_kind = "identity";
    } else if (c.shape == "T^2") {
      row.exact_rational = Rational(1);
      row.exact = 1.0;
      row.exact_kind = "identity";
    }
    rep.rows.push_back(row);
    rep.rows.push_back(make_row(point, "p_zero_value", zeros, total, c.mode));
  }
}

// ---------------------------------------------------------------- stats-tv

struct TvAcc {
  std::map<unsigned, CycleHistogram> x, y;
  void merge(const TvAcc& o) {
    for (const auto& [r, h] : o.x) x[r].merge(h);
    for (const auto& [r, h] : o.y) y[r].merge(h);
  }
};

/// Delta-method standard error of the plug-in TV estimate.
double tv_stderr(const CycleHistogram& a, const CycleHistogram& b) {
  const auto pa = a.to_double(), pb = b.to_double();
  std::set<CycleType> cells;
  for (const auto& [ct, p] : pa) cells.insert(ct);
  for (const auto& [ct, p] : pb) cells.insert(ct);
  double sa = 0, sb = 0;
  for (const auto& ct : cells) {
    const double u = pa.count(ct) ? pa.at(ct) : 0.0, v = pb.count(ct) ? pb.at(ct) : 0.0;
    const double s = u > v ? 1.0 : (u < v ? -1.0 : 0.0);
    sa += s * u;
    sb += s * v;
  }
  const double Na = static_cast<double>(a.total), Nb = static_cast<double>(b.total);
  const double se = 0.5 * std::sqrt((1 - sa * sa) / Na + (1 - sb * sb) / Nb);
  return std::max(se, 1.0 / std::min(Na, Nb));
}

void run_stats_tv(const ExperimentConfig& c, ExperimentReport& rep) {
  const Field& K = c.field();
  for (unsigned n : c.n) {
    std::optional<CycleDist> ex, ey;
    if (n <= kMaxExactPermN) {
      ex = exact_poly_cycle_dist(n, K);
      ey = exact_perm_cycle_dist(n);
    } else if (c.mode == Mode::Exact) {
      throw InvalidArgument("exact stats-tv needs n <= 30");
    }
    TvAcc acc;
    if (c.mode == Mode::MonteCarlo) {
      const Point stream_point{{"n", fmt(n)}};
      const std::uint64_t stream = experiment_stream(c, stream_point);
      acc = parallel_trials<TvAcc>(c.trials, c.workers, [&](std::uint64_t i, TvAcc& a) {
        Rng rng = substream(c.seed, stream, i);
        const CycleType tx = sample_poly_cycle_type(K, n, rng);
        const CycleType ty = sample_perm_cycle_type(n, rng);
        for (unsigned r : c.r) {
          a.x[r].add(restrict_cycle_type(tx, r));
          a.y[r].add(restrict_cycle_type(ty, r));
        }
      });
    }
    for (unsigned r : c.r) {
      const Point point{{"n", fmt(n)}, {"r", fmt(r)}};
      std::optional<Rational> exact;
      if (ex) exact = tv_distance(push_forward(*ex, r), push_forward(*ey, r));
      for (bool scaled : {false, true}) {
        const double mult = scaled ? r : 1;
        ReportRow row;
        row.point = point;
        row.metric = scaled ? "r_times_tv" : "tv";
        if (exact) {
          row.exact_rational = scaled ? Rational(*exact * r) : *exact;
          row.exact = static_cast<double>(*row.exact_rational);
          row.exact_kind = "identity";
        }
        if (c.mode == Mode::Exact) {
          row.observed_rational = row.exact_rational;
          row.estimate = *row.exact;
        } else {
          CycleHistogram& hx = acc.x[r];
          CycleHistogram& hy = acc.y[r];
          hx.n = hy.n = n;
          hx.r = hy.r = r;
          row.estimate = mult * tv_distance(hx, hy);
          row.stderr_ = mult * tv_stderr(hx, hy);
          row.trials = hx.total;
        }
        rep.rows.push_back(row);
      }
    }
  }
}

// ---------------------------------------------------------------- events-bcd

void run_events_bcd(const ExperimentConfig& c, ExperimentReport& rep) {
  const std::uint64_t q = c.field().q();
  for (unsigned n : c.n) {
    const Point point{{"n", fmt(n)}, {"d", fmt(c.d)}, {"alpha", fmt_double(c.alpha)}};
    const unsigned small = static_cast<unsigned>(std::floor(std::pow(static_cast<double>(n), c.alpha)));
    Tally t = run_ensemble(c, point, n, c.d, [&](const BiPoly& f, Tally& acc) {
      const Poly fiber = specialize_x(f, 0);
      unsigned deg_t = 0;
      for (const auto& [g, e] : squarefree_decomposition(fiber)) {
        if (e >= 2) deg_t += e * static_cast<unsigned>(g.degree());
      }
      const bool b = deg_t <= small;
      // A prime cycle length l with n/2 < l <= n - 3 forces A_n (Jordan).
      const CycleType ct = cycle_type_of(fiber);
      bool cp = false;
      for (auto [len, mult] : ct.parts) {
        if (2 * len > n && len + 3 <= n && len > small && is_prime(len)) cp = true;
      }
      const bool dd = is_irreducible_bivariate(f) && is_separable_y(f);
      if (b) acc.add("B");
      if (cp) acc.add("C");
      if (dd) acc.add("D");
      if (b && dd) acc.add("BD");
      if (b && cp && dd) acc.add("BCD");
    });
    const std::uint64_t N = t.samples;
    rep.rows.push_back(make_row(point, "p_b", t.get("B"), N, c.mode, Rational(1), "limit"));
    rep.rows.push_back(make_row(point, "p_c_proxy", t.get("C"), N, c.mode));
    rep.rows.push_back(make_row(point, "p_d", t.get("D"), N, c.mode, one_minus_inv(q, c.d), "limit"));
    rep.rows.push_back(make_row(point, "p_b_and_d", t.get("BD"), N, c.mode, one_minus_inv(q, c.d), "limit"));
    rep.rows.push_back(make_row(point, "p_b_c_proxy_d", t.get("BCD"), N, c.mode, one_minus_inv(q, c.d), "limit"));
  }
}

std::string q_spec(const ExperimentConfig& c) {
  return c.k == 1 ? std::to_string(c.p) : std::to_string(c.p) + "^" + std::to_string(c.k);
}

Point config_params(const ExperimentConfig& c) {
  Point p{{"q", q_spec(c)}};
  if (c.modulus) {
    std::vector<unsigned> m(c.modulus->begin(), c.modulus->end());
    p.emplace_back("modulus", join(m));
  }
  p.emplace_back("mode", to_string(c.mode));
  if (c.mode == Mode::MonteCarlo) p.emplace_back("trials", std::to_string(c.trials));
  if (c.mode == Mode::Exact) p.emplace_back("cap", std::to_string(c.cap));
  switch (c.experiment) {
    case Experiment::Lemma23:
      p.emplace_back("profile", c.profile);
      if (c.profile == "all") {
        p.emplace_back("m", fmt(c.m));
        p.emplace_back("max_degree", fmt(c.max_degree));
      }
      if (c.profile == "cor") {
        p.emplace_back("d", fmt(c.d));
        p.emplace_back("n", join(c.n));
      }
      break;
    case Experiment::Thm11:
      p.emplace_back("n", join(c.n));
      p.emplace_back("d_sweep", join(c.d_sweep.empty() ? std::vector<unsigned>{c.d} : c.d_sweep));
      p.emplace_back("probe_budget", fmt(c.probe_budget));
      break;
    case Experiment::Chowla:
      p.emplace_back("shape", c.shape);
      p.emplace_back("n", join(c.n));
      break;
    case Experiment::StatsTv:
      p.emplace_back("n", join(c.n));
      p.emplace_back("r", join(c.r));
      break;
    case Experiment::EventsBcd:
      p.emplace_back("d", fmt(c.d));
      p.emplace_back("n", join(c.n));
      p.emplace_back("alpha", fmt_double(c.alpha));
      break;
    case Experiment::Thm13:
    case Experiment::Thm16:
      p.emplace_back("d", fmt(c.d));
      p.emplace_back("n", join(c.n));
      p.emplace_back("probe_budget", fmt(c.probe_budget));
      break;
    default:
      p.emplace_back("d", fmt(c.d));
      p.emplace_back("n", join(c.n));
  }
  return p;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [x, name] : experiment_names()) {
    if (x == e) return name;
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& [x, n] : experiment_names()) {
    if (n == name) return x;
  }
  throw InvalidArgument("unknown experiment " + name);
}

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "mc"; }

std::vector<Slot> parse_profile(const std::string& text) {
  std::vector<Slot> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("bad profile slot '" + item + "'");
    const std::string shape = item.substr(0, colon), deg = item.substr(colon + 1);
    Slot s;
    if (shape == "full") {
      s.shape = SlotShape::Full;
    } else if (shape == "low") {
      s.shape = SlotShape::Low;
    } else if (shape == "monic") {
      s.shape = SlotShape::Monic;
    } else {
      throw InvalidArgument("bad profile shape '" + shape + "'");
    }
    unsigned v = 0;
    auto res = std::from_chars(deg.data(), deg.data() + deg.size(), v);
    if (res.ec != std::errc() || res.ptr != deg.data() + deg.size()) {
      throw InvalidArgument("bad profile degree '" + deg + "'");
    }
    s.degree = v;
    out.push_back(s);
  }
  if (out.empty()) throw InvalidArgument("empty profile");
  return out;
}

std::string to_string(const std::vector<Slot>& profile) {
  std::string s;
  for (const auto& slot : profile) {
    if (!s.empty()) s += ",";
    s += slot.shape == SlotShape::Full ? "full" : slot.shape == SlotShape::Low ? "low" : "monic";
    s += ":" + std::to_string(slot.degree);
  }
  return s;
}

bool is_valid_profile(const std::vector<Slot>& profile) {
  if (profile.empty()) return false;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].degree < 1) return false;
    if (i > 0 && profile[i].degree > profile[i - 1].degree) return false;
  }
  return profile.back().shape != SlotShape::Low;
}

std::vector<std::vector<Slot>> all_profiles(unsigned m, unsigned max_degree) {
  std::vector<std::vector<Slot>> out;
  std::vector<Slot> cur;
  std::function<void(unsigned)> rec = [&](unsigned max_deg) {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    const bool last = cur.size() + 1 == m;
    for (unsigned deg = max_deg; deg >= 1; --deg) {
      for (SlotShape s : {SlotShape::Full, SlotShape::Low, SlotShape::Monic}) {
        if (last && s == SlotShape::Low) continue;
        cur.push_back({s, deg});
        rec(deg);
        cur.pop_back();
      }
    }
  };
  if (m >= 1 && max_degree >= 1) rec(max_degree);
  return out;
}

const Field& ExperimentConfig::field() const { return Field::make(p, k, modulus); }

void validate(const ExperimentConfig& c) {
  c.field();
  if (c.mode == Mode::MonteCarlo && c.trials < 1) throw InvalidArgument("monte-carlo mode needs trials >= 1");
  if (c.workers < 1) throw InvalidArgument("workers must be >= 1");
  if (c.experiment != Experiment::Lemma23 || c.profile == "cor") {
    if (c.n.empty()) throw InvalidArgument("no n values given");
    for (unsigned n : c.n) {
      if (n < 1) throw InvalidArgument("n must be >= 1");
    }
  }
  switch (c.experiment) {
    case Experiment::Lemma23:
      if (c.profile == "all") {
        if (c.m < 1 || c.max_degree < 1) throw InvalidArgument("lemma23 needs m >= 1 and max degree >= 1");
      } else if (c.profile == "cor") {
        if (c.d < 1) throw InvalidArgument("the cor profile needs d >= 1");
      } else if (!is_valid_profile(parse_profile(c.profile))) {
        throw InvalidArgument("invalid profile " + c.profile);
      }
      break;
    case Experiment::Thm13:
    case Experiment::DiscClass:
    case Experiment::Thm16:
    case Experiment::Chowla:
      if (c.field().p() == 2) throw Unsupported(to_string(c.experiment) + " needs odd characteristic");
      if (c.experiment == Experiment::Chowla && c.shape != "T" && c.shape != "T^2" && c.shape != "T(T+y)" &&
          c.shape != "norm") {
        throw InvalidArgument("unknown chowla shape " + c.shape);
      }
      break;
    case Experiment::StatsTv:
      if (c.r.empty()) throw InvalidArgument("stats-tv needs restriction levels");
      for (unsigned r : c.r) {
        if (r < 1) throw InvalidArgument("restriction levels must be >= 1");
      }
      break;
    case Experiment::EventsBcd:
      if (!(c.alpha > 0 && c.alpha < 1)) throw InvalidArgument("alpha must lie in (0, 1)");
      break;
    default:
      break;
  }
}

std::string ReportRow::point_key() const {
  std::string s;
  for (const auto& [k, v] : point) s += (s.empty() ? "" : ";") + k + "=" + v;
  return s;
}

const ReportRow* ExperimentReport::find(const std::string& metric,
                                        const std::vector<std::pair<std::string, std::string>>& where) const {
  for (const auto& row : rows) {
    if (row.metric != metric) continue;
    bool ok = true;
    for (const auto& kv : where) ok = ok && std::find(row.point.begin(), row.point.end(), kv) != row.point.end();
    if (ok) return &row;
  }
  return nullptr;
}

double binomial_stderr(std::uint64_t hits, std::uint64_t trials) {
  const double N = static_cast<double>(trials);
  const double p = (static_cast<double>(hits) + 1) / (N + 2);
  return std::sqrt(p * (1 - p) / std::max(N, 1.0));
}

std::string to_json(const ExperimentReport& report, bool with_wall_time) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["experiment"] = report.experiment;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    ordered_json point = ordered_json::object();
    for (const auto& [k, v] : r.point) point[k] = v;
    row["point"] = point;
    row["metric"] = r.metric;
    row["estimate"] = r.estimate;
    if (r.stderr_) row["stderr"] = *r.stderr_;
    if (r.exact) row["exact"] = *r.exact;
    if (!r.exact_kind.empty()) row["exact_kind"] = r.exact_kind;
    if (r.observed_rational) row["observed_rational"] = r.observed_rational->str();
    if (r.exact_rational) row["exact_rational"] = r.exact_rational->str();
    row["trials"] = r.trials;
    row["hits"] = r.hits;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["seed"] = report.seed;
  j["version"] = report.version;
  if (with_wall_time) j["wall_seconds"] = report.wall_seconds;
  return j.dump(2) + "\n";
}

std::string csv_header() {
  return "experiment,q,point,metric,estimate,stderr,exact,exact_kind,observed_rational,exact_rational,trials,hits,seed";
}

std::string to_csv(const ExperimentReport& report) {
  std::string q;
  for (const auto& [k, v] : report.params) {
    if (k == "q") q = v;
  }
  std::string out = csv_header() + "\n";
  for (const auto& r : report.rows) {
    std::vector<std::string> f{report.experiment,
                               q,
                               r.point_key(),
                               r.metric,
                               fmt_double(r.estimate),
                               r.stderr_ ? fmt_double(*r.stderr_) : "",
                               r.exact ? fmt_double(*r.exact) : "",
                               r.exact_kind,
                               r.observed_rational ? r.observed_rational->str() : "",
                               r.exact_rational ? r.exact_rational->str() : "",
                               std::to_string(r.trials),
                               std::to_string(r.hits),
                               std::to_string(report.seed)};
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
    out += "\n";
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment = to_string(config.experiment);
  rep.params = config_params(config);
  rep.seed = config.seed;
  rep.version = PGFF_VERSION;
  switch (config.experiment) {
    case Experiment::Lemma23: run_lemma23(config, rep); break;
    case Experiment::Prop18: run_prop18(config, rep); break;
    case Experiment::Thm11: run_thm11(config, rep); break;
    case Experiment::Thm12: run_thm12(config, rep); break;
    case Experiment::Thm13: run_thm13(config, rep); break;
    case Experiment::DiscClass: run_disc_class(config, rep); break;
    case Experiment::Thm16: run_thm16(config, rep); break;
    case Experiment::Chowla: run_chowla(config, rep); break;
    case Experiment::StatsTv: run_stats_tv(config, rep); break;
    case Experiment::EventsBcd: run_events_bcd(config, rep); break;
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ExperimentReport enumerate_exact(ExperimentConfig config) {
  config.mode = Mode::Exact;
  return run_experiment(config);
}

}  // namespace pgff
