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

#include "pgff/stats.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

namespace pgff {

Rational CycleDist::total() const {
  Rational s = 0;
  for (const auto& [ct, p] : mass) s += p;
  return s;
}

std::map<CycleType, double> CycleDist::to_double() const {
  std::map<CycleType, double> out;
  for (const auto& [ct, p] : mass) out[ct] = static_cast<double>(p);
  return out;
}

void CycleHistogram::add(const CycleType& ct, std::uint64_t c) {
  counts[ct] += c;
  total += c;
}

void CycleHistogram::merge(const CycleHistogram& o) {
  for (const auto& [ct, c] : o.counts) add(ct, c);
}

std::map<CycleType, double> CycleHistogram::to_double() const {
  std::map<CycleType, double> out;
  for (const auto& [ct, c] : counts) out[ct] = static_cast<double>(c) / static_cast<double>(total);
  return out;
}

CycleType sample_perm_cycle_type(unsigned n, Rng& rng) {
  if (n == 0) throw InvalidArgument("permutation size must be positive");
  CycleType ct;
  unsigned left = n;
  while (left > 0) {
    // The cycle through the smallest unplaced point has uniform length.
    std::uniform_int_distribution<unsigned> len(1, left);
    const unsigned l = len(rng);
    ct.add(l);
    left -= l;
  }
  return ct;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

int deg2(u128 a) {
  const u64 hi = static_cast<u64>(a >> 64);
  if (hi) return 127 - std::countl_zero(hi);
  const u64 lo = static_cast<u64>(a);
  return lo ? 63 - std::countl_zero(lo) : -1;
}

u64 mod2(u128 a, u64 m) {
  const int dm = deg2(m);
  for (int d = deg2(a); d >= dm; d = deg2(a)) a ^= static_cast<u128>(m) << (d - dm);
  return static_cast<u64>(a);
}

u128 clmul(u64 a, u64 b) {
  u128 r = 0;
  while (b) {
    const int i = std::countr_zero(b);
    r ^= static_cast<u128>(a) << i;
    b &= b - 1;
  }
  return r;
}

u64 mulmod2(u64 a, u64 b, u64 m) { return mod2(clmul(a, b), m); }

u64 div2(u64 a, u64 b) {
  const int db = deg2(b);
  u64 q = 0;
  for (int d = deg2(a); d >= db; d = deg2(a)) {
    q |= u64{1} << (d - db);
    a ^= b << (d - db);
  }
  return q;
}

u64 gcd2(u64 a, u64 b) {
  while (b) {
    const u64 r = mod2(a, b);
    a = b;
    b = r;
  }
  return a;
}

u64 derivative2(u64 f) { return (f >> 1) & 0x5555555555555555ULL; }

u64 sqrt2(u64 f) {
  u64 r = 0;
  for (int i = 0; 2 * i < 64; ++i) r |= ((f >> (2 * i)) & 1) << i;
  return r;
}

void distinct_degree2(u64 s, unsigned mult, CycleType& ct) {
  u64 h = 2;  // y
  for (unsigned i = 1; 2 * static_cast<int>(i) <= deg2(s); ++i) {
    h = mulmod2(h, h, s);
    const u64 g = gcd2(h ^ 2, s);
    if (deg2(g) > 0) {
      ct.add(i, mult * static_cast<unsigned>(deg2(g)) / i);
      s = div2(s, g);
      h = mod2(h, s);
    }
  }
  if (deg2(s) > 0) ct.add(static_cast<unsigned>(deg2(s)), mult);
}

void type2(u64 f, unsigned mult, CycleType& ct) {
  while (deg2(f) > 0) {
    const u64 d = derivative2(f);
    if (d == 0) {
      f = sqrt2(f);
      mult *= 2;
      continue;
    }
    const u64 g = gcd2(f, d);
    const u64 s = div2(f, g);  // primes of f with odd multiplicity, each once
    distinct_degree2(s, mult, ct);
    // Every prime left in g now has even multiplicity.
    f = g;
  }
}

}  // namespace

CycleType cycle_type_gf2(std::uint64_t f) {
  if (deg2(f) < 1) throw InvalidArgument("cycle type of a constant");
  CycleType ct;
  type2(f, 1, ct);
  return ct;
}

CycleType sample_poly_cycle_type(const Field& field, unsigned n, Rng& rng) {
  if (n == 0) throw InvalidArgument("polynomial degree must be positive");
  if (field.q() == 2 && n <= 63) {
    const u64 low = rng() & ((u64{1} << n) - 1);
    return cycle_type_gf2(low | (u64{1} << n));
  }
  Poly h = random_bounded(field, n - 1, rng, 'y');
  h += Poly::monomial(field, 1, n, 'y');
  return cycle_type_of(h);
}

namespace {

// Calls fn(parts) for every partition of n as a CycleType.
void for_each_partition(unsigned n, const std::function<void(const CycleType&)>& fn) {
  CycleType cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned max_part) {
    if (left == 0) {
      fn(cur);
      return;
    }
    for (unsigned part = std::min(left, max_part); part >= 1; --part) {
      for (unsigned m = 1; m * part <= left; ++m) {
        cur.parts[part] = m;
        rec(left - m * part, part - 1);
      }
      cur.parts.erase(part);
    }
  };
  rec(n, n);
}

BigInt binomial(const BigInt& top, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (top - i) / (i + 1);
  return r;
}

}  // namespace

CycleDist exact_perm_cycle_dist(unsigned n) {
  if (n == 0) throw InvalidArgument("permutation size must be positive");
  if (n > kMaxExactPermN) throw InvalidArgument("exact permutation distribution limited to n <= 30");
  CycleDist d{n, 1, {}, "exact-cauchy"};
  for_each_partition(n, [&](const CycleType& ct) {
    BigInt denom = 1;
    for (auto [len, m] : ct.parts) {
      for (unsigned i = 0; i < m; ++i) denom *= len;
      for (unsigned i = 2; i <= m; ++i) denom *= i;
    }
    d.mass[ct] = Rational(1, denom);
  });
  return d;
}

CycleDist exact_poly_cycle_dist(unsigned n, const Field& field, PolyDistMethod method, std::uint64_t cap) {
  if (n == 0) throw InvalidArgument("polynomial degree must be positive");
  CycleDist d{n, 1, {}, ""};
  BigInt qn = 1;
  for (unsigned i = 0; i < n; ++i) qn *= field.q();
  if (method == PolyDistMethod::Exhaustive) {
    checked_pow(field.q(), n, cap);
    d.source = "exact-exhaustive";
    std::map<CycleType, std::uint64_t> counts;
    for_each_monic(field, n, [&](const Poly& h) { ++counts[cycle_type_of(h)]; });
    for (const auto& [ct, c] : counts) d.mass[ct] = Rational(BigInt(c), qn);
    return d;
  }
  if (n > 60) throw InvalidArgument("combinatorial distribution limited to n <= 60");
  d.source = "exact-combinatorial";
  std::vector<BigInt> irreducibles(n + 1);
  for (unsigned i = 1; i <= n; ++i) irreducibles[i] = count_irreducibles(i, field);
  for_each_partition(n, [&](const CycleType& ct) {
    BigInt count = 1;
    for (auto [len, m] : ct.parts) count *= binomial(irreducibles[len] + m - 1, m);
    if (count != 0) d.mass[ct] = Rational(count, qn);
  });
  return d;
}

CycleDist push_forward(const CycleDist& d, unsigned r) {
  if (r == 0) throw InvalidArgument("restriction level must be positive");
  CycleDist out{d.n, std::max(r, d.r), {}, "push-forward"};
  for (const auto& [ct, p] : d.mass) out.mass[restrict_cycle_type(ct, r)] += p;
  return out;
}

Rational tv_distance(const CycleDist& a, const CycleDist& b) {
  if (a.n != b.n || a.r != b.r) throw InvalidArgument("tv_distance of distributions with different scopes");
  Rational s = 0;
  for (const auto& [ct, p] : a.mass) {
    auto it = b.mass.find(ct);
    Rational diff = p - (it == b.mass.end() ? Rational(0) : it->second);
    s += diff < 0 ? Rational(-diff) : diff;
  }
  for (const auto& [ct, p] : b.mass) {
    if (!a.mass.count(ct)) s += p;
  }
  return s / 2;
}

double tv_distance(const std::map<CycleType, double>& a, const std::map<CycleType, double>& b) {
  double s = 0;
  for (const auto& [ct, p] : a) {
    auto it = b.find(ct);
    s += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [ct, p] : b) {
    if (!a.count(ct)) s += p;
  }
  return s / 2;
}

double tv_distance(const CycleHistogram& a, const CycleHistogram& b) {
  if (a.n != b.n || a.r != b.r) throw InvalidArgument("tv_distance of distributions with different scopes");
  return tv_distance(a.to_double(), b.to_double());
}

double tv_distance(const CycleDist& a, const CycleHistogram& b) {
  if (a.n != b.n || a.r != b.r) throw InvalidArgument("tv_distance of distributions with different scopes");
  return tv_distance(a.to_double(), b.to_double());
}

ChiSquare chi_square(const CycleHistogram& observed, const CycleDist& expected) {
  if (observed.n != expected.n || observed.r != expected.r) throw InvalidArgument("chi_square with different scopes");
  ChiSquare out;
  const double N = static_cast<double>(observed.total);
  unsigned cells = 0;
  for (const auto& [ct, p] : expected.mass) {
    const double e = static_cast<double>(p) * N;
    if (e <= 0) continue;
    auto it = observed.counts.find(ct);
    const double o = it == observed.counts.end() ? 0.0 : static_cast<double>(it->second);
    out.statistic += (o - e) * (o - e) / e;
    ++cells;
  }
  for (const auto& [ct, c] : observed.counts) {
    if (!expected.mass.count(ct)) out.statistic = std::numeric_limits<double>::infinity();
  }
  out.dof = cells > 0 ? cells - 1 : 0;
  if (out.dof == 0 || std::isinf(out.statistic)) {
    out.p_value = std::isinf(out.statistic) ? 0.0 : 1.0;
    return out;
  }
  boost::math::chi_squared dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

}  // namespace pgff
