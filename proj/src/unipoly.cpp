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

#include "pgff/unipoly.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace pgff {

namespace {

// Rows x^{iq} mod f; applies h -> h^q mod f in O(n^2).
class FrobeniusMatrix {
 public:
  explicit FrobeniusMatrix(const Poly& f) : f_(f) {
    const Field& K = f.field();
    const int n = f.degree();
    Poly xq = pow_mod(Poly::variable(K, f.var()), K.q(), f);
    Poly row = Poly::constant(K, 1, f.var());
    rows_.reserve(n);
    for (int i = 0; i < n; ++i) {
      rows_.push_back(row);
      row = mul_mod(row, xq, f);
    }
  }

  Poly apply(const Poly& h) const {
    const Field& K = f_.field();
    const std::size_t n = rows_.size();
    std::vector<Elem> acc(n, 0);
    for (std::size_t i = 0; i < h.size() && i < n; ++i) {
      const Elem c = h[i];
      if (c == 0) continue;
      const auto& r = rows_[i].coeffs();
      for (std::size_t j = 0; j < r.size(); ++j) acc[j] = K.add(acc[j], K.mul(c, r[j]));
    }
    return Poly(K, std::move(acc), f_.var());
  }

 private:
  Poly f_;
  std::vector<Poly> rows_;
};

void sort_factors(std::vector<std::pair<Poly, unsigned>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
}

}  // namespace

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) throw CapExceeded("enumeration size exceeds cap of " + std::to_string(cap));
    r *= base;
  }
  if (r > cap) throw CapExceeded("enumeration size exceeds cap of " + std::to_string(cap));
  return r;
}

Poly Factorization::expand(const Field& f) const {
  Poly r = Poly::constant(f, unit);
  for (const auto& [g, e] : factors) r = r * pow(g, e);
  return r;
}

unsigned Factorization::omega() const {
  unsigned s = 0;
  for (const auto& fe : factors) s += fe.second;
  return s;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw InvalidArgument("squarefree decomposition of zero");
  std::vector<std::pair<Poly, unsigned>> out;
  const std::uint32_t p = f.field().p();
  Poly cur = monic(f);
  unsigned mult = 1;
  while (cur.degree() > 0) {
    Poly c = gcd(cur, derivative(cur));
    Poly w = cur / c;
    unsigned i = 1;
    while (w.degree() > 0) {
      Poly y = gcd(w, c);
      Poly z = w / y;
      if (z.degree() > 0) out.emplace_back(z, i * mult);
      ++i;
      w = y;
      c = c / y;
    }
    if (c.degree() <= 0) break;
    cur = pth_root(c);
    mult *= p;
  }
  sort_factors(out);
  return out;
}

std::pair<Poly, Poly> squarefree_split(const Poly& f) {
  if (f.is_zero()) throw InvalidArgument("squarefree split of zero");
  const Field& K = f.field();
  Poly s = Poly::constant(K, 1, f.var());
  for (const auto& [g, e] : squarefree_decomposition(f)) {
    if (e == 1) s = s * g;
  }
  return {s, f / s};
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.degree() < 1) return true;
  return gcd(f, derivative(f)).degree() == 0;
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, unsigned>> out;
  if (f.degree() < 1) return out;
  const Field& K = f.field();
  Poly rest = monic(f);
  if (rest.degree() == 1) {
    out.emplace_back(rest, 1);
    return out;
  }
  FrobeniusMatrix frob(rest);
  const Poly x = Poly::variable(K, f.var());
  Poly h = x;
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(rest.degree()); ++d) {
    h = frob.apply(h);
    Poly g = gcd(h - x, rest);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
  return out;
}

std::vector<Poly> equal_degree(const Poly& f, unsigned d, Rng& rng) {
  const Field& K = f.field();
  const unsigned n = static_cast<unsigned>(f.degree());
  if (n == d) return {f};
  std::vector<Poly> done;
  if (d == 1 && K.q() <= 512) {
    for (Elem a = 0; a < K.q() && done.size() < n; ++a) {
      if (f.eval(a) == 0) done.push_back(Poly(K, {K.neg(a), 1}, f.var()));
    }
    std::sort(done.begin(), done.end());
    return done;
  }
  std::vector<Poly> todo{f};
  std::unique_ptr<FrobeniusMatrix> frob;
  if (K.p() != 2) frob = std::make_unique<FrobeniusMatrix>(f);
  unsigned trace_steps = K.k() * d;
  while (!todo.empty()) {
    std::vector<Elem> rc(n);
    for (auto& c : rc) c = uniform_elem(K, rng);
    Poly a(K, rc, f.var());
    if (a.degree() < 1) continue;
    Poly b(K, f.var());
    if (K.p() == 2) {
      Poly t = a;
      b = a;
      for (unsigned i = 1; i < trace_steps; ++i) {
        t = mul_mod(t, t, f);
        b += t;
      }
    } else {
      Poly t = a;
      Poly acc = a;
      for (unsigned i = 1; i < d; ++i) {
        t = frob->apply(t);
        acc = mul_mod(acc, t, f);
      }
      b = pow_mod(acc, (K.q() - 1) / 2, f) - Poly::constant(K, 1, f.var());
    }
    std::vector<Poly> next;
    for (auto& h : todo) {
      Poly g = gcd(b % h, h);
      if (g.degree() > 0 && g.degree() < h.degree()) {
        Poly other = h / g;
        for (Poly* part : {&g, &other}) {
          if (static_cast<unsigned>(part->degree()) == d) {
            done.push_back(*part);
          } else {
            next.push_back(*part);
          }
        }
      } else {
        next.push_back(h);
      }
    }
    todo = std::move(next);
  }
  std::sort(done.begin(), done.end());
  return done;
}

Factorization factor(const Poly& f, Rng& rng) {
  if (f.is_zero()) throw InvalidArgument("factor of the zero polynomial");
  Factorization out;
  out.unit = f.lc();
  if (f.degree() == 0) return out;
  for (const auto& [g, e] : squarefree_decomposition(f)) {
    for (const auto& [h, d] : distinct_degree(g)) {
      for (auto& p : equal_degree(h, d, rng)) out.factors.emplace_back(std::move(p), e);
    }
  }
  sort_factors(out.factors);
  return out;
}

Factorization factor(const Poly& f) {
  Rng rng(0x5eed'f00d'1234'5678ULL);
  return factor(f, rng);
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const Field& K = f.field();
  Poly g = monic(f);
  const unsigned n = static_cast<unsigned>(g.degree());
  FrobeniusMatrix frob(g);
  const Poly x = Poly::variable(K, f.var());
  std::vector<Poly> powers{x};
  Poly h = x;
  for (unsigned i = 1; i <= n; ++i) {
    h = frob.apply(h);
    powers.push_back(h);
  }
  if (!(powers[n] - x).is_zero()) return false;
  for (auto r : prime_factors(n)) {
    if (gcd(powers[n / r] - x, g).degree() != 0) return false;
  }
  return true;
}

CycleType cycle_type_of(const Poly& f) {
  if (f.degree() < 1) throw InvalidArgument("cycle type of a constant");
  CycleType ct;
  for (const auto& [g, e] : squarefree_decomposition(f)) {
    for (const auto& [h, d] : distinct_degree(g)) ct.add(d, e * static_cast<unsigned>(h.degree()) / d);
  }
  return ct;
}

int mobius(const Poly& g) {
  if (g.is_zero()) throw InvalidArgument("mobius of zero");
  if (g.degree() < 1) return 1;
  if (!is_squarefree(g)) return 0;
  unsigned count = 0;
  for (const auto& [h, d] : distinct_degree(monic(g))) count += static_cast<unsigned>(h.degree()) / d;
  return count % 2 == 0 ? 1 : -1;
}

int liouville(const Poly& g) {
  if (g.is_zero()) throw InvalidArgument("liouville of zero");
  if (g.degree() < 1) return 1;
  unsigned omega = 0;
  for (const auto& [len, mult] : cycle_type_of(g).parts) omega += mult;
  return omega % 2 == 0 ? 1 : -1;
}

std::int64_t mobius_sum(unsigned n, const Field& field, std::uint64_t cap) {
  checked_pow(field.q(), n, cap);
  std::int64_t sum = 0;
  for_each_monic(field, n, [&](const Poly& h) { sum += mobius(h); });
  return sum;
}

Elem resultant(const Poly& f0, const Poly& g0) {
  if (f0.is_zero() && g0.is_zero()) throw InvalidArgument("resultant of two zero polynomials");
  if (f0.is_zero() || g0.is_zero()) return 0;
  const Field& K = f0.field();
  Poly f = f0, g = g0;
  Elem acc = 1;
  while (true) {
    if (g.degree() == 0) return K.mul(acc, K.pow(g.lc(), static_cast<std::uint64_t>(f.degree())));
    Poly r = f % g;
    if (r.is_zero()) return 0;
    acc = K.mul(acc, K.pow(g.lc(), static_cast<std::uint64_t>(f.degree() - r.degree())));
    if ((r.degree() * g.degree()) % 2 == 1) acc = K.neg(acc);
    f = std::move(g);
    g = std::move(r);
  }
}

Elem resultant_std(const Poly& f, const Poly& g) {
  Elem r = resultant(f, g);
  if (!f.is_zero() && !g.is_zero() && (f.degree() * g.degree()) % 2 == 1) r = f.field().neg(r);
  return r;
}

Elem discriminant(const Poly& f) {
  if (!f.is_monic()) throw InvalidArgument("discriminant requires a monic polynomial");
  if (f.degree() < 1) throw InvalidArgument("discriminant of a constant");
  const Field& K = f.field();
  const std::int64_t n = f.degree();
  Poly df = derivative(f);
  if (df.is_zero()) return 0;
  Elem r = resultant_std(f, df);
  if ((n * (n - 1) / 2) % 2 == 1) r = K.neg(r);
  return r;
}

int pellet_predict(const Poly& f) {
  const Field& K = f.field();
  if (K.p() == 2) throw Unsupported("Pellet's formula needs odd characteristic");
  if (f.degree() < 1) throw InvalidArgument("Pellet's formula needs a nonconstant polynomial");
  Elem d = discriminant(f);
  if (d == 0) throw InvalidArgument("Pellet's formula needs a squarefree polynomial");
  const int sign = f.degree() % 2 == 0 ? 1 : -1;
  return sign * K.quadratic_character(d);
}

std::optional<Poly> is_perfect_square(const Poly& f) {
  const Field& K = f.field();
  if (f.is_zero()) return f;
  auto r = K.sqrt(f.lc());
  if (!r) return std::nullopt;
  Poly t = Poly::constant(K, *r, f.var());
  if (f.degree() == 0) return t;
  for (const auto& [g, e] : squarefree_decomposition(f)) {
    if (e % 2 != 0) return std::nullopt;
    t = t * pow(g, e / 2);
  }
  return t;
}

int mobius_int(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

BigInt count_irreducibles(unsigned n, const Field& field) {
  if (n == 0) throw InvalidArgument("count_irreducibles needs n >= 1");
  BigInt total = 0;
  for (unsigned e = 1; e <= n; ++e) {
    if (n % e != 0) continue;
    const int mu = mobius_int(n / e);
    if (mu == 0) continue;
    BigInt term = boost::multiprecision::pow(BigInt(field.q()), e);
    total += mu * term;
  }
  return total / n;
}

Poly random_bounded(const Field& field, unsigned d, Rng& rng, char var) {
  std::vector<Elem> c(d + 1);
  for (auto& e : c) e = uniform_elem(field, rng);
  return Poly(field, std::move(c), var);
}

}  // namespace pgff
