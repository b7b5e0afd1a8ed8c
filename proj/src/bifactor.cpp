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

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pgff/bipoly.hpp"

namespace pgff {

namespace {

using FactorList = std::vector<std::pair<BiPoly, unsigned>>;

// x-adic series with coefficients in K[y]: s[i] is the coefficient of x^i.
using Series = std::vector<Poly>;

constexpr unsigned kMaxExtension = 16;

BiPoly normalize(const BiPoly& f) {
  const Elem lc = f.lc_y().lc();
  if (lc == 1) return f;
  return scale(f, f.field().inv(lc));
}

void add_factor(FactorList& out, const BiPoly& f, unsigned e) {
  BiPoly g = normalize(f);
  for (auto& [h, m] : out) {
    if (h == g) {
      m += e;
      return;
    }
  }
  out.emplace_back(std::move(g), e);
}

void merge(FactorList& out, const FactorList& in, unsigned scale_mult = 1) {
  for (const auto& [h, e] : in) add_factor(out, h, e * scale_mult);
}

FactorList swap_back(const FactorList& in) {
  FactorList out;
  for (const auto& [h, e] : in) add_factor(out, swap_vars(h), e);
  return out;
}

// g with g^p = f when every exponent of f is divisible by p.
BiPoly pth_root_bi(const BiPoly& f) {
  const Field& K = f.field();
  const std::uint32_t p = K.p();
  const std::uint64_t root_exp = K.q() / p;
  std::vector<Poly> v;
  for (std::size_t j = 0; j < f.coeffs().size(); j += p) {
    const Poly& c = f.coeffs()[j];
    std::vector<Elem> w;
    for (std::size_t i = 0; i < c.size(); i += p) w.push_back(K.pow(c[i], root_exp));
    v.emplace_back(K, std::move(w), 'x');
  }
  return BiPoly(K, std::move(v));
}

Poly series_inverse(const Poly& a, std::size_t prec) {
  const Field& K = a.field();
  std::vector<Elem> b(prec, 0);
  const Elem inv0 = K.inv(a[0]);
  b[0] = inv0;
  for (std::size_t k = 1; k < prec; ++k) {
    Elem acc = 0;
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc = K.add(acc, K.mul(a[i], b[k - i]));
    b[k] = K.neg(K.mul(inv0, acc));
  }
  return Poly(K, std::move(b), 'x');
}

Series to_series(const BiPoly& f, std::size_t prec) {
  const Field& K = f.field();
  Series s(prec, Poly(K, 'y'));
  for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
    const Poly& c = f.coeffs()[j];
    for (std::size_t i = 0; i < c.size() && i < prec; ++i) {
      if (c[i] != 0) s[i] += Poly::monomial(K, c[i], j, 'y');
    }
  }
  return s;
}

BiPoly from_series(const Series& s, const Field& K) {
  std::size_t dy = 0;
  for (const auto& c : s) dy = std::max(dy, c.size());
  std::vector<std::vector<Elem>> coeffs(dy, std::vector<Elem>(s.size(), 0));
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s[i].size(); ++j) coeffs[j][i] = s[i][j];
  }
  std::vector<Poly> v;
  for (auto& c : coeffs) v.emplace_back(K, std::move(c), 'x');
  return BiPoly(K, std::move(v));
}

Series series_mul(const Series& a, const Series& b, std::size_t prec) {
  const Field& K = a[0].field();
  Series r(prec, Poly(K, 'y'));
  for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// Lifts F = A*B (mod x) with A0, B0 monic coprime to F = A*B mod x^prec.
std::pair<Series, Series> hensel_two(const Series& F, const Poly& a0, const Poly& b0, std::size_t prec) {
  const Field& K = a0.field();
  ExtGcd eg = ext_gcd(a0, b0);
  Series A(prec, Poly(K, 'y')), B(prec, Poly(K, 'y'));
  A[0] = a0;
  B[0] = b0;
  for (std::size_t k = 1; k < prec; ++k) {
    Poly e = F[k];
    for (std::size_t i = 0; i <= k; ++i) {
      if (A[i].is_zero() || B[k - i].is_zero()) continue;
      e -= A[i] * B[k - i];
    }
    if (e.is_zero()) continue;
    A[k] = (eg.t * e) % a0;
    B[k] = (eg.s * e) % b0;
  }
  return {A, B};
}

std::vector<Series> hensel_lift(const Series& F, const std::vector<Poly>& fiber, std::size_t prec) {
  std::vector<Series> out;
  Series rest = F;
  for (std::size_t i = 0; i + 1 < fiber.size(); ++i) {
    Poly others = Poly::constant(fiber[i].field(), 1, 'y');
    for (std::size_t j = i + 1; j < fiber.size(); ++j) others = others * fiber[j];
    auto [a, b] = hensel_two(rest, fiber[i], others, prec);
    out.push_back(std::move(a));
    rest = std::move(b);
  }
  out.push_back(std::move(rest));
  return out;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// F primitive, separable in y, lc_y(F)(theta) != 0 and F(theta, y) squarefree.
std::vector<BiPoly> hensel_factor(const BiPoly& F, Elem theta, Rng& rng) {
  const Field& K = F.field();
  BiPoly Fs = shift_x(F, theta);
  Poly fiber = specialize_x(Fs, 0);
  Factorization fa = factor(fiber, rng);
  if (fa.factors.size() <= 1) return {F};
  std::vector<Poly> parts;
  for (auto& [g, e] : fa.factors) parts.push_back(g);

  const Poly L = Fs.lc_y();
  const std::size_t prec = static_cast<std::size_t>(F.deg_x() + L.degree() + 1);
  const Poly Linv = series_inverse(L, prec);
  Series inv(prec, Poly(K, 'y'));
  for (std::size_t i = 0; i < prec; ++i) inv[i] = Poly::constant(K, Linv[i], 'y');
  const Series monic_f = series_mul(to_series(Fs, prec), inv, prec);
  std::vector<Series> lifted = hensel_lift(monic_f, parts, prec);

  std::vector<BiPoly> found;
  BiPoly cur = Fs;
  std::vector<std::size_t> remaining(lifted.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool hit = false;
    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    const Poly Lc = cur.lc_y();
    const int xbound = cur.deg_x() + Lc.degree();
    do {
      Series prod(prec, Poly(K, 'y'));
      for (std::size_t i = 0; i < prec; ++i) prod[i] = Poly::constant(K, Lc[i], 'y');
      for (std::size_t c : comb) prod = series_mul(prod, lifted[remaining[c]], prec);
      bool too_big = false;
      for (std::size_t i = static_cast<std::size_t>(xbound) + 1; i < prec; ++i) {
        if (!prod[i].is_zero()) {
          too_big = true;
          break;
        }
      }
      if (too_big) continue;
      BiPoly cand = primitive_part_y(from_series(prod, K));
      auto quo = divide_exact(cur, cand);
      if (!quo) continue;
      found.push_back(cand);
      cur = *quo;
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (std::find(comb.begin(), comb.end(), i) == comb.end()) next.push_back(remaining[i]);
      }
      remaining = std::move(next);
      hit = true;
      break;
    } while (next_combination(comb, remaining.size()));
    if (!hit) ++size;
  }
  if (cur.deg_y() > 0) found.push_back(cur);
  for (auto& h : found) h = normalize(shift_x(h, K.neg(theta)));
  return found;
}

bool good_point(const BiPoly& F, Elem theta, const Extension* ext) {
  Poly fiber = ext ? specialize_x(F, theta, *ext) : specialize_x(F, theta);
  if (fiber.degree() != F.deg_y()) return false;
  return is_squarefree(fiber);
}

FactorList core_factor(const BiPoly& F, Rng& rng);

// Main variable y; F primitive in both directions with deg_y >= 1.
FactorList core_factor_oriented(const BiPoly& F, Rng& rng) {
  const Field& K = F.field();
  FactorList out;
  if (F.deg_y() == 1) {
    add_factor(out, F, 1);
    return out;
  }
  if (derivative_y(F).is_zero()) {
    if (!derivative_x(F).is_zero()) return swap_back(core_factor_oriented(swap_vars(F), rng));
    merge(out, core_factor(pth_root_bi(F), rng), K.p());
    return out;
  }
  for (Elem theta = 0; theta < K.q(); ++theta) {
    if (good_point(F, theta, nullptr)) {
      for (auto& h : hensel_factor(F, theta, rng)) add_factor(out, h, 1);
      return out;
    }
  }
  BiPoly G = gcd_y(F, derivative_y(F));
  if (G.deg_y() > 0) {
    merge(out, core_factor(G, rng));
    merge(out, core_factor(*divide_exact(F, G), rng));
    return out;
  }
  for (unsigned s = 2; s <= kMaxExtension; ++s) {
    const Extension& ext = Extension::of(K, s);
    const Field& L = ext.field();
    for (Elem theta = 0; theta < L.q(); ++theta) {
      if (ext.descend(theta)) continue;
      if (!good_point(F, theta, &ext)) continue;
      std::vector<BiPoly> over = hensel_factor(embed(F, ext), theta, rng);
      std::vector<bool> used(over.size(), false);
      for (std::size_t i = 0; i < over.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        BiPoly prod = over[i];
        BiPoly c = frobenius_coeffs(over[i], ext);
        while (!(c == over[i])) {
          auto it = std::find(over.begin(), over.end(), c);
          if (it == over.end()) throw std::logic_error("factor_bivariate: conjugate factor missing");
          used[static_cast<std::size_t>(it - over.begin())] = true;
          prod = prod * c;
          c = frobenius_coeffs(c, ext);
        }
        auto d = descend(prod, ext);
        if (!d) throw std::logic_error("factor_bivariate: orbit product does not descend");
        add_factor(out, *d, 1);
      }
      return out;
    }
  }
  throw std::logic_error("factor_bivariate: no good specialization point found");
}

FactorList core_factor(const BiPoly& F, Rng& rng) {
  if (F.deg_x() < F.deg_y()) return swap_back(core_factor_oriented(swap_vars(F), rng));
  return core_factor_oriented(F, rng);
}

Elem leading(const BiPoly& f) { return f.lc_y().lc(); }

void finish(BiFactorization& out, const BiPoly& f) {
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
  out.unit = 1;
  BiPoly prod = out.expand(f.field());
  const Field& K = f.field();
  out.unit = K.div(leading(f), leading(prod));
  if (!(scale(prod, out.unit) == f)) throw std::logic_error("factorization does not reproduce its input");
}

}  // namespace

BiFactorization factor_bivariate(const BiPoly& f, Rng& rng) {
  if (f.is_zero() || f.is_constant()) throw InvalidArgument("factor_bivariate needs a nonconstant polynomial");
  const Field& K = f.field();
  FactorList list;
  Poly cy = content_y(f);
  BiPoly f1 = divide_x(f, cy);
  if (cy.degree() > 0) {
    for (auto& [g, e] : factor(cy, rng).factors) add_factor(list, BiPoly::from_x(g), e);
  }
  Poly cx = content_x(f1);
  BiPoly f2 = f1;
  if (cx.degree() > 0) {
    f2 = *divide_exact(f1, BiPoly::from_y(cx));
    for (auto& [g, e] : factor(cx, rng).factors) add_factor(list, BiPoly::from_y(g), e);
  }
  if (!f2.is_constant()) merge(list, core_factor(f2, rng));
  BiFactorization out;
  out.factors = std::move(list);
  finish(out, f);
  (void)K;
  return out;
}

BiFactorization factor_bivariate(const BiPoly& f) {
  Rng rng(0x5eed'b1f0'0000'0001ULL);
  return factor_bivariate(f, rng);
}

bool is_irreducible_bivariate(const BiPoly& f) {
  if (f.is_zero() || f.is_constant()) return false;
  auto fa = factor_bivariate(f);
  return fa.factors.size() == 1 && fa.factors[0].second == 1;
}

BiFactorization factor_bivariate_oracle(const BiPoly& f, std::uint64_t cap) {
  if (!f.is_monic_y() || f.deg_y() < 1) throw InvalidArgument("oracle needs a polynomial monic in y");
  const Field& K = f.field();
  FactorList list;
  BiPoly rest = f;
  while (rest.deg_y() > 0) {
    const unsigned dx = static_cast<unsigned>(std::max(rest.deg_x(), 0));
    bool found = false;
    for (unsigned k = 1; 2 * k <= static_cast<unsigned>(rest.deg_y()) && !found; ++k) {
      checked_pow(K.q(), std::uint64_t{k} * (dx + 1), cap);
      const std::size_t slots = std::size_t{k} * (dx + 1);
      std::vector<Elem> digits(slots, 0);
      while (true) {
        std::vector<Poly> c;
        for (unsigned j = 0; j < k; ++j) {
          c.emplace_back(K, std::vector<Elem>(digits.begin() + j * (dx + 1), digits.begin() + (j + 1) * (dx + 1)), 'x');
        }
        c.push_back(Poly::constant(K, 1, 'x'));
        BiPoly cand(K, std::move(c));
        if (auto quo = divide_exact(rest, cand)) {
          add_factor(list, cand, 1);
          rest = *quo;
          found = true;
          break;
        }
        std::size_t i = 0;
        while (i < slots) {
          if (++digits[i] < K.q()) break;
          digits[i] = 0;
          ++i;
        }
        if (i == slots) break;
      }
    }
    if (!found) {
      add_factor(list, rest, 1);
      break;
    }
  }
  BiFactorization out;
  out.factors = std::move(list);
  finish(out, f);
  return out;
}

}  // namespace pgff
