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

#include "pgff/bipoly.hpp"

#include <algorithm>

namespace pgff {

BiPoly::BiPoly(const Field& f, std::vector<Poly> coeffs_y) : field_(&f), c_(std::move(coeffs_y)) {
  for (auto& c : c_) c.set_var('x');
  trim();
}

BiPoly BiPoly::from_y(const Poly& c) {
  std::vector<Poly> v;
  v.reserve(c.size());
  for (Elem e : c.coeffs()) v.push_back(Poly::constant(c.field(), e, 'x'));
  return BiPoly(c.field(), std::move(v));
}

BiPoly BiPoly::from_x(const Poly& a) { return BiPoly(a.field(), std::vector<Poly>{a}); }

BiPoly BiPoly::constant(const Field& f, Elem c) { return from_x(Poly::constant(f, c, 'x')); }

BiPoly BiPoly::monomial(const Field& f, Elem c, unsigned i, unsigned j) {
  std::vector<Poly> v(j + 1, Poly(f, 'x'));
  v[j] = Poly::monomial(f, c, i, 'x');
  return BiPoly(f, std::move(v));
}

int BiPoly::deg_x() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Poly(*field_, 'x'));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Poly(*field_, 'x'));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  return &a.field() == &b.field() && a.coeffs() == b.coeffs();
}

std::strong_ordering operator<=>(const BiPoly& a, const BiPoly& b) {
  if (auto c = a.deg_y() <=> b.deg_y(); c != 0) return c;
  for (std::size_t j = a.coeffs().size(); j-- > 0;) {
    if (auto c = a.coeffs()[j] <=> b.coeffs()[j]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

BiPoly operator-(const BiPoly& a) {
  std::vector<Poly> v;
  for (const auto& c : a.coeffs()) v.push_back(-c);
  return BiPoly(a.field(), std::move(v));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  const Field& K = a.field();
  if (a.is_zero() || b.is_zero()) return BiPoly(K);
  std::vector<Poly> r(a.coeffs().size() + b.coeffs().size() - 1, Poly(K, 'x'));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) r[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  return BiPoly(K, std::move(r));
}

BiPoly scale(const BiPoly& a, Elem c) {
  std::vector<Poly> v;
  for (const auto& p : a.coeffs()) v.push_back(scale(p, c));
  return BiPoly(a.field(), std::move(v));
}

BiPoly mul_x(const BiPoly& f, const Poly& a) {
  std::vector<Poly> v;
  for (const auto& p : f.coeffs()) v.push_back(p * a);
  return BiPoly(f.field(), std::move(v));
}

BiPoly pow(const BiPoly& f, unsigned e) {
  BiPoly r = BiPoly::constant(f.field(), 1);
  for (unsigned i = 0; i < e; ++i) r = r * f;
  return r;
}

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw DivisionByZero("bivariate division by zero");
  const Field& K = a.field();
  if (a.is_zero()) return BiPoly(K);
  if (a.deg_y() < b.deg_y()) return std::nullopt;
  std::vector<Poly> rem(a.coeffs());
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  std::vector<Poly> quo(rem.size() - db, Poly(K, 'x'));
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    auto t = divide_exact(rem[i], d[db]);
    if (!t) return std::nullopt;
    quo[i - db] = *t;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= *t * d[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (!rem[i].is_zero()) return std::nullopt;
  }
  return BiPoly(K, std::move(quo));
}

BiPoly divide_x(const BiPoly& f, const Poly& a) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) {
    auto t = divide_exact(c, a);
    if (!t) throw InvalidArgument("divide_x: inexact division");
    v.push_back(*t);
  }
  return BiPoly(f.field(), std::move(v));
}

BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw DivisionByZero("pseudo-remainder by zero");
  const Field& K = a.field();
  if (a.deg_y() < b.deg_y()) return a;
  std::vector<Poly> r(a.coeffs());
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const Poly& lb = d[db];
  for (std::size_t i = r.size(); i-- > db;) {
    const Poly t = r[i];
    for (auto& c : r) c = c * lb;
    if (!t.is_zero()) {
      for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= t * d[j];
    }
    r.pop_back();
  }
  BiPoly out(K, std::move(r));
  return out;
}

BiPoly derivative_y(const BiPoly& f) {
  const Field& K = f.field();
  std::vector<Poly> v;
  for (std::size_t j = 1; j < f.coeffs().size(); ++j) {
    v.push_back(scale(f.coeffs()[j], K.from_int(static_cast<std::int64_t>(j % K.p()))));
  }
  return BiPoly(K, std::move(v));
}

BiPoly derivative_x(const BiPoly& f) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) v.push_back(derivative(c));
  return BiPoly(f.field(), std::move(v));
}

BiPoly swap_vars(const BiPoly& f) {
  const Field& K = f.field();
  const int dx = f.deg_x();
  std::vector<Poly> v;
  for (int i = 0; i <= dx; ++i) {
    std::vector<Elem> c(f.coeffs().size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.coeffs()[j][i];
    v.emplace_back(K, std::move(c), 'x');
  }
  return BiPoly(K, std::move(v));
}

Poly content_x(const BiPoly& f) {
  if (f.is_zero()) throw InvalidArgument("content of zero");
  Poly g(f.field(), 'y');
  const BiPoly s = swap_vars(f);
  for (const auto& b : s.coeffs()) {
    g = gcd(g, b);
    if (g.is_one()) break;
  }
  return g.set_var('y');
}

Poly content_y(const BiPoly& f) {
  if (f.is_zero()) throw InvalidArgument("content of zero");
  Poly g(f.field(), 'x');
  for (const auto& a : f.coeffs()) {
    g = gcd(g, a);
    if (g.is_one()) break;
  }
  return g.set_var('x');
}

std::pair<Poly, BiPoly> primitive_decompose(const BiPoly& f) {
  Poly c = content_x(f);
  auto g = divide_exact(f, BiPoly::from_y(c));
  return {c, *g};
}

BiPoly primitive_part_y(const BiPoly& f) {
  if (f.is_zero()) return f;
  return divide_x(f, content_y(f));
}

Poly specialize_x(const BiPoly& f, Elem tau) {
  std::vector<Elem> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) v.push_back(c.eval(tau));
  return Poly(f.field(), std::move(v), 'y');
}

Poly specialize_x(const BiPoly& f, Elem tau, const Extension& ext) {
  const Field& L = ext.field();
  std::vector<Elem> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    Elem acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = L.add(L.mul(acc, tau), ext.embed(c[i]));
    v.push_back(acc);
  }
  return Poly(L, std::move(v), 'y');
}

BiPoly shift_x(const BiPoly& f, Elem theta) {
  if (theta == 0) return f;
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) v.push_back(taylor_shift(c, theta));
  return BiPoly(f.field(), std::move(v));
}

BiPoly truncate_x(const BiPoly& f, std::size_t n) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) v.push_back(truncate(c, n));
  return BiPoly(f.field(), std::move(v));
}

BiPoly embed(const BiPoly& f, const Extension& ext) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) v.push_back(embed(c, ext));
  return BiPoly(ext.field(), std::move(v));
}

std::optional<BiPoly> descend(const BiPoly& f, const Extension& ext) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) {
    auto d = descend(c, ext);
    if (!d) return std::nullopt;
    v.push_back(*d);
  }
  return BiPoly(ext.base(), std::move(v));
}

BiPoly frobenius_coeffs(const BiPoly& f, const Extension& ext) {
  std::vector<Poly> v;
  for (const auto& c : f.coeffs()) v.push_back(frobenius_coeffs(c, ext));
  return BiPoly(ext.field(), std::move(v));
}

namespace {

BiPoly normalize_lc(const BiPoly& f) {
  if (f.is_zero()) return f;
  const Elem lc = f.lc_y().lc();
  if (lc == 1) return f;
  return scale(f, f.field().inv(lc));
}

}  // namespace

BiPoly gcd_y(const BiPoly& a, const BiPoly& b) {
  const Field& K = a.field();
  if (a.is_zero()) return normalize_lc(primitive_part_y(b));
  if (b.is_zero()) return normalize_lc(primitive_part_y(a));
  BiPoly A = primitive_part_y(a);
  BiPoly B = primitive_part_y(b);
  if (A.deg_y() < B.deg_y()) std::swap(A, B);
  while (!B.is_zero() && B.deg_y() > 0) {
    BiPoly R = pseudo_remainder(A, B);
    A = std::move(B);
    B = primitive_part_y(R);
  }
  if (B.is_zero()) return normalize_lc(A);
  return BiPoly::constant(K, 1);
}

namespace {

// Smallest extension of the base with at least `needed` elements.
const Extension& extension_with(const Field& K, std::uint64_t needed) {
  unsigned s = 1;
  std::uint64_t size = K.q();
  while (size < needed) {
    ++s;
    size *= K.q();
  }
  return Extension::of(K, s);
}

}  // namespace

Poly resultant_y(const BiPoly& f, const BiPoly& g) {
  const Field& K = f.field();
  if (f.is_zero() && g.is_zero()) throw InvalidArgument("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return Poly(K, 'x');
  const int n = f.deg_y(), m = g.deg_y();
  const std::uint64_t bound =
      static_cast<std::uint64_t>(n) * std::max(g.deg_x(), 0) + static_cast<std::uint64_t>(m) * std::max(f.deg_x(), 0);
  const std::uint64_t bad = static_cast<std::uint64_t>(std::max(f.lc_y().degree(), 0) + std::max(g.lc_y().degree(), 0));
  const Extension& ext = extension_with(K, bound + 1 + bad);
  const Field& L = ext.field();
  std::vector<Elem> xs, ys;
  for (Elem tau = 0; tau < L.q() && xs.size() < bound + 1; ++tau) {
    Poly ft = specialize_x(f, tau, ext);
    Poly gt = specialize_x(g, tau, ext);
    if (ft.degree() != n || gt.degree() != m) continue;
    xs.push_back(tau);
    ys.push_back(resultant(ft, gt));
  }
  auto r = descend(interpolate(L, xs, ys, 'x'), ext);
  if (!r) throw std::logic_error("resultant_y: interpolated resultant does not descend");
  return *r;
}

Poly resultant_y_subresultant(const BiPoly& f, const BiPoly& g) {
  const Field& K = f.field();
  if (f.is_zero() && g.is_zero()) throw InvalidArgument("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return Poly(K, 'x');
  const int n0 = f.deg_y(), m0 = g.deg_y();
  BiPoly A = f, B = g;
  int s = 1;
  if (A.deg_y() < B.deg_y()) {
    std::swap(A, B);
    if (A.deg_y() % 2 == 1 && B.deg_y() % 2 == 1) s = -s;
  }
  Poly res(K, 'x');
  if (B.deg_y() == 0) {
    res = pow(B.lc_y(), static_cast<unsigned>(A.deg_y()));
  } else {
    Poly gg = Poly::constant(K, 1, 'x');
    Poly h = Poly::constant(K, 1, 'x');
    bool zero = false;
    while (true) {
      const int delta = A.deg_y() - B.deg_y();
      if (A.deg_y() % 2 == 1 && B.deg_y() % 2 == 1) s = -s;
      BiPoly R = pseudo_remainder(A, B);
      A = std::move(B);
      if (R.is_zero()) {
        zero = true;
        break;
      }
      B = divide_x(R, gg * pow(h, static_cast<unsigned>(delta)));
      gg = A.lc_y();
      if (delta > 0) h = *divide_exact(pow(gg, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
      if (B.deg_y() == 0) break;
    }
    if (!zero) {
      const unsigned da = static_cast<unsigned>(A.deg_y());
      res = *divide_exact(pow(B.lc_y(), da), pow(h, da - 1));
    }
  }
  if (s < 0) res = -res;
  // Res_std -> res(f, g) = (-1)^{nm} Res_std(f, g).
  if ((n0 * m0) % 2 == 1) res = -res;
  return res.set_var('x');
}

Poly disc_y(const BiPoly& f) {
  if (!f.is_monic_y()) throw InvalidArgument("disc_y requires a polynomial monic in y");
  const int n = f.deg_y();
  if (n < 1) throw InvalidArgument("disc_y of a polynomial constant in y");
  const Field& K = f.field();
  const std::uint64_t bound = static_cast<std::uint64_t>(2 * n - 1) * std::max(f.deg_x(), 0);
  const Extension& ext = extension_with(K, bound + 1);
  const Field& L = ext.field();
  std::vector<Elem> xs, ys;
  for (Elem tau = 0; xs.size() < bound + 1; ++tau) {
    xs.push_back(tau);
    ys.push_back(discriminant(specialize_x(f, tau, ext)));
  }
  auto r = descend(interpolate(L, xs, ys, 'x'), ext);
  if (!r) throw std::logic_error("disc_y: interpolated discriminant does not descend");
  return *r;
}

bool is_separable_y(const BiPoly& f) {
  if (f.deg_y() < 1) throw InvalidArgument("separability of a polynomial constant in y");
  BiPoly d = derivative_y(f);
  if (d.is_zero()) return false;
  return gcd_y(f, d).deg_y() == 0;
}

BiPoly BiFactorization::expand(const Field& f) const {
  BiPoly r = BiPoly::constant(f, unit);
  for (const auto& [g, e] : factors) r = r * pow(g, e);
  return r;
}

unsigned BiFactorization::omega() const {
  unsigned s = 0;
  for (const auto& fe : factors) s += fe.second;
  return s;
}

BiPoly sample_ensemble(const Field& field, const EnsembleParams& params, Rng& rng) {
  std::vector<Poly> c;
  c.reserve(params.n + 1);
  for (unsigned i = 0; i < params.n; ++i) c.push_back(random_bounded(field, params.d, rng, 'x'));
  c.push_back(Poly::constant(field, 1, 'x'));
  return BiPoly(field, std::move(c));
}

}  // namespace pgff
