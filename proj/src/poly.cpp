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

#include "pgff/poly.hpp"

#include <algorithm>

namespace pgff {

Poly Poly::constant(const Field& f, Elem c, char var) {
  return Poly(f, std::vector<Elem>{c}, var);
}

Poly Poly::monomial(const Field& f, Elem c, std::size_t deg, char var) {
  std::vector<Elem> v(deg + 1, 0);
  v[deg] = c;
  return Poly(f, std::move(v), var);
}

Elem Poly::eval(Elem x) const {
  const Field& f = *field_;
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  const Field& f = *field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  const Field& f = *field_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  return &a.field() == &b.field() && a.coeffs() == b.coeffs();
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator-(const Poly& a) {
  const Field& f = a.field();
  std::vector<Elem> v(a.coeffs());
  for (auto& c : v) c = f.neg(c);
  return Poly(f, std::move(v), a.var());
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(f, a.var());
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> r(x.size() + y.size() - 1, 0);
  if (f.is_prime_field() && std::uint64_t{f.p()} < (1u << 16)) {
    // Accumulate unreduced products; (p-1)^2 * len fits easily in 64 bits.
    std::vector<std::uint64_t> acc(r.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      const std::uint64_t xi = x[i];
      for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] += xi * y[j];
    }
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<Elem>(acc[i] % f.p());
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(x[i], y[j]));
    }
  }
  return Poly(f, std::move(r), a.var());
}

Poly scale(const Poly& a, Elem c) {
  const Field& f = a.field();
  if (c == 0) return Poly(f, a.var());
  std::vector<Elem> v(a.coeffs());
  for (auto& e : v) e = f.mul(e, c);
  return Poly(f, std::move(v), a.var());
}

Poly shift_up(const Poly& a, std::size_t k) {
  if (a.is_zero()) return a;
  std::vector<Elem> v(k, 0);
  v.insert(v.end(), a.coeffs().begin(), a.coeffs().end());
  return Poly(a.field(), std::move(v), a.var());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {Poly(f, a.var()), a};
  std::vector<Elem> r(a.coeffs());
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  const Elem inv_lc = f.inv(b.lc());
  std::vector<Elem> quo(r.size() - db, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    const Elem c = f.mul(r[i], inv_lc);
    quo[i - db] = c;
    const Elem nc = f.neg(c);
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.add(r[i - db + j], f.mul(nc, d[j]));
  }
  r.resize(db);
  return {Poly(f, std::move(quo), a.var()), Poly(f, std::move(r), a.var())};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  auto [quo, rem] = divmod(a, b);
  if (!rem.is_zero()) return std::nullopt;
  return quo;
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(a, a.field().inv(a.lc()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, 1, a.var()), s1(f, a.var());
  Poly t0(f, a.var()), t1 = Poly::constant(f, 1, a.var());
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly s2 = s0 - quo * s1;
    Poly t2 = t0 - quo * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem inv = f.inv(r0.lc());
  return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
}

Poly derivative(const Poly& a) {
  const Field& f = a.field();
  if (a.degree() < 1) return Poly(f, a.var());
  std::vector<Elem> v(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) v[i - 1] = f.mul(a[i], f.from_int(static_cast<std::int64_t>(i % f.p())));
  return Poly(f, std::move(v), a.var());
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(a.field(), 1, a.var()) % m;
  Poly base = a % m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    e >>= 1;
    if (e > 0) base = mul_mod(base, base, m);
  }
  return result;
}

Poly pow(const Poly& a, unsigned e) {
  Poly result = Poly::constant(a.field(), 1, a.var());
  Poly base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly pth_root(const Poly& a) {
  const Field& f = a.field();
  const std::uint32_t p = f.p();
  // c^{1/p} = c^{q/p} in F_q.
  const std::uint64_t root_exp = f.q() / p;
  std::vector<Elem> v;
  for (std::size_t i = 0; i < a.size(); i += p) v.push_back(f.pow(a[i], root_exp));
  return Poly(f, std::move(v), a.var());
}

Poly taylor_shift(const Poly& a, Elem theta) {
  if (theta == 0 || a.degree() < 1) return a;
  const Field& f = a.field();
  std::vector<Elem> c(a.coeffs());
  const std::size_t n = c.size();
  // Repeated synthetic division by (var - theta) in place.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] = f.add(c[j - 1], f.mul(theta, c[j]));
  }
  return Poly(f, std::move(c), a.var());
}

Poly truncate(const Poly& a, std::size_t n) {
  if (a.size() <= n) return a;
  return Poly(a.field(), std::vector<Elem>(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(n)),
              a.var());
}

Poly interpolate(const Field& f, const std::vector<Elem>& xs, const std::vector<Elem>& ys, char var) {
  const std::size_t n = xs.size();
  // Newton divided differences, then Horner expansion.
  std::vector<Elem> dd(ys);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = f.div(f.sub(dd[i], dd[i - 1]), f.sub(xs[i], xs[i - j]));
    }
  }
  std::vector<Elem> c;
  for (std::size_t i = n; i-- > 0;) {
    // c = c * (X - xs[i]) + dd[i]
    std::vector<Elem> next(c.size() + 1, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = f.add(next[k + 1], c[k]);
      next[k] = f.sub(next[k], f.mul(c[k], xs[i]));
    }
    next[0] = f.add(next[0], dd[i]);
    c = std::move(next);
  }
  return Poly(f, std::move(c), var);
}

Poly embed(const Poly& a, const Extension& ext) {
  std::vector<Elem> v(a.coeffs());
  for (auto& c : v) c = ext.embed(c);
  return Poly(ext.field(), std::move(v), a.var());
}

std::optional<Poly> descend(const Poly& a, const Extension& ext) {
  std::vector<Elem> v(a.coeffs());
  for (auto& c : v) {
    auto d = ext.descend(c);
    if (!d) return std::nullopt;
    c = *d;
  }
  return Poly(ext.base(), std::move(v), a.var());
}

Poly frobenius_coeffs(const Poly& a, const Extension& ext) {
  std::vector<Elem> v(a.coeffs());
  for (auto& c : v) c = ext.frobenius(c);
  return Poly(ext.field(), std::move(v), a.var());
}

std::string to_string(const Poly& a) {
  if (a.is_zero()) return "0";
  const Field& K = a.field();
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    const Elem c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string coef = K.to_string(c);
    if (!K.is_monomial_elem(c)) coef = "(" + coef + ")";
    if (i == 0) {
      out += coef;
      continue;
    }
    if (c != 1) out += coef + "*";
    out += a.var();
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace pgff
