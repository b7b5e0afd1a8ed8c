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

#include "pgff/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "pgff/poly.hpp"

namespace pgff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

std::recursive_mutex& registry_mutex() {
  static std::recursive_mutex m;
  return m;
}

// Rabin's test for a monic polynomial over F_p.
bool irreducible_over_prime(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  const Field& fp = Field::make(p);
  Poly f(fp, std::vector<Elem>(coeffs.begin(), coeffs.end()), 't');
  const unsigned k = static_cast<unsigned>(f.degree());
  if (k == 1) return true;
  Poly x = Poly::variable(fp, 't');
  std::vector<Poly> frob{x};
  Poly h = x;
  for (unsigned i = 1; i <= k; ++i) {
    h = pow_mod(h, p, f);
    frob.push_back(h);
  }
  if (!(frob[k] - x).is_zero()) return false;
  for (auto r : prime_factors(k)) {
    if (!gcd(frob[k / r] - x, f).is_one()) return false;
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned k) {
  // Enumerate (c_0, ..., c_{k-1}) with c_0 most significant; c_0 = 0 is divisible by t.
  std::vector<std::uint32_t> c(k + 1, 0);
  c[k] = 1;
  c[0] = 1;
  while (true) {
    if (irreducible_over_prime(c, p)) return c;
    std::size_t i = k;
    while (i-- > 0) {
      if (++c[i] < p) break;
      c[i] = 0;
    }
    if (c[0] == 0) throw InvalidArgument("no irreducible polynomial found");
  }
}

}  // namespace

const Field& Field::make(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidArgument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > (std::uint64_t{1} << 31)) throw InvalidArgument("field too large");
  }
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (k == 1) throw InvalidArgument("modulus given for a prime field");
    if (mod.size() != k + 1) throw InvalidArgument("modulus must have degree k");
    if (mod.back() != 1) throw InvalidArgument("modulus must be monic");
    for (auto c : mod) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    }
  }

  std::lock_guard lock(registry_mutex());
  static std::map<std::tuple<std::uint32_t, unsigned, std::vector<std::uint32_t>>, std::unique_ptr<Field>> fields;
  static std::map<std::pair<std::uint32_t, unsigned>, std::vector<std::uint32_t>> defaults;
  if (k > 1 && !modulus) {
    auto key = std::make_pair(p, k);
    auto it = defaults.find(key);
    if (it == defaults.end()) it = defaults.emplace(key, default_modulus(p, k)).first;
    mod = it->second;
  }
  auto key = std::make_tuple(p, k, mod);
  if (auto it = fields.find(key); it != fields.end()) return *it->second;
  if (k > 1 && modulus && !irreducible_over_prime(mod, p)) throw InvalidArgument("modulus is reducible");
  std::unique_ptr<Field> f(new Field(p, k, mod));
  const Field& ref = *f;
  fields.emplace(key, std::move(f));
  return ref;
}

Field::Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < k; ++i) q_ *= p;
  if (k_ > 1) build_tables();
}

void Field::build_tables() {
  if (q_ > (1u << 16)) return;
  const std::uint32_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem a = 2; a < q_; ++a) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(a, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = a;
      break;
    }
  }
  if (q_ == 2) g = 1;
  exp_.assign(2 * std::size_t{order}, 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = i;
    x = slow_mul(x, g);
  }
  if (p_ != 2) {
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) neg_table_[a] = digit_neg(a);
    if (q_ <= 1024) {
      add_table_.resize(std::size_t{q_} * q_);
      for (Elem a = 0; a < q_; ++a) {
        for (Elem b = 0; b < q_; ++b) add_table_[std::size_t{a} * q_ + b] = static_cast<std::uint16_t>(digit_add(a, b));
      }
    }
  }
}

Elem Field::digit_add(Elem a, Elem b) const {
  Elem r = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

Elem Field::digit_neg(Elem a) const {
  Elem r = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

Elem Field::slow_mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
  const auto x = coords(a);
  const auto y = coords(b);
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
  }
  for (std::size_t i = prod.size(); i-- > k_;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
    prod[i] = 0;
  }
  Elem r = 0, place = 1;
  for (unsigned i = 0; i < k_; ++i) {
    r += static_cast<Elem>(prod[i]) * place;
    place *= p_;
  }
  return r;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::from_coords(std::span<const std::uint32_t> c) const {
  if (c.size() > k_) throw InvalidArgument("too many coordinates for field element");
  Elem r = 0, place = 1;
  for (auto v : c) {
    if (v >= p_) throw InvalidArgument("coordinate out of range");
    r += v * place;
    place *= p_;
  }
  return r;
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
  std::vector<std::uint32_t> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  if (k_ == 1) {
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      const std::int64_t quo = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - quo * nt);
      std::tie(r, nr) = std::make_pair(nr, r - quo * nr);
    }
    return from_int(t);
  }
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  e %= (q_ - 1);
  if (e == 0) e = q_ - 1;
  if (!exp_.empty()) return exp_[(std::uint64_t{log_[a]} * e) % (q_ - 1)];
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, unsigned j, std::uint64_t base_q) const {
  if (a == 0 || q_ == 2) return a;
  if (base_q == 0) base_q = p_;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < j; ++i) e = (e * (base_q % (q_ - 1))) % (q_ - 1);
  return pow(a, e == 0 ? q_ - 1 : e);
}

int Field::quadratic_character(Elem a) const {
  if (p_ == 2) throw Unsupported("quadratic character in characteristic 2");
  if (a == 0) return 0;
  return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<Elem> Field::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (p_ == 2) return pow(a, q_ / 2);
  if (quadratic_character(a) != 1) return std::nullopt;
  // Tonelli-Shanks.
  std::uint64_t t = q_ - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Elem z = 2;
  while (quadratic_character(z) != -1) ++z;
  Elem c = pow(z, t);
  Elem x = pow(a, (t + 1) / 2);
  Elem b = pow(a, t);
  unsigned m = s;
  while (b != 1) {
    unsigned i = 0;
    Elem bb = b;
    while (bb != 1) {
      bb = mul(bb, bb);
      ++i;
    }
    Elem w = c;
    for (unsigned j = 0; j + 1 < m - i; ++j) w = mul(w, w);
    x = mul(x, w);
    c = mul(w, w);
    b = mul(b, c);
    m = i;
  }
  return std::min(x, neg(x));
}

std::string Field::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto c = coords(a);
  std::string out;
  for (std::size_t i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

bool Field::is_monomial_elem(Elem a) const {
  if (k_ == 1) return true;
  const auto c = coords(a);
  return std::count_if(c.begin(), c.end(), [](std::uint32_t v) { return v != 0; }) <= 1;
}

const Extension& Extension::of(const Field& base, unsigned degree) {
  if (degree == 0) throw InvalidArgument("extension degree must be at least 1");
  std::lock_guard lock(registry_mutex());
  static std::map<std::pair<const Field*, unsigned>, std::unique_ptr<Extension>> table;
  auto key = std::make_pair(&base, degree);
  if (auto it = table.find(key); it != table.end()) return *it->second;
  const Field& big = degree == 1 ? base : Field::make(base.p(), base.k() * degree);
  std::unique_ptr<Extension> ext(new Extension(base, big, degree));
  const Extension& ref = *ext;
  table.emplace(key, std::move(ext));
  return ref;
}

Extension::Extension(const Field& base, const Field& big, unsigned degree)
    : base_(&base), big_(&big), degree_(degree) {
  embed_.resize(base.q());
  if (base.is_prime_field() || degree == 1) {
    for (Elem a = 0; a < base.q(); ++a) embed_[a] = a;
  } else {
    const auto& m = base.modulus();
    Elem beta = 0;
    for (Elem b = 0; b < big.q(); ++b) {
      Elem acc = 0;
      for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, b), m[i]);
      if (acc == 0) {
        beta = b;
        break;
      }
    }
    std::vector<Elem> powers(base.k());
    powers[0] = 1;
    for (unsigned i = 1; i < base.k(); ++i) powers[i] = big.mul(powers[i - 1], beta);
    for (Elem a = 0; a < base.q(); ++a) {
      const auto c = base.coords(a);
      Elem v = 0;
      for (unsigned i = 0; i < base.k(); ++i) v = big.add(v, big.mul(c[i], powers[i]));
      embed_[a] = v;
    }
  }
  if (!(base.is_prime_field() || degree == 1)) {
    for (Elem a = 0; a < base.q(); ++a) descend_.emplace(embed_[a], a);
  }
}

std::optional<Elem> Extension::descend(Elem a) const {
  if (base_->is_prime_field() || degree_ == 1) {
    if (a < base_->q()) return a;
    return std::nullopt;
  }
  auto it = descend_.find(a);
  if (it == descend_.end()) return std::nullopt;
  return it->second;
}

Elem Extension::frobenius(Elem a, unsigned j) const { return big_->frobenius(a, j, base_->q()); }

unsigned Extension::element_degree(Elem a) const {
  Elem b = a;
  for (unsigned d = 1; d <= degree_; ++d) {
    b = frobenius(b);
    if (b == a) return d;
  }
  return degree_;
}

unsigned power_span_rank(const Extension& ext, Elem tau, unsigned d) {
  const Field& big = ext.field();
  const Field& base = ext.base();
  const std::uint32_t p = big.p();
  const Elem beta = ext.embed(base.generator());
  std::vector<std::vector<std::uint32_t>> rows;
  Elem tp = 1;
  for (unsigned i = 0; i <= d; ++i) {
    Elem bj = 1;
    for (unsigned j = 0; j < base.k(); ++j) {
      rows.push_back(big.coords(big.mul(bj, tp)));
      bj = big.mul(bj, beta);
    }
    tp = big.mul(tp, tau);
  }
  const Field& fp = Field::make(p);
  unsigned rank = 0;
  const std::size_t cols = big.k();
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Elem inv = fp.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = fp.mul(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Elem factor = rows[r][col];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] = fp.sub(rows[r][c], fp.mul(factor, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

ProbePoints find_probe_points(const Field& base, unsigned k, unsigned d, unsigned m) {
  if (!is_prime(k)) throw InvalidArgument("probe extension degree must be prime");
  if (k <= d) throw InvalidArgument("probe extension degree must exceed the degree bound");
  const Extension& ext = Extension::of(base, k);
  const Field& big = ext.field();
  ProbePoints out{&ext, {}};
  if (m == 0) return out;
  std::set<Elem> seen;
  for (Elem tau = 0; tau < big.q(); ++tau) {
    if (seen.count(tau)) continue;
    if (ext.element_degree(tau) != k) continue;
    Elem c = tau;
    for (unsigned j = 0; j < k; ++j) {
      seen.insert(c);
      c = ext.frobenius(c);
    }
    if (power_span_rank(ext, tau, d) != (d + 1) * base.k()) continue;
    out.points.push_back(tau);
    if (out.points.size() == m) return out;
  }
  throw InvalidArgument("not enough probe orbits in the extension");
}

}  // namespace pgff
