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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgff/errors.hpp"

namespace pgff {

/// Element of a finite field, stored as its power-basis coordinates packed
/// base p: code = sum_i c_i p^i where the element is sum_i c_i t^i.
/// For prime fields the code is the residue itself.
using Elem = std::uint32_t;

/// The finite field F_{p^k} = F_p[t]/(modulus).
///
/// Fields are interned: `Field::make` returns a reference that stays valid for
/// the lifetime of the process, and two calls with the same (p, k, modulus)
/// return the same object. Field objects are immutable after construction, so
/// they can be shared freely across threads.
///
/// Small extension fields (q <= 2^16) additionally cache exp/log tables for
/// multiplication; this is an internal acceleration, the element encoding is
/// always the power basis.
class Field {
 public:
  /// Validates p (prime) and, for k > 1, the modulus (monic, degree k,
  /// irreducible). Without a modulus the lexicographically smallest monic
  /// irreducible is used, comparing coefficients low-to-high.
  static const Field& make(std::uint32_t p, unsigned k = 1,
                           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return k_ == 1; }
  /// Monic modulus, low-to-high, k+1 entries. Empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of t (for prime fields, 1).
  Elem generator() const { return k_ == 1 ? 1 : p_; }
  Elem from_int(std::int64_t v) const;
  Elem from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Elem a) const;

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      const std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return digit_add(a, b);
  }
  Elem neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    if (!neg_table_.empty()) return neg_table_[a];
    return digit_neg(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    if (!exp_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[std::size_t{log_[a]} + log_[b]];
    }
    return slow_mul(a, b);
  }
  /// Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// a^{base_q^j}. With the default base_q = p this is the absolute Frobenius.
  Elem frobenius(Elem a, unsigned j, std::uint64_t base_q = 0) const;

  /// Quadratic character: 0, 1 (nonzero square) or -1. Throws Unsupported in
  /// characteristic 2.
  int quadratic_character(Elem a) const;
  /// A square root with the smaller code of the two, when one exists.
  std::optional<Elem> sqrt(Elem a) const;

  /// t-polynomial rendering, e.g. "2*t^2+t+1"; prime fields print the residue.
  std::string to_string(Elem a) const;
  /// Whether to_string(a) is a single term (no '+').
  bool is_monomial_elem(Elem a) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);
  void build_tables();

  Elem digit_add(Elem a, Elem b) const;
  Elem digit_neg(Elem a) const;
  Elem slow_mul(Elem a, Elem b) const;

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> add_table_;
  std::vector<Elem> neg_table_;
};

inline bool operator==(const Field& a, const Field& b) { return &a == &b; }

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// F_{q^s} over a base F_q, with an explicit embedding of the base.
///
/// The big field is F_{p^{ks}} with its default modulus; the base generator
/// maps to the smallest-code root of the base modulus. Interned like Field.
class Extension {
 public:
  static const Extension& of(const Field& base, unsigned degree);

  const Field& base() const { return *base_; }
  const Field& field() const { return *big_; }
  unsigned degree() const { return degree_; }

  Elem embed(Elem a) const { return embed_[a]; }
  /// Preimage of a base-field element, or nothing if a lies outside the base.
  std::optional<Elem> descend(Elem a) const;
  /// a^{|base|^j}.
  Elem frobenius(Elem a, unsigned j = 1) const;
  /// Degree of a over the base field (size of its Frobenius orbit).
  unsigned element_degree(Elem a) const;

  Extension(const Extension&) = delete;
  Extension& operator=(const Extension&) = delete;

 private:
  Extension(const Field& base, const Field& big, unsigned degree);

  const Field* base_;
  const Field* big_;
  unsigned degree_;
  std::vector<Elem> embed_;
  std::unordered_map<Elem, Elem> descend_;
};

/// Evaluation points for norm polynomials: m pairwise non-conjugate elements of
/// F_{q^k} outside F_q whose powers 1..tau^d are F_q-independent.
struct ProbePoints {
  const Extension* ext;
  std::vector<Elem> points;
};

/// Requires k prime and k > d; throws InvalidArgument otherwise or when fewer
/// than m Frobenius orbits of degree-k elements exist.
ProbePoints find_probe_points(const Field& base, unsigned k, unsigned d, unsigned m);

/// Rank over F_p of the coordinate vectors of {beta^j tau^i : i <= d, j < k_base},
/// i.e. (dimension over F_q of span{1, tau, ..., tau^d}) * k_base.
unsigned power_span_rank(const Extension& ext, Elem tau, unsigned d);

}  // namespace pgff
