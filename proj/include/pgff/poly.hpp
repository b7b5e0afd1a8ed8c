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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgff/field.hpp"

namespace pgff {

/// Dense univariate polynomial over a finite field, low degree first.
/// Always trimmed: the leading coefficient is nonzero unless the polynomial is 0.
class Poly {
 public:
  explicit Poly(const Field& f, char var = 'y') : field_(&f), var_(var) {}
  Poly(const Field& f, std::vector<Elem> coeffs, char var = 'y')
      : field_(&f), c_(std::move(coeffs)), var_(var) {
    trim();
  }

  static Poly constant(const Field& f, Elem c, char var = 'y');
  static Poly monomial(const Field& f, Elem c, std::size_t deg, char var = 'y');
  /// The polynomial "var".
  static Poly variable(const Field& f, char var = 'y') { return monomial(f, 1, 1, var); }

  const Field& field() const { return *field_; }
  char var() const { return var_; }
  Poly& set_var(char v) {
    var_ = v;
    return *this;
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lc() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Elem>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

  Elem eval(Elem x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const Field* field_;
  std::vector<Elem> c_;
  char var_;
};

bool operator==(const Poly& a, const Poly& b);
/// Canonical order: by degree, then coefficients from the top down by code.
std::strong_ordering operator<=>(const Poly& a, const Poly& b);

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Elem c);
/// a * var^k
Poly shift_up(const Poly& a, std::size_t k);

/// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Quotient when b divides a, nothing otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

Poly monic(const Poly& a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtGcd {
  Poly g, s, t;  ///< s*a + t*b = g, g monic
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

Poly derivative(const Poly& a);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m);
Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& m);
Poly pow(const Poly& a, unsigned e);
/// g with g^p = a; requires derivative(a) = 0.
Poly pth_root(const Poly& a);
/// a(var + theta)
Poly taylor_shift(const Poly& a, Elem theta);
/// Truncate to degree < n.
Poly truncate(const Poly& a, std::size_t n);

/// The polynomial of degree < xs.size() through (xs[i], ys[i]); xs distinct.
Poly interpolate(const Field& f, const std::vector<Elem>& xs, const std::vector<Elem>& ys, char var = 'x');

Poly embed(const Poly& a, const Extension& ext);
/// Coefficientwise preimage; nothing if some coefficient lies outside the base.
std::optional<Poly> descend(const Poly& a, const Extension& ext);
/// Coefficientwise relative Frobenius c -> c^{|base|}.
Poly frobenius_coeffs(const Poly& a, const Extension& ext);

/// Highest degree first, e.g. "y^2+2*y+1"; "0" for the zero polynomial.
std::string to_string(const Poly& a);

}  // namespace pgff
