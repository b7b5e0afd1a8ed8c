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
#include <utility>
#include <vector>

#include "pgff/poly.hpp"
#include "pgff/rng.hpp"
#include "pgff/unipoly.hpp"

namespace pgff {

/// f in F_q[x][y], stored as its y-coefficients (polynomials in x), low degree first.
/// Always trimmed.
class BiPoly {
 public:
  explicit BiPoly(const Field& f) : field_(&f) {}
  BiPoly(const Field& f, std::vector<Poly> coeffs_y);

  /// c(y) viewed in F_q[x][y].
  static BiPoly from_y(const Poly& c);
  /// a(x) viewed in F_q[x][y].
  static BiPoly from_x(const Poly& a);
  static BiPoly constant(const Field& f, Elem c);
  /// c * x^i * y^j
  static BiPoly monomial(const Field& f, Elem c, unsigned i, unsigned j);

  const Field& field() const { return *field_; }
  int deg_y() const { return static_cast<int>(c_.size()) - 1; }
  int deg_x() const;
  bool is_zero() const { return c_.empty(); }
  /// Constant in both variables (including 0).
  bool is_constant() const { return c_.size() <= 1 && deg_x() <= 0; }
  const std::vector<Poly>& coeffs() const { return c_; }
  /// y^j coefficient; zero beyond the degree.
  Poly coeff(std::size_t j) const { return j < c_.size() ? c_[j] : Poly(*field_, 'x'); }
  /// Coefficient of x^i y^j.
  Elem at(std::size_t i, std::size_t j) const { return j < c_.size() ? c_[j][i] : 0; }
  const Poly& lc_y() const { return c_.back(); }
  bool is_monic_y() const { return !c_.empty() && c_.back().is_one(); }

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const Field* field_;
  std::vector<Poly> c_;
};

bool operator==(const BiPoly& a, const BiPoly& b);
/// Canonical order: deg_y, then y-coefficients from the top down in Poly order.
std::strong_ordering operator<=>(const BiPoly& a, const BiPoly& b);

BiPoly operator+(BiPoly a, const BiPoly& b);
BiPoly operator-(BiPoly a, const BiPoly& b);
BiPoly operator-(const BiPoly& a);
BiPoly operator*(const BiPoly& a, const BiPoly& b);
BiPoly scale(const BiPoly& a, Elem c);
/// a(x) * f
BiPoly mul_x(const BiPoly& f, const Poly& a);
BiPoly pow(const BiPoly& f, unsigned e);

/// Quotient in F_q[x][y] when b divides a exactly.
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);
/// Divides every y-coefficient by a(x); requires exactness.
BiPoly divide_x(const BiPoly& f, const Poly& a);
/// lc_y(b)^{deg a - deg b + 1} a mod b.
BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b);

BiPoly derivative_y(const BiPoly& f);
BiPoly derivative_x(const BiPoly& f);
/// Exchanges the roles of x and y; an involution.
BiPoly swap_vars(const BiPoly& f);

/// Monic gcd in F_q[y] of the coefficients of f regrouped as a polynomial in x.
Poly content_x(const BiPoly& f);
/// Monic gcd in F_q[x] of the y-coefficients of f.
Poly content_y(const BiPoly& f);
/// f = c(y) * g with c = content_x(f).
std::pair<Poly, BiPoly> primitive_decompose(const BiPoly& f);
/// f divided by its y-content.
BiPoly primitive_part_y(const BiPoly& f);

/// f(tau, y) over the field of tau.
Poly specialize_x(const BiPoly& f, Elem tau);
/// f(tau, y) for tau in ext.field().
Poly specialize_x(const BiPoly& f, Elem tau, const Extension& ext);
/// f(x + theta, y)
BiPoly shift_x(const BiPoly& f, Elem theta);
/// Drops all x^i with i >= n.
BiPoly truncate_x(const BiPoly& f, std::size_t n);

BiPoly embed(const BiPoly& f, const Extension& ext);
std::optional<BiPoly> descend(const BiPoly& f, const Extension& ext);
BiPoly frobenius_coeffs(const BiPoly& f, const Extension& ext);

/// Primitive gcd in F_q[x][y] (y-content removed, lc_y made monic in x).
BiPoly gcd_y(const BiPoly& a, const BiPoly& b);

/// res_y(f, g) in the same convention as the univariate resultant, by
/// evaluation and interpolation at points of F_q or the smallest extension
/// with enough good points.
Poly resultant_y(const BiPoly& f, const BiPoly& g);
/// Same value through the subresultant pseudo-remainder sequence over F_q[x].
Poly resultant_y_subresultant(const BiPoly& f, const BiPoly& g);
/// disc_y of a monic-in-y f, as a polynomial in x.
Poly disc_y(const BiPoly& f);
/// gcd(f, df/dy) is constant in y.
bool is_separable_y(const BiPoly& f);

struct BiFactorization {
  Elem unit = 0;
  /// Irreducible factors normalized so that lc_y is monic in x, sorted canonically.
  std::vector<std::pair<BiPoly, unsigned>> factors;

  BiPoly expand(const Field& f) const;
  unsigned omega() const;
};

/// Complete factorization in F_q[x, y]; throws InvalidArgument for constant input.
BiFactorization factor_bivariate(const BiPoly& f, Rng& rng);
BiFactorization factor_bivariate(const BiPoly& f);
/// Irreducible in F_q[x, y] (equivalently over F_q(x) when primitive).
bool is_irreducible_bivariate(const BiPoly& f);

/// Brute-force factorization of a monic-in-y f: searches monic-in-y divisors of
/// each y-degree k with x-degree at most deg_x(f). Throws CapExceeded when a
/// search would exceed `cap` candidates.
BiFactorization factor_bivariate_oracle(const BiPoly& f, std::uint64_t cap = kDefaultEnumerationCap);

enum class BoxMode { Small, Large };

struct EnsembleParams {
  unsigned n = 1;
  unsigned d = 0;
  BoxMode mode = BoxMode::Small;
};

/// y^n + sum_{i<n} a_i(x) y^i with each a_i uniform of degree <= d.
BiPoly sample_ensemble(const Field& field, const EnsembleParams& params, Rng& rng);

/// Calls fn(f) for every monic-in-y f of y-degree n with coefficients of degree <= d.
template <class Fn>
void for_each_ensemble(const Field& field, unsigned n, unsigned d, Fn&& fn) {
  const std::size_t slots = std::size_t{n} * (d + 1);
  std::vector<Elem> digits(slots, 0);
  const Elem q = field.q();
  while (true) {
    std::vector<Poly> coeffs;
    coeffs.reserve(n + 1);
    for (unsigned i = 0; i < n; ++i) {
      coeffs.emplace_back(field, std::vector<Elem>(digits.begin() + i * (d + 1), digits.begin() + (i + 1) * (d + 1)),
                          'x');
    }
    coeffs.push_back(Poly::constant(field, 1, 'x'));
    fn(BiPoly(field, std::move(coeffs)));
    std::size_t i = 0;
    while (i < slots) {
      if (++digits[i] < q) break;
      digits[i] = 0;
      ++i;
    }
    if (i == slots) return;
  }
}

}  // namespace pgff
