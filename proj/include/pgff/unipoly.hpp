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
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgff/cycle_type.hpp"
#include "pgff/poly.hpp"
#include "pgff/rng.hpp"

namespace pgff {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// unit * prod factors[i].first ^ factors[i].second, factors monic irreducible,
/// sorted canonically.
struct Factorization {
  Elem unit = 0;
  std::vector<std::pair<Poly, unsigned>> factors;

  Poly expand(const Field& f) const;
  unsigned omega() const;
};

/// Cantor-Zassenhaus factorization; throws InvalidArgument for f = 0.
Factorization factor(const Poly& f, Rng& rng);
/// Same, with a fixed internal seed.
Factorization factor(const Poly& f);

/// (g_i, i) with g_i monic squarefree pairwise coprime and f = lc * prod g_i^i.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f);
/// f = s * t with s squarefree, gcd(s, t) = 1 and every prime of t repeated.
std::pair<Poly, Poly> squarefree_split(const Poly& f);
bool is_squarefree(const Poly& f);

/// For squarefree monic f: (h_d, d) where h_d is the product of the degree-d primes of f.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f);
/// Splits a monic product of distinct degree-d primes into its factors.
std::vector<Poly> equal_degree(const Poly& f, unsigned d, Rng& rng);

bool is_irreducible(const Poly& f);

int mobius(const Poly& g);
int liouville(const Poly& g);
/// Sum of mu(h) over monic h of degree n, by enumeration.
std::int64_t mobius_sum(unsigned n, const Field& field, std::uint64_t cap = kDefaultEnumerationCap);

/// res(f, g) = lc(g)^{deg f} * prod_{g(b)=0} f(b), i.e. the Sylvester determinant
/// with the rows of f first and columns ordered by increasing degree.
Elem resultant(const Poly& f, const Poly& g);
/// Resultant in the leading-coefficient-of-f normalization: lc(f)^{deg g} prod_{f(a)=0} g(a).
Elem resultant_std(const Poly& f, const Poly& g);
/// prod_{i<j} (a_i - a_j)^2 for monic f; throws InvalidArgument otherwise.
Elem discriminant(const Poly& f);

/// (-1)^{deg f} chi(disc f) for monic squarefree f in odd characteristic.
int pellet_predict(const Poly& f);
/// t with t^2 = f, if f is a square.
std::optional<Poly> is_perfect_square(const Poly& f);

CycleType cycle_type_of(const Poly& f);

/// Number of monic irreducibles of degree n over the field.
BigInt count_irreducibles(unsigned n, const Field& field);
int mobius_int(std::uint64_t n);

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap);

/// Calls fn(h) for every monic h of degree n, in code order.
template <class Fn>
void for_each_monic(const Field& field, unsigned n, Fn&& fn, char var = 'y') {
  std::vector<Elem> c(n + 1, 0);
  c[n] = 1;
  const Elem q = field.q();
  while (true) {
    fn(Poly(field, c, var));
    std::size_t i = 0;
    while (i < n) {
      if (++c[i] < q) break;
      c[i] = 0;
      ++i;
    }
    if (i == n) return;
  }
}

/// Calls fn(h) for every h of degree <= d (including 0), in code order.
template <class Fn>
void for_each_bounded(const Field& field, unsigned d, Fn&& fn, char var = 'x') {
  std::vector<Elem> c(d + 1, 0);
  const Elem q = field.q();
  while (true) {
    fn(Poly(field, c, var));
    std::size_t i = 0;
    while (i <= d) {
      if (++c[i] < q) break;
      c[i] = 0;
      ++i;
    }
    if (i > d) return;
  }
}

/// Uniform element of {deg <= d}.
Poly random_bounded(const Field& field, unsigned d, Rng& rng, char var = 'x');

}  // namespace pgff
