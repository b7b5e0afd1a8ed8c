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
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgff/cycle_type.hpp"
#include "pgff/field.hpp"
#include "pgff/rng.hpp"
#include "pgff/unipoly.hpp"

namespace pgff {

using Rational = boost::multiprecision::cpp_rational;

/// Exact distribution on cycle types of size n, restricted to lengths >= r.
struct CycleDist {
  unsigned n = 0;
  unsigned r = 1;
  std::map<CycleType, Rational> mass;
  std::string source;  ///< "exact-cauchy", "exact-combinatorial", "exact-exhaustive", "push-forward"

  Rational total() const;
  std::map<CycleType, double> to_double() const;
};

/// Sampled counts on cycle types of size n, restricted to lengths >= r.
struct CycleHistogram {
  unsigned n = 0;
  unsigned r = 1;
  std::map<CycleType, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const CycleType& ct, std::uint64_t c = 1);
  void merge(const CycleHistogram& o);
  std::map<CycleType, double> to_double() const;
};

/// Cycle type of a uniform permutation of S_n, built cycle by cycle.
CycleType sample_perm_cycle_type(unsigned n, Rng& rng);
/// Factorization type of a uniform monic polynomial of degree n.
CycleType sample_poly_cycle_type(const Field& field, unsigned n, Rng& rng);

/// Factorization type of a nonconstant f in F_2[y] given as a bit mask (bit i = coefficient of y^i).
CycleType cycle_type_gf2(std::uint64_t f);

inline constexpr unsigned kMaxExactPermN = 30;

/// Cauchy's formula 1 / prod i^{m_i} m_i!; n <= kMaxExactPermN.
CycleDist exact_perm_cycle_dist(unsigned n);

enum class PolyDistMethod { Combinatorial, Exhaustive };
/// Exact X_n: combinatorially from irreducible counts, or by factoring all q^n monic polynomials.
CycleDist exact_poly_cycle_dist(unsigned n, const Field& field, PolyDistMethod method = PolyDistMethod::Combinatorial,
                                std::uint64_t cap = kDefaultEnumerationCap);

/// Push-forward under restriction to lengths >= r.
CycleDist push_forward(const CycleDist& d, unsigned r);

/// Half the L1 distance; throws InvalidArgument if the scopes (n, r) differ.
Rational tv_distance(const CycleDist& a, const CycleDist& b);
double tv_distance(const CycleHistogram& a, const CycleHistogram& b);
double tv_distance(const CycleDist& a, const CycleHistogram& b);
/// Half the L1 distance of two probability maps.
double tv_distance(const std::map<CycleType, double>& a, const std::map<CycleType, double>& b);

struct ChiSquare {
  double statistic = 0;
  unsigned dof = 0;
  double p_value = 1;
};
/// Pearson goodness of fit of observed counts against an exact distribution.
ChiSquare chi_square(const CycleHistogram& observed, const CycleDist& expected);

}  // namespace pgff
