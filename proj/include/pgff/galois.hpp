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
#include <string>
#include <utility>
#include <vector>

#include "pgff/bipoly.hpp"
#include "pgff/cycle_type.hpp"
#include "pgff/rng.hpp"
#include "pgff/unipoly.hpp"

namespace pgff {

enum class DiscTag { Zero, Square, ConstantTwist, NonSquare };

struct DiscWitness {
  Elem a;
  Poly t;  ///< disc = a * t^2
};

struct DiscClass {
  DiscTag tag = DiscTag::Zero;
  std::optional<DiscWitness> witness;
};

/// Square class of disc_y(f) in F_q[x]; requires q odd and f monic in y.
DiscClass disc_square_class(const BiPoly& f);

/// A point tau of F_{q^k}, k >= 1.
struct Probe {
  unsigned k = 1;
  Elem tau = 0;
  bool operator==(const Probe&) const = default;
  auto operator<=>(const Probe&) const = default;
};

/// Factorization type of f(tau, y) over F_{q^k}, or nothing when that fiber is
/// not squarefree of full degree.
std::optional<CycleType> frobenius_cycle_type(const BiPoly& f, const Probe& probe);

/// ct has a cycle of prime length l with n/2 < l <= n - 3.
bool jordan_certificate(const CycleType& ct, unsigned n);

/// Probe points in order: all of F_q, then one representative (the smallest code)
/// of every Frobenius orbit of exact degree k in F_{q^k} for k = 2, 3, ...
std::vector<Probe> probe_schedule(const Field& field, std::size_t count);
/// 4 * ceil(log2 n), at least 4.
unsigned default_probe_budget(unsigned n);

enum class VerdictTag { Sn, An, ContainsAn, NotIrreducible, Inseparable, Unknown };

struct ProbeEvidence {
  Probe probe;
  CycleType cycle_type;
  bool certifies = false;
};

struct Verdict {
  VerdictTag tag = VerdictTag::Unknown;
  std::vector<ProbeEvidence> evidence;
  std::optional<DiscClass> disc;
};

/// Galois verdict for f monic in y over F_q(x), q odd, from the given probes
/// (ramified probes are skipped).
Verdict classify_irreducible(const BiPoly& f, const std::vector<Probe>& probes);
/// Same, walking probe_schedule until `budget` unramified probes have been read
/// (budget 0 means default_probe_budget).
Verdict classify_irreducible(const BiPoly& f, unsigned budget = 0);

/// Exact group for deg_y f in {2, 3} from brute-force irreducibility and the
/// explicit quadratic/cubic discriminant formulas.
Verdict galois_oracle_small(const BiPoly& f);

/// lcm of the degrees of the distinct prime factors of c.
unsigned cyclic_order_r(const Poly& c);

enum class SplitCase { CaseA, CaseB, CaseC, Unknown };

struct SplitVerdict {
  SplitCase tag = SplitCase::Unknown;
  unsigned r = 1;
  unsigned m = 0;
  BigInt group_order = 0;  ///< 0 when unknown
};

/// Splitting-field group of f = con_x(f) * g over F_q(x), q odd.
SplitVerdict classify_splitting(const BiPoly& f, unsigned budget = 0);

/// prod_i prod_j (T + f0(tau_i^{q^j}, y)) as a BiPoly whose main variable plays
/// T and whose coefficient variable plays y.
struct NormPoly {
  BiPoly n;
  bool separable = false;  ///< the k*m specialized polynomials are pairwise distinct
};
NormPoly build_norm_poly(const BiPoly& f0, const ProbePoints& probes);

/// F(y, h(y)) for F stored with main variable T and coefficient variable y.
Poly substitute_t(const BiPoly& F, const Poly& h);

struct ChowlaEstimate {
  double value = 0;   ///< S / q^n
  double stderr_ = 0; ///< 0 in exact mode
  std::int64_t sum = 0;       ///< exact S (exact mode only)
  std::uint64_t zeros = 0;    ///< h with F(y, h(y)) = 0
  std::uint64_t samples = 0;
};

/// Sum of lambda(F(y, h(y))) over monic h of degree n, divided by q^n.
ChowlaEstimate chowla_sum_exact(const BiPoly& F, unsigned n, std::uint64_t cap = kDefaultEnumerationCap);
ChowlaEstimate chowla_sum_monte_carlo(const BiPoly& F, unsigned n, std::uint64_t trials, Rng& rng);
/// Exact value of S/q^n for F = T: q^{-n/2} for even n, -q^{-(n-1)/2} for odd n.
double chowla_identity_value(std::uint64_t q, unsigned n);

std::string to_string(DiscTag t);
std::string to_string(VerdictTag t);
std::string to_string(SplitCase t);

}  // namespace pgff
