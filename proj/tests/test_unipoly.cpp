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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pgff/unipoly.hpp"

using namespace pgff;

namespace {

Poly P(const Field& K, std::vector<Elem> c) { return Poly(K, std::move(c)); }

// Monic polynomials of every degree with q^deg <= limit.
template <class Fn>
void for_each_small(const Field& K, std::uint64_t limit, Fn fn, unsigned min_deg = 1) {
  std::uint64_t size = 1;
  for (unsigned n = 1;; ++n) {
    size *= K.q();
    if (size > limit) break;
    if (n < min_deg) continue;
    for_each_monic(K, n, fn);
  }
}

}  // namespace

TEST_CASE("factor examples") {
  const Field& f2 = Field::make(2);
  const Field& f3 = Field::make(3);
  auto fa = factor(P(f2, {0, 1, 1}));
  REQUIRE(fa.factors.size() == 2);
  CHECK(fa.factors[0].first == P(f2, {0, 1}));
  CHECK(fa.factors[1].first == P(f2, {1, 1}));
  auto fb = factor(P(f2, {1, 0, 1}));
  REQUIRE(fb.factors.size() == 1);
  CHECK(fb.factors[0] == std::pair{P(f2, {1, 1}), 2u});
  auto fc = factor(P(f3, {1, 0, 1}));
  REQUIRE(fc.factors.size() == 1);
  CHECK(fc.factors[0].second == 1);
  CHECK_THROWS_AS(factor(Poly(f3)), InvalidArgument);
  auto unit = factor(P(f3, {2, 0, 2}));
  CHECK(unit.unit == 2);
  CHECK(unit.expand(f3) == P(f3, {2, 0, 2}));
}

TEST_CASE("factorization reconstructs and agrees with trial division") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {3u, 2u}, {7u, 1u}}) {
    const Field& K = Field::make(p, k);
    Rng rng(p * 100 + k);
    for_each_small(K, 10000, [&](const Poly& f) {
      auto fa = factor(f, rng);
      CHECK(fa.expand(K) == f);
      std::map<std::vector<Elem>, unsigned> got;
      for (const auto& [g, e] : fa.factors) {
        CHECK(g.is_monic());
        CHECK(oracle::irreducible_by_trial(g));
        got[g.coeffs()] += e;
      }
      CHECK(got == oracle::factor_by_trial(f));
    });
  }
}

TEST_CASE("factorization of random polynomials of larger degree") {
  for (auto [p, k, n] : {std::tuple{2u, 1u, 40u}, {3u, 1u, 30u}, {101u, 1u, 12u}, {3u, 3u, 10u}, {2u, 5u, 12u},
                         {65537u, 1u, 6u}, {3u, 11u, 4u}}) {
    const Field& K = Field::make(p, k);
    Rng rng(n);
    for (int trial = 0; trial < 20; ++trial) {
      Poly f = random_bounded(K, n, rng, 'y');
      if (f.is_zero()) continue;
      Poly sq = f * f * random_bounded(K, 3, rng, 'y');
      for (const Poly& g : {f, sq}) {
        if (g.is_zero()) continue;
        auto fa = factor(g, rng);
        CHECK(fa.expand(K) == g);
        for (const auto& [h, e] : fa.factors) CHECK(is_irreducible(h));
      }
    }
  }
}

TEST_CASE("squarefree split") {
  const Field& f3 = Field::make(3);
  auto [s, t] = squarefree_split(P(f3, {0, 0, 1}) * P(f3, {1, 1}));
  CHECK(s == P(f3, {1, 1}));
  CHECK(t == P(f3, {0, 0, 1}));
  auto [s2, t2] = squarefree_split(P(f3, {1, 0, 1}));
  CHECK(s2 == P(f3, {1, 0, 1}));
  CHECK(t2.is_one());
  auto [s3, t3] = squarefree_split(P(f3, {1, 2, 1}));
  CHECK(s3.is_one());
  CHECK(t3 == P(f3, {1, 2, 1}));
  for_each_small(Field::make(2), 4096, [](const Poly& f) {
    auto [a, b] = squarefree_split(f);
    CHECK(a * b == f);
    CHECK(gcd(a, b).is_one());
    CHECK(is_squarefree(a));
    for (const auto& [c, e] : oracle::factor_by_trial(b)) CHECK(e >= 2);
  });
}

TEST_CASE("squarefree decomposition handles p-th powers") {
  const Field& f3 = Field::make(3);
  Poly y1 = P(f3, {1, 1});
  Poly y2 = P(f3, {1, 0, 1});
  Poly f = pow(y1, 3) * pow(y2, 4) * P(f3, {0, 1});
  auto dec = squarefree_decomposition(f);
  std::map<unsigned, Poly> by_mult;
  for (auto& [g, e] : dec) by_mult.emplace(e, g);
  CHECK(by_mult.at(1) == P(f3, {0, 1}));
  CHECK(by_mult.at(3) == y1);
  CHECK(by_mult.at(4) == y2);
}

TEST_CASE("mobius and liouville") {
  const Field& f3 = Field::make(3);
  const Field& f2 = Field::make(2);
  CHECK(mobius(P(f3, {0, 1})) == -1);
  CHECK(mobius(P(f3, {0, 1, 1})) == 1);
  CHECK(mobius(P(f3, {1, 2, 1})) == 0);
  CHECK(liouville(P(f3, {0, 0, 1})) == 1);
  CHECK(liouville(P(f2, {1, 1, 0, 1})) == -1);
  CHECK(liouville(P(f3, {0, 1}) * P(f3, {1, 1})) == 1);
  CHECK_THROWS_AS(mobius(Poly(f3)), InvalidArgument);
}

TEST_CASE("mobius equals liouville on squarefree input and matches trial division") {
  for (unsigned p : {2u, 3u, 5u}) {
    const Field& K = Field::make(p);
    for_each_small(K, 10000, [&](const Poly& f) {
      const int mu = mobius(f);
      CHECK(mu == oracle::mobius_by_trial(f));
      if (mu != 0) CHECK(mu == liouville(f));
    });
  }
}

TEST_CASE("mobius sum examples and cap") {
  const Field& f3 = Field::make(3);
  CHECK(mobius_sum(0, f3) == 1);
  CHECK(mobius_sum(1, f3) == -3);
  for (unsigned p : {2u, 3u, 5u}) CHECK(mobius_sum(2, Field::make(p)) == 0);
  CHECK_THROWS_AS(mobius_sum(9, Field::make(5)), CapExceeded);
}

TEST_CASE("resultant examples") {
  const Field& f7 = Field::make(7);
  for (Elem a = 0; a < 7; ++a) {
    for (Elem b = 0; b < 7; ++b) {
      CHECK(resultant(P(f7, {f7.neg(a), 1}), P(f7, {f7.neg(b), 1})) == f7.sub(b, a));
    }
  }
  Poly f = P(f7, {3, 1, 4, 1});
  CHECK(resultant(f, Poly::constant(f7, 5)) == f7.pow(5, 3));
  const Field& f3 = Field::make(3);
  CHECK(resultant(P(f3, {1, 0, 1}), P(f3, {1, 1})) == 2);
  CHECK_THROWS_AS(resultant(Poly(f3), Poly(f3)), InvalidArgument);
}

TEST_CASE("resultant equals the Sylvester determinant") {
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 1u}, {3u, 2u}, {2u, 3u}}) {
    const Field& K = Field::make(p, k);
    Rng rng(p + 17 * k);
    for (int trial = 0; trial < 300; ++trial) {
      Poly f = random_bounded(K, 1 + trial % 6, rng, 'y');
      Poly g = random_bounded(K, 1 + (trial / 6) % 5, rng, 'y');
      if (f.is_zero() || g.is_zero()) continue;
      CHECK(resultant(f, g) == oracle::sylvester(f, g));
    }
  }
}

TEST_CASE("discriminant examples") {
  const Field& f5 = Field::make(5);
  for (Elem c = 0; c < 5; ++c) CHECK(discriminant(P(f5, {c, 0, 1})) == f5.mul(f5.from_int(-4), c));
  CHECK(discriminant(P(f5, {1, 1, 1})) == 2);
  CHECK(discriminant(P(f5, {0, 0, 1})) == 0);
  CHECK_THROWS_AS(discriminant(P(f5, {1, 1, 2})), InvalidArgument);
}

TEST_CASE("discriminant agrees with the root-difference product") {
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 1u}, {3u, 2u}, {2u, 2u}}) {
    const Field& K = Field::make(p, k);
    for (unsigned n = 1; n <= 4; ++n) {
      for_each_monic(K, n, [&](const Poly& f) {
        unsigned s = 1;
        for (auto [len, mult] : oracle::cycle_type_by_trial(f).parts) s = std::lcm(s, len);
        if (std::pow(K.q(), s) > 5000) return;
        auto expected = oracle::disc_from_roots(f, s);
        REQUIRE(expected.has_value());
        CHECK(discriminant(f) == *expected);
      });
    }
  }
}

TEST_CASE("discriminant vanishes exactly when gcd(f, f') is nonconstant") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}}) {
    const Field& K = Field::make(p, k);
    for_each_small(K, 5000, [](const Poly& f) {
      CHECK((discriminant(f) == 0) == (gcd(f, derivative(f)).degree() > 0));
    });
  }
}

TEST_CASE("pellet examples") {
  const Field& f3 = Field::make(3);
  CHECK(pellet_predict(P(f3, {1, 0, 1})) == -1);
  CHECK(mobius(P(f3, {1, 0, 1})) == -1);
  CHECK(pellet_predict(P(f3, {0, 1, 1})) == 1);
  CHECK_THROWS_AS(pellet_predict(P(Field::make(2), {1, 1, 1})), Unsupported);
  CHECK_THROWS_AS(pellet_predict(P(f3, {1, 2, 1})), InvalidArgument);
}

TEST_CASE("pellet identity over F_9 and F_7") {
  for (auto [p, k] : {std::pair{3u, 2u}, {7u, 1u}}) {
    const Field& K = Field::make(p, k);
    for_each_small(K, 3000, [](const Poly& f) {
      if (!is_squarefree(f)) return;
      CHECK(pellet_predict(f) == mobius(f));
    });
  }
}

TEST_CASE("perfect squares") {
  const Field& f3 = Field::make(3);
  const Field& f5 = Field::make(5);
  CHECK(*is_perfect_square(P(f3, {1, 2, 1})) == P(f3, {1, 1}));
  CHECK_FALSE(is_perfect_square(P(f3, {1, 0, 1})).has_value());
  CHECK(*is_perfect_square(P(f5, {0, 0, 4})) == P(f5, {0, 2}));
  CHECK_FALSE(is_perfect_square(P(f5, {0, 0, 2})).has_value());
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    const Field& K = Field::make(p, k);
    std::set<std::vector<Elem>> squares;
    for (unsigned d = 0; d <= 2; ++d) {
      for_each_bounded(K, d, [&](const Poly& t) { squares.insert((t * t).coeffs()); }, 'y');
    }
    for_each_bounded(K, 4, [&](const Poly& f) {
      auto r = is_perfect_square(f);
      CHECK(r.has_value() == (squares.count(f.coeffs()) == 1));
      if (r) CHECK(*r * *r == f);
    }, 'y');
  }
}

TEST_CASE("cycle types") {
  const Field& f2 = Field::make(2);
  CycleType a = cycle_type_of(P(f2, {0, 1}) * P(f2, {1, 1}) * P(f2, {1, 1, 1}));
  CHECK(a.parts == std::map<unsigned, unsigned>{{1, 2}, {2, 1}});
  CHECK(cycle_type_of(P(f2, {1, 0, 1})).parts == std::map<unsigned, unsigned>{{1, 2}});
  CHECK(cycle_type_of(P(f2, {1, 1, 0, 1})).parts == std::map<unsigned, unsigned>{{3, 1}});
  CHECK_THROWS_AS(cycle_type_of(Poly::constant(f2, 1)), InvalidArgument);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}}) {
    const Field& K = Field::make(p, k);
    for_each_small(K, 5000, [](const Poly& f) { CHECK(cycle_type_of(f) == oracle::cycle_type_by_trial(f)); });
  }
}

TEST_CASE("irreducible counts") {
  CHECK(count_irreducibles(1, Field::make(2)) == 2);
  CHECK(count_irreducibles(3, Field::make(2)) == 2);
  CHECK(count_irreducibles(2, Field::make(3)) == 3);
  CHECK_THROWS_AS(count_irreducibles(0, Field::make(2)), InvalidArgument);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {7u, 1u}, {2u, 2u}, {3u, 2u}}) {
    const Field& K = Field::make(p, k);
    std::uint64_t size = 1;
    for (unsigned n = 1;; ++n) {
      size *= K.q();
      if (size > 10000) break;
      unsigned count = 0;
      for_each_monic(K, n, [&](const Poly& f) { count += is_irreducible(f) ? 1 : 0; });
      CHECK(count_irreducibles(n, K) == count);
    }
  }
}

TEST_CASE("is_irreducible agrees with trial division") {
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}}) {
    const Field& K = Field::make(p, k);
    for_each_small(K, 10000, [](const Poly& f) { CHECK(is_irreducible(f) == oracle::irreducible_by_trial(f)); });
  }
}
