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

#include <map>
#include <tuple>

#include "oracles.hpp"
#include "pgff/bipoly.hpp"

using namespace pgff;

namespace {

// Sum of c * x^i * y^j over the given (c, i, j) terms.
BiPoly B(const Field& K, std::initializer_list<std::tuple<std::int64_t, unsigned, unsigned>> terms) {
  BiPoly f(K);
  for (auto [c, i, j] : terms) f += BiPoly::monomial(K, K.from_int(c), i, j);
  return f;
}

Poly Px(const Field& K, std::vector<Elem> c) { return Poly(K, std::move(c), 'x'); }
Poly Py(const Field& K, std::vector<Elem> c) { return Poly(K, std::move(c), 'y'); }

BiPoly random_bipoly(const Field& K, unsigned dy, unsigned dx, Rng& rng) {
  std::vector<Poly> c;
  for (unsigned j = 0; j <= dy; ++j) c.push_back(random_bounded(K, dx, rng));
  while (c.back().is_zero()) c.back() = random_bounded(K, dx, rng);
  return BiPoly(K, std::move(c));
}

bool same(const BiFactorization& a, const BiFactorization& b) { return a.unit == b.unit && a.factors == b.factors; }

}  // namespace

TEST_CASE("content_x examples") {
  const Field& K = Field::make(3);
  CHECK(content_x(B(K, {{1, 0, 3}, {1, 1, 1}})) == Py(K, {0, 1}));
  CHECK(content_x(B(K, {{1, 0, 2}, {1, 1, 0}})) == Py(K, {1}));
  BiPoly yonly = B(K, {{1, 0, 2}, {2, 0, 0}});
  CHECK(content_x(yonly) == Py(K, {2, 0, 1}));
  CHECK_THROWS_AS(content_x(BiPoly(K)), InvalidArgument);
}

TEST_CASE("primitive_decompose examples") {
  const Field& K = Field::make(5);
  auto [c1, g1] = primitive_decompose(B(K, {{1, 0, 3}, {1, 1, 1}}));
  CHECK(c1 == Py(K, {0, 1}));
  CHECK(g1 == B(K, {{1, 0, 2}, {1, 1, 0}}));
  auto [c2, g2] = primitive_decompose(B(K, {{1, 0, 2}, {1, 1, 0}}));
  CHECK(c2 == Py(K, {1}));
  CHECK(g2 == B(K, {{1, 0, 2}, {1, 1, 0}}));
  BiPoly yonly = B(K, {{1, 0, 2}, {3, 0, 1}});
  auto [c3, g3] = primitive_decompose(yonly);
  CHECK(c3 == Py(K, {0, 3, 1}));
  CHECK(g3 == BiPoly::constant(K, 1));
}

TEST_CASE("primitive decomposition multiplies back, exhaustive and random") {
  auto check = [](const BiPoly& f) {
    auto [c, g] = primitive_decompose(f);
    CHECK(BiPoly::from_y(c) * g == f);
    CHECK(c.is_monic());
    CHECK(content_x(g).is_one());
  };
  const Field& f2 = Field::make(2);
  for (unsigned n = 1; n <= 4; ++n) for_each_ensemble(f2, n, 1, check);
  Rng rng(11);
  for (auto [p, k] : {std::pair{3u, 1u}, {4u, 1u}, {5u, 1u}}) {
    const Field& K = Field::make(p == 4 ? 2 : p, p == 4 ? 2 : k);
    for (int t = 0; t < 1000; ++t) check(sample_ensemble(K, {3, 2, BoxMode::Small}, rng));
  }
}

TEST_CASE("swap_vars examples") {
  const Field& K = Field::make(3);
  BiPoly f = B(K, {{1, 0, 2}, {1, 1, 0}});
  BiPoly s = swap_vars(f);
  CHECK(s.deg_y() == 1);
  CHECK(s == B(K, {{1, 2, 0}, {1, 0, 1}}));
  BiPoly xy = B(K, {{1, 1, 1}});
  CHECK(swap_vars(xy) == xy);
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    BiPoly g = random_bipoly(K, t % 5, t % 4, rng);
    CHECK(swap_vars(swap_vars(g)) == g);
  }
}

TEST_CASE("specialize_x examples") {
  const Field& K = Field::make(3);
  CHECK(specialize_x(B(K, {{1, 0, 2}, {1, 1, 0}}), 1) == Py(K, {1, 0, 1}));
  Poly s = specialize_x(B(K, {{1, 0, 2}, {1, 1, 1}, {1, 0, 0}}), 2);
  CHECK(s == Py(K, {1, 2, 1}));
  CHECK_FALSE(is_squarefree(s));
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    BiPoly f = sample_ensemble(K, {4, 3, BoxMode::Small}, rng);
    for (Elem tau = 0; tau < 3; ++tau) CHECK(specialize_x(f, tau).degree() == 4);
  }
}

TEST_CASE("disc_y examples") {
  const Field& f7 = Field::make(7);
  CHECK(disc_y(B(f7, {{1, 0, 2}, {1, 1, 0}})) == Px(f7, {0, f7.from_int(-4)}));
  CHECK(disc_y(B(f7, {{1, 0, 3}, {1, 1, 0}})) == Px(f7, {0, 0, f7.from_int(-27)}));
  BiPoly cubic = B(f7, {{1, 0, 3}, {-3, 2, 1}, {1, 3, 0}});
  CHECK(disc_y(cubic) == Poly::monomial(f7, f7.from_int(81), 6, 'x'));
  const Field& f3 = Field::make(3);
  CHECK(disc_y(B(f3, {{1, 0, 2}, {1, 1, 0}})) == Px(f3, {0, f3.from_int(-4)}));
}

TEST_CASE("disc_y commutes with specialization, including extension points") {
  Rng rng(17);
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 1u}, {2u, 2u}, {7u, 1u}}) {
    const Field& K = Field::make(p, k);
    for (int t = 0; t < 200; ++t) {
      const unsigned n = 1 + t % 5;
      BiPoly f = sample_ensemble(K, {n, static_cast<unsigned>(t % 3), BoxMode::Small}, rng);
      Poly d = disc_y(f);
      const unsigned s = 1 + t % 3;
      const Extension& ext = Extension::of(K, s);
      Elem tau = uniform_elem(ext.field(), rng);
      Poly spec = specialize_x(f, tau, ext);
      CHECK(embed(d, ext).eval(tau) == discriminant(spec));
    }
  }
}

TEST_CASE("resultant routes agree") {
  Rng rng(23);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {13u, 1u}}) {
    const Field& K = Field::make(p, k);
    for (int t = 0; t < 200; ++t) {
      BiPoly f = random_bipoly(K, 1 + t % 4, t % 3, rng);
      BiPoly g = random_bipoly(K, 1 + (t / 4) % 3, (t / 3) % 3, rng);
      CHECK(resultant_y(f, g) == resultant_y_subresultant(f, g));
    }
  }
}

TEST_CASE("resultant specializes to the univariate resultant") {
  const Field& K = Field::make(5);
  Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    BiPoly f = sample_ensemble(K, {1 + static_cast<unsigned>(t % 3), 2, BoxMode::Small}, rng);
    BiPoly g = sample_ensemble(K, {1 + static_cast<unsigned>(t % 4), 1, BoxMode::Small}, rng);
    Poly r = resultant_y(f, g);
    for (Elem tau = 0; tau < 5; ++tau) CHECK(r.eval(tau) == resultant(specialize_x(f, tau), specialize_x(g, tau)));
  }
}

TEST_CASE("is_separable_y examples") {
  const Field& f3 = Field::make(3);
  const Field& f2 = Field::make(2);
  CHECK(is_separable_y(B(f3, {{1, 0, 2}, {1, 1, 0}})));
  CHECK_FALSE(is_separable_y(B(f2, {{1, 0, 2}, {1, 1, 0}})));
  CHECK_FALSE(is_separable_y(B(f3, {{1, 0, 3}, {-1, 1, 0}})));
  const Field& f5 = Field::make(5);
  CHECK_FALSE(is_separable_y(B(f5, {{1, 0, 5}, {-1, 1, 0}})));
  CHECK_THROWS_AS(is_separable_y(B(f5, {{1, 1, 0}})), InvalidArgument);
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    BiPoly f = sample_ensemble(f3, {1 + static_cast<unsigned>(t % 4), 1, BoxMode::Small}, rng);
    CHECK(is_separable_y(f) == !disc_y(f).is_zero());
  }
}

TEST_CASE("factor_bivariate examples") {
  const Field& f3 = Field::make(3);
  CHECK(is_irreducible_bivariate(B(f3, {{1, 0, 2}, {1, 1, 0}})));
  auto fa = factor_bivariate(B(f3, {{1, 0, 2}, {-1, 2, 0}}));
  REQUIRE(fa.factors.size() == 2);
  CHECK(fa.factors[0].first == B(f3, {{1, 0, 1}, {1, 1, 0}}));
  CHECK(fa.factors[1].first == B(f3, {{1, 0, 1}, {-1, 1, 0}}));
  auto fb = factor_bivariate(B(f3, {{1, 0, 3}, {1, 1, 1}}));
  REQUIRE(fb.factors.size() == 2);
  CHECK(fb.factors[0].first == B(f3, {{1, 0, 1}}));
  CHECK(fb.factors[1].first == B(f3, {{1, 0, 2}, {1, 1, 0}}));
  CHECK(fb.unit == 1);
  CHECK_THROWS_AS(factor_bivariate(BiPoly(f3)), InvalidArgument);
  CHECK_THROWS_AS(factor_bivariate(BiPoly::constant(f3, 2)), InvalidArgument);
}

TEST_CASE("factor_bivariate handles contents, powers and non-monic input") {
  const Field& f5 = Field::make(5);
  BiPoly a = B(f5, {{1, 0, 2}, {1, 1, 0}});
  BiPoly b = B(f5, {{2, 1, 1}, {1, 0, 0}});
  BiPoly c = B(f5, {{1, 1, 0}, {1, 0, 0}});
  BiPoly f = scale(pow(a, 2) * b * c * BiPoly::from_y(Py(f5, {1, 1})), 3);
  auto fa = factor_bivariate(f);
  CHECK(fa.expand(f5) == f);
  CHECK(fa.factors.size() == 4);
  unsigned total = 0;
  for (const auto& [g, e] : fa.factors) {
    total += e;
    CHECK(is_irreducible_bivariate(g));
  }
  CHECK(total == 5);

  const Field& f2 = Field::make(2);
  BiPoly sq = pow(B(f2, {{1, 0, 2}, {1, 1, 1}, {1, 1, 0}}), 2);
  auto fs = factor_bivariate(sq);
  REQUIRE(fs.factors.size() == 1);
  CHECK(fs.factors[0].second == 2);
  BiPoly frob = B(f2, {{1, 0, 2}, {1, 2, 0}, {1, 1, 0}});
  CHECK(factor_bivariate(frob).expand(f2) == frob);

  // Every fiber over F_2 is (y + 1)^2, so the search must move to an extension.
  BiPoly no_good_point = B(f2, {{1, 0, 2}, {1, 2, 1}, {1, 1, 1}, {1, 2, 0}, {1, 1, 0}, {1, 0, 0}});
  for (Elem t = 0; t < 2; ++t) CHECK_FALSE(is_squarefree(specialize_x(no_good_point, t)));
  CHECK(is_separable_y(no_good_point));
  CHECK(same(factor_bivariate(no_good_point), factor_bivariate_oracle(no_good_point)));
  BiPoly split = B(f2, {{1, 0, 1}, {1, 1, 0}}) * B(f2, {{1, 0, 1}, {1, 1, 0}, {1, 0, 0}});
  BiPoly product = split * no_good_point;
  CHECK(same(factor_bivariate(product), factor_bivariate_oracle(product)));
}

TEST_CASE("oracle examples") {
  const Field& f3 = Field::make(3);
  auto fa = factor_bivariate_oracle(B(f3, {{1, 0, 2}, {-1, 2, 0}}));
  CHECK(fa.factors.size() == 2);
  const Field& f2 = Field::make(2);
  auto fb = factor_bivariate_oracle(B(f2, {{1, 0, 2}, {1, 1, 0}}));
  REQUIRE(fb.factors.size() == 1);
  CHECK(fb.factors[0].second == 1);
  CHECK(same(fb, factor_bivariate(B(f2, {{1, 0, 2}, {1, 1, 0}}))));
  Rng rng(1);
  BiPoly big = sample_ensemble(Field::make(31), {8, 6, BoxMode::Small}, rng);
  CHECK_THROWS_AS(factor_bivariate_oracle(big, 1000), CapExceeded);
}

TEST_CASE("factor_bivariate matches the oracle on exhaustive sets") {
  int count = 0;
  auto run = [&](const Field& K, unsigned n, unsigned d) {
    for_each_ensemble(K, n, d, [&](const BiPoly& f) {
      ++count;
      auto fa = factor_bivariate(f);
      auto fo = factor_bivariate_oracle(f);
      CHECK(same(fa, fo));
      CHECK(fa.expand(K) == f);
    });
  };
  const Field& f2 = Field::make(2);
  const Field& f3 = Field::make(3);
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned d = 0; d <= 1; ++d) run(f2, n, d);
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned d = 0; d <= 1; ++d) run(f3, n, d);
  CHECK(count == 2 + 4 + 4 + 16 + 8 + 64 + 3 + 9 + 9 + 81);
}

TEST_CASE("factor_bivariate matches the oracle on random larger samples") {
  Rng rng(41);
  struct Grid {
    unsigned p, k, n, d;
  };
  for (Grid g : {Grid{2, 1, 4, 2}, Grid{2, 1, 5, 1}, Grid{3, 1, 3, 2}, Grid{2, 2, 3, 1}, Grid{5, 1, 4, 1},
                 Grid{7, 1, 3, 1}, Grid{3, 1, 4, 1}}) {
    const Field& K = Field::make(g.p, g.k);
    for (int t = 0; t < 150; ++t) {
      BiPoly f = sample_ensemble(K, {g.n, g.d, BoxMode::Small}, rng);
      auto fa = factor_bivariate(f, rng);
      CHECK(same(fa, factor_bivariate_oracle(f)));
      for (const auto& [h, e] : fa.factors) {
        CHECK(h.is_monic_y());
        CHECK(h.deg_x() <= h.deg_y() * f.deg_x());
        CHECK(h.deg_x() <= f.deg_x());
      }
    }
  }
}

TEST_CASE("irreducibility verdict is symmetric under swapping variables") {
  Rng rng(43);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}}) {
    const Field& K = Field::make(p, k);
    for (int t = 0; t < 250; ++t) {
      BiPoly f = primitive_decompose(sample_ensemble(K, {2 + static_cast<unsigned>(t % 5), 1 + t % 3u, BoxMode::Small}, rng))
                     .second;
      if (f.deg_x() < 1) continue;
      CHECK(is_irreducible_bivariate(f) == is_irreducible_bivariate(swap_vars(f)));
    }
  }
}

TEST_CASE("factorizations of random larger polynomials reproduce the input") {
  Rng rng(47);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 4u}, {101u, 1u}}) {
    const Field& K = Field::make(p, k);
    for (int t = 0; t < 20; ++t) {
      BiPoly a = sample_ensemble(K, {1 + static_cast<unsigned>(t % 4), 2, BoxMode::Small}, rng);
      BiPoly b = random_bipoly(K, 1 + t % 3, 3, rng);
      BiPoly f = a * b;
      auto fa = factor_bivariate(f, rng);
      CHECK(fa.expand(K) == f);
      CHECK(fa.omega() >= 2);
      for (const auto& [h, e] : fa.factors) CHECK(h.lc_y().lc() == 1);
    }
    for (int t = 0; t < 10; ++t) {
      BiPoly f = sample_ensemble(K, {10, 10, BoxMode::Small}, rng);
      CHECK(factor_bivariate(f, rng).expand(K) == f);
    }
  }
}

TEST_CASE("sampling is deterministic and uniform") {
  const Field& K = Field::make(3);
  Rng r1(99), r2(99);
  for (int t = 0; t < 50; ++t) CHECK(sample_ensemble(K, {4, 3, BoxMode::Large}, r1) == sample_ensemble(K, {4, 3, BoxMode::Large}, r2));

  const Field& f2 = Field::make(2);
  Rng rng(7);
  std::map<std::vector<Elem>, int> counts;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) {
    BiPoly f = sample_ensemble(f2, {2, 1, BoxMode::Small}, rng);
    CHECK(f.is_monic_y());
    std::vector<Elem> key;
    for (unsigned j = 0; j < 2; ++j)
      for (unsigned i = 0; i < 2; ++i) key.push_back(f.at(i, j));
    ++counts[key];
  }
  CHECK(counts.size() == 16);
  double chi2 = 0;
  const double expected = draws / 16.0;
  for (const auto& [key, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 37.697);  // chi-square, 15 degrees of freedom, upper 0.001 point
}
