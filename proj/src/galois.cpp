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

#include "pgff/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pgff {

namespace {

void require_odd(const Field& K, const char* what) {
  if (K.p() == 2) throw Unsupported(std::string(what) + " needs odd characteristic");
}

void require_monic(const BiPoly& f, const char* what) {
  if (!f.is_monic_y() || f.deg_y() < 1) throw InvalidArgument(std::string(what) + " needs a polynomial monic in y");
}

BigInt factorial(unsigned m) {
  BigInt r = 1;
  for (unsigned i = 2; i <= m; ++i) r *= i;
  return r;
}

// Square class of a nonzero polynomial in x.
DiscClass square_class_of(const Poly& d) {
  const Field& K = d.field();
  DiscClass out;
  if (d.is_zero()) return out;
  Poly t = Poly::constant(K, 1, 'x');
  bool odd_part = false;
  for (const auto& [g, e] : squarefree_decomposition(d)) {
    if (g.degree() < 1) continue;
    if (e % 2 == 1) odd_part = true;
    t = t * pow(g, e / 2);
  }
  if (odd_part) {
    out.tag = DiscTag::NonSquare;
    return out;
  }
  const Elem a = d.lc();
  out.tag = K.quadratic_character(a) == 1 ? DiscTag::Square : DiscTag::ConstantTwist;
  out.witness = DiscWitness{a, t};
  return out;
}

}  // namespace

DiscClass disc_square_class(const BiPoly& f) {
  require_odd(f.field(), "disc_square_class");
  require_monic(f, "disc_square_class");
  return square_class_of(disc_y(f));
}

std::optional<CycleType> frobenius_cycle_type(const BiPoly& f, const Probe& probe) {
  const Extension& ext = Extension::of(f.field(), probe.k);
  Poly fiber = specialize_x(f, probe.tau, ext);
  if (fiber.degree() != f.deg_y() || !is_squarefree(fiber)) return std::nullopt;
  return cycle_type_of(fiber);
}

bool jordan_certificate(const CycleType& ct, unsigned n) {
  if (ct.n() != n) throw InvalidArgument("cycle type does not partition n");
  for (auto [len, mult] : ct.parts) {
    if (mult > 0 && 2 * len > n && len + 3 <= n && is_prime(len)) return true;
  }
  return false;
}

unsigned default_probe_budget(unsigned n) {
  unsigned lg = 0;
  while ((1u << lg) < n) ++lg;
  return std::max(4u, 4 * lg);
}

namespace {

// Walks the probe schedule; stops when fn returns false or the points run out.
template <class Fn>
void walk_probes(const Field& K, Fn&& fn) {
  for (Elem tau = 0; tau < K.q(); ++tau) {
    if (!fn(Probe{1, tau})) return;
  }
  for (unsigned k = 2;; ++k) {
    double size = std::pow(static_cast<double>(K.q()), k);
    if (size > double(1u << 24)) return;
    const Extension& ext = Extension::of(K, k);
    const Field& L = ext.field();
    for (Elem tau = 0; tau < L.q(); ++tau) {
      if (ext.element_degree(tau) != k) continue;
      bool smallest = true;
      for (unsigned j = 1; j < k && smallest; ++j) smallest = ext.frobenius(tau, j) > tau;
      if (!smallest) continue;
      if (!fn(Probe{k, tau})) return;
    }
  }
}

}  // namespace

std::vector<Probe> probe_schedule(const Field& field, std::size_t count) {
  std::vector<Probe> out;
  if (count == 0) return out;
  walk_probes(field, [&](const Probe& p) {
    out.push_back(p);
    return out.size() < count;
  });
  return out;
}

namespace {

// Shared front part of the classifier; returns a final verdict or nothing if
// probes are needed.
std::optional<Verdict> prescreen(const BiPoly& f, Verdict& v) {
  require_odd(f.field(), "classify_irreducible");
  require_monic(f, "classify_irreducible");
  if (!is_irreducible_bivariate(f)) {
    v.tag = VerdictTag::NotIrreducible;
    return v;
  }
  v.disc = disc_square_class(f);
  if (v.disc->tag == DiscTag::Zero) {
    v.tag = VerdictTag::Inseparable;
    return v;
  }
  if (f.deg_y() <= 3) {
    v.tag = v.disc->tag == DiscTag::Square && f.deg_y() == 3 ? VerdictTag::An : VerdictTag::Sn;
    return v;
  }
  return std::nullopt;
}

VerdictTag refine(const DiscClass& d) { return d.tag == DiscTag::Square ? VerdictTag::An : VerdictTag::Sn; }

// Reads one probe into v; returns true when it certifies.
bool read_probe(const BiPoly& f, const Probe& p, Verdict& v, bool& ramified) {
  auto ct = frobenius_cycle_type(f, p);
  ramified = !ct;
  if (!ct) return false;
  const bool cert = jordan_certificate(*ct, static_cast<unsigned>(f.deg_y()));
  v.evidence.push_back({p, *ct, cert});
  return cert;
}

}  // namespace

Verdict classify_irreducible(const BiPoly& f, const std::vector<Probe>& probes) {
  Verdict v;
  if (auto done = prescreen(f, v)) return *done;
  if (probes.empty()) throw InvalidArgument("classify_irreducible needs at least one probe");
  for (const auto& p : probes) {
    bool ramified = false;
    if (read_probe(f, p, v, ramified)) {
      v.tag = refine(*v.disc);
      return v;
    }
  }
  v.tag = VerdictTag::Unknown;
  return v;
}

Verdict classify_irreducible(const BiPoly& f, unsigned budget) {
  Verdict v;
  if (auto done = prescreen(f, v)) return *done;
  if (budget == 0) budget = default_probe_budget(static_cast<unsigned>(f.deg_y()));
  unsigned used = 0, tried = 0;
  const unsigned max_tried = 16 * budget;
  v.tag = VerdictTag::Unknown;
  walk_probes(f.field(), [&](const Probe& p) {
    ++tried;
    bool ramified = false;
    if (read_probe(f, p, v, ramified)) {
      v.tag = refine(*v.disc);
      return false;
    }
    if (!ramified) ++used;
    return used < budget && tried < max_tried;
  });
  return v;
}

Verdict galois_oracle_small(const BiPoly& f) {
  const Field& K = f.field();
  require_odd(K, "galois_oracle_small");
  require_monic(f, "galois_oracle_small");
  const int n = f.deg_y();
  if (n != 2 && n != 3) throw InvalidArgument("galois_oracle_small handles y-degree 2 and 3 only");
  Verdict v;
  auto fa = factor_bivariate_oracle(f);
  if (fa.factors.size() != 1 || fa.factors[0].second != 1) {
    v.tag = VerdictTag::NotIrreducible;
    return v;
  }
  auto num = [&](std::int64_t s) { return K.from_int(s); };
  Poly disc(K, 'x');
  if (n == 2) {
    const Poly b = f.coeff(1), c = f.coeff(0);
    disc = b * b - scale(c, num(4));
  } else {
    const Poly b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
    disc = b * b * c * c - scale(c * c * c, num(4)) - scale(b * b * b * d, num(4)) - scale(d * d, num(27)) +
           scale(b * c * d, num(18));
  }
  v.disc = square_class_of(disc);
  if (v.disc->tag == DiscTag::Zero) {
    v.tag = VerdictTag::Inseparable;
  } else {
    v.tag = n == 3 && v.disc->tag == DiscTag::Square ? VerdictTag::An : VerdictTag::Sn;
  }
  return v;
}

unsigned cyclic_order_r(const Poly& c) {
  if (c.is_zero()) throw InvalidArgument("cyclic_order_r of zero");
  unsigned r = 1;
  if (c.degree() < 1) return r;
  for (const auto& [g, e] : factor(c).factors) r = std::lcm(r, static_cast<unsigned>(g.degree()));
  return r;
}

namespace {

// g monic irreducible cubic over F_q(x) whose roots all lie in F_{q^3}[x].
bool splits_over_cubic_constants(const BiPoly& g) {
  const Extension& ext = Extension::of(g.field(), 3);
  auto fa = factor_bivariate(embed(g, ext));
  return std::all_of(fa.factors.begin(), fa.factors.end(), [](const auto& h) { return h.first.deg_y() == 1; });
}

}  // namespace

SplitVerdict classify_splitting(const BiPoly& f, unsigned budget) {
  require_odd(f.field(), "classify_splitting");
  require_monic(f, "classify_splitting");
  auto [c, g] = primitive_decompose(f);
  SplitVerdict out;
  out.r = cyclic_order_r(c);
  out.m = static_cast<unsigned>(std::max(g.deg_y(), 0));
  const unsigned r = out.r, m = out.m;
  if (m <= 1) {
    out.tag = SplitCase::CaseA;
    out.group_order = r;
    return out;
  }
  if (m == 4) return out;
  if (!is_separable_y(g) || !is_irreducible_bivariate(g)) return out;
  const DiscClass dc = disc_square_class(g);
  if (m >= 5) {
    Verdict v = classify_irreducible(g, budget);
    if (v.tag != VerdictTag::Sn && v.tag != VerdictTag::An) return out;
  }
  if (dc.tag == DiscTag::Square) {
    // A_3 = C_3 may be a constant extension, which then overlaps the constants of c.
    if (m == 3 && r % 3 == 0 && splits_over_cubic_constants(g)) return out;
    out.tag = SplitCase::CaseB;
    out.group_order = BigInt(r) * factorial(m) / 2;
  } else if (dc.tag == DiscTag::ConstantTwist && r % 2 == 0) {
    out.tag = SplitCase::CaseC;
    out.group_order = BigInt(r) * factorial(m) / 2;
  } else {
    out.tag = SplitCase::CaseA;
    out.group_order = BigInt(r) * factorial(m);
  }
  return out;
}

NormPoly build_norm_poly(const BiPoly& f0, const ProbePoints& probes) {
  const Extension& ext = *probes.ext;
  const Field& L = ext.field();
  const unsigned k = ext.degree();
  if (&ext.base() != &f0.field()) throw InvalidArgument("probe points lie over a different field");
  if (!is_prime(k)) throw InvalidArgument("norm polynomial needs a prime extension degree");
  std::vector<Poly> specs;
  BiPoly prod = BiPoly::constant(L, 1);
  for (Elem tau : probes.points) {
    Elem t = tau;
    for (unsigned j = 0; j < k; ++j) {
      t = ext.frobenius(t);
      Poly s = specialize_x(f0, t, ext);
      specs.push_back(s);
      prod = prod * BiPoly(L, {Poly(s).set_var('x'), Poly::constant(L, 1, 'x')});
    }
  }
  auto down = descend(prod, ext);
  if (!down) throw std::logic_error("norm polynomial coefficients do not descend");
  NormPoly out{*down, true};
  std::sort(specs.begin(), specs.end());
  out.separable = std::adjacent_find(specs.begin(), specs.end()) == specs.end();
  return out;
}

Poly substitute_t(const BiPoly& F, const Poly& h) {
  const Field& K = F.field();
  Poly acc(K, 'y');
  for (std::size_t j = F.coeffs().size(); j-- > 0;) {
    acc = acc * h;
    acc += Poly(F.coeffs()[j]).set_var('y');
  }
  return acc.set_var('y');
}

ChowlaEstimate chowla_sum_exact(const BiPoly& F, unsigned n, std::uint64_t cap) {
  if (F.is_zero()) throw InvalidArgument("chowla_sum of the zero polynomial");
  const Field& K = F.field();
  const std::uint64_t total = checked_pow(K.q(), n, cap);
  ChowlaEstimate out;
  for_each_monic(K, n, [&](const Poly& h) {
    Poly v = substitute_t(F, h);
    if (v.is_zero()) {
      ++out.zeros;
      return;
    }
    out.sum += liouville(v);
  });
  out.samples = total;
  out.value = static_cast<double>(out.sum) / static_cast<double>(total);
  return out;
}

ChowlaEstimate chowla_sum_monte_carlo(const BiPoly& F, unsigned n, std::uint64_t trials, Rng& rng) {
  if (F.is_zero()) throw InvalidArgument("chowla_sum of the zero polynomial");
  if (trials == 0) throw InvalidArgument("chowla_sum needs at least one trial");
  const Field& K = F.field();
  ChowlaEstimate out;
  std::int64_t s = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Poly h = random_bounded(K, n == 0 ? 0 : n - 1, rng, 'y');
    if (n == 0) h = Poly(K, 'y');
    h += Poly::monomial(K, 1, n, 'y');
    Poly v = substitute_t(F, h);
    if (v.is_zero()) {
      ++out.zeros;
      continue;
    }
    s += liouville(v);
  }
  // Each term is in {-1, 0, 1}; the sample variance uses the second moment directly.
  const double N = static_cast<double>(trials);
  const double mean = static_cast<double>(s) / N;
  const double second = static_cast<double>(trials - out.zeros) / N;
  const double var = trials > 1 ? (second - mean * mean) * N / (N - 1) : 0.0;
  out.value = mean;
  out.stderr_ = std::sqrt(std::max(var, 0.0) / N);
  out.samples = trials;
  return out;
}

double chowla_identity_value(std::uint64_t q, unsigned n) {
  const double qd = static_cast<double>(q);
  if (n % 2 == 0) return std::pow(qd, -static_cast<double>(n) / 2);
  return -std::pow(qd, -static_cast<double>(n - 1) / 2);
}

std::string to_string(DiscTag t) {
  switch (t) {
    case DiscTag::Zero: return "Zero";
    case DiscTag::Square: return "Square";
    case DiscTag::ConstantTwist: return "ConstantTwist";
    case DiscTag::NonSquare: return "NonSquare";
  }
  return "?";
}

std::string to_string(VerdictTag t) {
  switch (t) {
    case VerdictTag::Sn: return "Sn";
    case VerdictTag::An: return "An";
    case VerdictTag::ContainsAn: return "ContainsAn";
    case VerdictTag::NotIrreducible: return "NotIrreducible";
    case VerdictTag::Inseparable: return "Inseparable";
    case VerdictTag::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(SplitCase t) {
  switch (t) {
    case SplitCase::CaseA: return "CaseA";
    case SplitCase::CaseB: return "CaseB";
    case SplitCase::CaseC: return "CaseC";
    case SplitCase::Unknown: return "Unknown";
  }
  return "?";
}

}  // namespace pgff
