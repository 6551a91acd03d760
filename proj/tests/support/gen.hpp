#pragma once

// Seeded generators for property tests. Every test draws from its own Gen so
// a failure reproduces from the seed printed by the test name alone.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "anrec/lambda_series.hpp"
#include "anrec/poly.hpp"

namespace testgen {

using namespace anrec;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int int_in(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return eng_() & 1u; }

  Rat rat(int span = 9) {
    const int p = int_in(-span, span);
    const int q = int_in(1, span);
    return frac(p, q);
  }
  Rat nonzero_rat(int span = 9) {
    Rat r;
    do r = rat(span);
    while (sgn(r) == 0);
    return r;
  }

  CycScalar cyc(const CycContext& ctx, int span = 5) {
    std::vector<Rat> c(ctx.degree());
    for (auto& x : c) x = rat(span);
    return CycScalar(ctx, std::move(c));
  }
  CycScalar nonzero_cyc(const CycContext& ctx) {
    CycScalar s;
    do s = cyc(ctx);
    while (s.is_zero());
    return s;
  }

  VarId var(int N, int max_level) { return {int_in(0, max_level), int_in(1, N)}; }

  RatPoly poly(int N, int max_level, int nterms, int max_deg) {
    RatPoly p;
    for (int t = 0; t < nterms; ++t) {
      Monomial m;
      const int d = int_in(0, max_deg);
      for (int k = 0; k < d; ++k) m = m * Monomial(var(N, max_level));
      p.add_term(m, rat());
    }
    return p;
  }

  RatSeries series(int h, int qlo, int qhi, int N, int nterms) {
    RatSeries s(h);
    for (int t = 0; t < nterms; ++t) s.add(int_in(qlo, qhi), poly(N, 1, 2, 2));
    return s;
  }

  /// Tuple of length r with entries in lo..hi.
  std::vector<int> tuple(int r, int lo, int hi) {
    std::vector<int> t(r);
    for (auto& x : t) x = int_in(lo, hi);
    return t;
  }

  /// r distinct values in 1..n, increasing.
  std::vector<int> subset(int n, int r) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < r; ++i) std::swap(pool[i], pool[int_in(i, n - 1)]);
    std::vector<int> out(pool.begin(), pool.begin() + r);
    std::sort(out.begin(), out.end());
    return out;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[int_in(0, i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testgen
