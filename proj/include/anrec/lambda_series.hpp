#pragma once

// Finite Laurent objects in lambda^(1/h) with polynomial coefficients.
// Exponents are stored as integers q meaning lambda^(q/h); the residue at
// lambda = 0 is the coefficient at q = -h.

#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "anrec/poly.hpp"

namespace anrec {

template <class S>
class LambdaSeries {
 public:
  using Poly = SparsePoly<S>;

  explicit LambdaSeries(int h = 1) : h_(h) {
    if (h < 1) throw std::invalid_argument("LambdaSeries: h must be >= 1");
  }
  static LambdaSeries monomial(int h, int q, const Poly& c) {
    LambdaSeries s(h);
    s.add(q, c);
    return s;
  }

  int h() const { return h_; }
  const std::map<int, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_q() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_q() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  Poly coeff(int q) const {
    auto it = terms_.find(q);
    return it == terms_.end() ? Poly() : it->second;
  }

  void add(int q, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(q, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LambdaSeries& operator+=(const LambdaSeries& o) {
    check(o);
    for (const auto& [q, c] : o.terms_) add(q, c);
    return *this;
  }
  LambdaSeries& operator-=(const LambdaSeries& o) {
    check(o);
    for (const auto& [q, c] : o.terms_) add(q, -c);
    return *this;
  }
  LambdaSeries& operator*=(const S& k) {
    if (anrec::is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& [q, c] : terms_) c *= k;
    return *this;
  }
  friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
  friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }
  friend LambdaSeries operator*(LambdaSeries a, const S& k) { return a *= k; }
  friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) { return mul(a, b, -1); }
  friend bool operator==(const LambdaSeries& a, const LambdaSeries& b) {
    return a.h_ == b.h_ && a.terms_ == b.terms_;
  }

  /// Multiplication by lambda^(q/h).
  LambdaSeries shifted(int q) const {
    LambdaSeries out(h_);
    for (const auto& [p, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), p + q, c);
    return out;
  }

  /// Terms with lo <= q <= hi only.
  LambdaSeries window(int lo, int hi) const {
    LambdaSeries out(h_);
    for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first <= hi; ++it) {
      out.terms_.emplace_hint(out.terms_.end(), it->first, it->second);
    }
    return out;
  }

  void check(const LambdaSeries& o) const {
    if (o.h_ != h_) throw std::invalid_argument("LambdaSeries: exponent unit mismatch");
  }

  /// Exact convolution of lambda-exponents, coefficients truncated at total
  /// t-degree cap (cap < 0: none), keeping only product exponents in [lo, hi].
  friend LambdaSeries mul(const LambdaSeries& a, const LambdaSeries& b, int cap,
                          int lo = std::numeric_limits<int>::min(), int hi = std::numeric_limits<int>::max()) {
    a.check(b);
    LambdaSeries out(a.h_);
    for (const auto& [qa, ca] : a.terms_) {
      for (const auto& [qb, cb] : b.terms_) {
        const long q = static_cast<long>(qa) + qb;
        if (q < lo || q > hi) continue;
        out.add(static_cast<int>(q), anrec::mul(ca, cb, cap));
      }
    }
    return out;
  }

 private:
  int h_;
  std::map<int, Poly> terms_;
};

/// Coefficient of lambda^(-1).
template <class S>
SparsePoly<S> residue(const LambdaSeries<S>& f) {
  return f.coeff(-f.h());
}

/// Product of several factors keeping only the exponent window [lo, hi] of
/// the final result; partial products are pruned using the exponent range of
/// the factors still to come.
template <class S>
LambdaSeries<S> windowed_product(std::span<const LambdaSeries<S>* const> factors, int h, int cap, int lo, int hi) {
  LambdaSeries<S> acc = LambdaSeries<S>::monomial(h, 0, SparsePoly<S>(S(1)));
  const std::size_t n = factors.size();
  std::vector<long> rest_min(n + 1, 0), rest_max(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (factors[i]->is_zero()) return LambdaSeries<S>(h);
    rest_min[i] = rest_min[i + 1] + factors[i]->min_q();
    rest_max[i] = rest_max[i + 1] + factors[i]->max_q();
  }
  for (std::size_t i = 0; i < n; ++i) {
    const long wlo = lo - rest_max[i + 1];
    const long whi = hi - rest_min[i + 1];
    const auto clamp = [](long v) {
      return static_cast<int>(std::clamp<long>(v, std::numeric_limits<int>::min(), std::numeric_limits<int>::max()));
    };
    acc = mul(acc, *factors[i], cap, clamp(wlo), clamp(whi));
    if (acc.is_zero()) break;
  }
  return acc;
}

using RatSeries = LambdaSeries<Rat>;
using CycSeries = LambdaSeries<CycScalar>;

}  // namespace anrec
