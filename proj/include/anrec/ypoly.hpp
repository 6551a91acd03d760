#pragma once

// Univariate polynomials in the formal variable Y over Q(eta).

#include <algorithm>
#include <vector>

#include "anrec/exactnum.hpp"

namespace anrec {

class YPoly {
 public:
  YPoly() = default;
  explicit YPoly(std::vector<CycScalar> c) : c_(std::move(c)) { trim(); }
  YPoly(const CycScalar& k) : c_{k} { trim(); }  // NOLINT

  static YPoly monomial(int k, const CycScalar& c = CycScalar(1)) {
    std::vector<CycScalar> v(k + 1, CycScalar(0));
    v[k] = c;
    return YPoly(std::move(v));
  }
  /// (1 - Y)^m
  static YPoly one_minus_y_pow(int m) {
    YPoly base(std::vector<CycScalar>{CycScalar(1), CycScalar(-1)});
    YPoly out(CycScalar(1));
    for (int i = 0; i < m; ++i) out = out * base;
    return out;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  CycScalar coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : CycScalar(0); }
  const std::vector<CycScalar>& coeffs() const { return c_; }

  CycScalar eval_at_one() const {
    CycScalar s(0);
    for (const auto& c : c_) s += c;
    return s;
  }

  YPoly& operator+=(const YPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), CycScalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  friend YPoly operator+(YPoly a, const YPoly& b) { return a += b; }
  friend YPoly operator*(const YPoly& a, const YPoly& b) { return mul_trunc(a, b, -1); }
  friend YPoly operator*(YPoly a, const CycScalar& k) {
    for (auto& c : a.c_) c *= k;
    a.trim();
    return a;
  }
  friend bool operator==(const YPoly& a, const YPoly& b) { return a.c_ == b.c_; }

  /// Product keeping powers Y^k with k <= cap (cap < 0: all).
  static YPoly mul_trunc(const YPoly& a, const YPoly& b, int cap) {
    if (a.is_zero() || b.is_zero()) return YPoly();
    int n = a.degree() + b.degree();
    if (cap >= 0) n = std::min(n, cap);
    std::vector<CycScalar> out(n + 1, CycScalar(0));
    for (int i = 0; i <= a.degree() && i <= n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; j <= b.degree() && i + j <= n; ++j) {
        if (!b.c_[j].is_zero()) out[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return YPoly(std::move(out));
  }

  YPoly truncated(int cap) const {
    if (degree() <= cap) return *this;
    return YPoly(std::vector<CycScalar>(c_.begin(), c_.begin() + cap + 1));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<CycScalar> c_;
};

}  // namespace anrec
