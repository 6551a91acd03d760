#pragma once

// Sparse multivariate polynomials in the descendant variables x_{m,a}
// (or flat t_a = x_{0,a}), generic over the exact scalar type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anrec/exactnum.hpp"

namespace anrec {

/// Variable x_{m,a}: descendant level m >= 0, flat index a in 1..N.
/// Ordered lexicographically on (m, a).
struct VarId {
  int m = 0;
  int a = 1;

  friend auto operator<=>(const VarId&, const VarId&) = default;

  std::uint32_t code() const { return (static_cast<std::uint32_t>(m) << 8) | static_cast<std::uint32_t>(a); }
  static VarId from_code(std::uint32_t c) { return {static_cast<int>(c >> 8), static_cast<int>(c & 0xffu)}; }
  std::string name() const { return "x" + std::to_string(m) + "_" + std::to_string(a); }
};

/// Monomial as a sorted list of (variable code, exponent > 0).
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(VarId v, std::uint32_t e = 1) {
    if (e > 0) f_.emplace_back(v.code(), e);
  }
  static Monomial from_factors(std::vector<Factor> f) {
    std::sort(f.begin(), f.end());
    Monomial m;
    for (const auto& [v, e] : f) {
      if (e == 0) continue;
      if (!m.f_.empty() && m.f_.back().first == v) m.f_.back().second += e;
      else m.f_.emplace_back(v, e);
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += static_cast<int>(e);
    return d;
  }

  std::uint32_t exponent(VarId v) const {
    const auto c = v.code();
    for (const auto& [w, e] : f_) {
      if (w == c) return e;
    }
    return 0;
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial out;
    out.f_.reserve(x.f_.size() + y.f_.size());
    auto i = x.f_.begin();
    auto j = y.f_.begin();
    while (i != x.f_.end() && j != y.f_.end()) {
      if (i->first < j->first) out.f_.push_back(*i++);
      else if (j->first < i->first) out.f_.push_back(*j++);
      else {
        out.f_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    out.f_.insert(out.f_.end(), i, x.f_.end());
    out.f_.insert(out.f_.end(), j, y.f_.end());
    return out;
  }

  /// Monomial with the exponent of v lowered by one; requires exponent(v) > 0.
  Monomial lowered(VarId v) const {
    Monomial out = *this;
    const auto c = v.code();
    for (auto it = out.f_.begin(); it != out.f_.end(); ++it) {
      if (it->first != c) continue;
      if (--it->second == 0) out.f_.erase(it);
      return out;
    }
    throw std::logic_error("Monomial::lowered: variable absent");
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    if (f_.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : f_) {
      if (!s.empty()) s += "*";
      s += VarId::from_code(v).name();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  std::vector<Factor> f_;
};

/// Sparse polynomial: no stored zero coefficients, terms in canonical
/// (lexicographic monomial) order.
template <class S>
class SparsePoly {
 public:
  using Terms = std::map<Monomial, S>;

  SparsePoly() = default;
  SparsePoly(const S& c) {  // NOLINT: constants embed implicitly
    if (!anrec::is_zero(c)) terms_.emplace(Monomial(), c);
  }
  static SparsePoly var(VarId v) {
    SparsePoly p;
    p.terms_.emplace(Monomial(v), S(1));
    return p;
  }
  static SparsePoly monomial(const Monomial& m, const S& c) {
    SparsePoly p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest total degree, -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  int min_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = (d < 0) ? m.degree() : std::min(d, m.degree());
    return d;
  }

  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) {
    if (anrec::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (anrec::is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SparsePoly& operator*=(const S& k) {
    if (anrec::is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const S& k) { return a *= k; }
  friend SparsePoly operator*(const S& k, SparsePoly a) { return a *= k; }
  SparsePoly operator-() const {
    SparsePoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return mul(a, b, -1); }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  /// Homogeneous component of total degree d.
  SparsePoly slice(int d) const {
    SparsePoly out;
    for (const auto& [m, c] : terms_) {
      if (m.degree() == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
    }
    return out;
  }

  /// Drops every term of total degree above cap.
  SparsePoly truncated(int cap) const {
    SparsePoly out;
    for (const auto& [m, c] : terms_) {
      if (m.degree() <= cap) out.terms_.emplace_hint(out.terms_.end(), m, c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + scalar_string(c) + ")";
      if (!m.is_one()) s += "*" + m.to_string();
    }
    return s;
  }

 private:
  static std::string scalar_string(const Rat& r) { return anrec::to_string(r); }
  static std::string scalar_string(const CycScalar& c) { return c.to_string(); }

  Terms terms_;
};

/// Product truncated at total degree cap (cap < 0 means no truncation).
template <class S>
SparsePoly<S> mul(const SparsePoly<S>& a, const SparsePoly<S>& b, int cap) {
  SparsePoly<S> out;
  if (a.is_zero() || b.is_zero()) return out;
  const int bmin = b.min_degree();
  for (const auto& [ma, ca] : a.terms()) {
    const int da = ma.degree();
    if (cap >= 0 && da + bmin > cap) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (cap >= 0 && da + mb.degree() > cap) continue;
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

/// Exact partial derivative d p / d x_v.
template <class S>
SparsePoly<S> diff(const SparsePoly<S>& p, VarId v) {
  SparsePoly<S> out;
  for (const auto& [m, c] : p.terms()) {
    const auto e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.lowered(v), c * S(static_cast<long>(e)));
  }
  return out;
}

/// Drops every term whose weighted degree (sum of weight(v) * exponent)
/// exceeds cap. Weights must be positive on occurring variables.
template <class S>
SparsePoly<S> truncate(const SparsePoly<S>& p, const std::function<Rat(VarId)>& weight, const Rat& cap) {
  SparsePoly<S> out;
  for (const auto& [m, c] : p.terms()) {
    Rat w = 0;
    for (const auto& [v, e] : m.factors()) {
      const Rat wv = weight(VarId::from_code(v));
      if (sgn(wv) <= 0) throw std::invalid_argument("truncate: non-positive weight on " + VarId::from_code(v).name());
      w += wv * e;
    }
    if (w <= cap) out.add_term(m, c);
  }
  return out;
}

/// Weighted degree of a monomial; weights may be of any sign.
inline Rat weighted_degree(const Monomial& m, const std::function<Rat(VarId)>& weight) {
  Rat w = 0;
  for (const auto& [v, e] : m.factors()) w += weight(VarId::from_code(v)) * e;
  return w;
}

/// Substitutes x_v -> x_v + shift for one variable (binomial expansion).
template <class S>
SparsePoly<S> shift_variable(const SparsePoly<S>& p, VarId v, const S& shift) {
  SparsePoly<S> out;
  for (const auto& [m, c] : p.terms()) {
    const auto e = m.exponent(v);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    Monomial rest = m;
    for (std::uint32_t k = 0; k < e; ++k) rest = rest.lowered(v);
    // sum_j binom(e, j) x^j shift^(e-j)
    BigInt binom = 1;
    for (std::uint32_t j = 0; j <= e; ++j) {
      S coef = c * S(Rat(binom));
      for (std::uint32_t k = j; k < e; ++k) coef *= shift;
      out.add_term(rest * Monomial(v, j), coef);
      binom = binom * (e - j) / (j + 1);
    }
  }
  return out;
}

/// Checked demotion of every coefficient from Q(eta) to Q.
inline SparsePoly<Rat> demote(const SparsePoly<CycScalar>& p) {
  SparsePoly<Rat> out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.to_rational());
  return out;
}

inline SparsePoly<CycScalar> promote(const SparsePoly<Rat>& p) {
  SparsePoly<CycScalar> out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, CycScalar(c));
  return out;
}

/// acc += k * p, with p over Q and k in Q(eta).
inline void add_scaled(SparsePoly<CycScalar>& acc, const CycScalar& k, const SparsePoly<Rat>& p) {
  if (k.is_zero()) return;
  for (const auto& [m, c] : p.terms()) acc.add_term(m, k * CycScalar(c));
}

/// Variables occurring in p.
template <class S>
std::vector<VarId> variables(const SparsePoly<S>& p) {
  std::vector<std::uint32_t> codes;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [v, e] : m.factors()) codes.push_back(v);
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<VarId> out;
  for (auto c : codes) out.push_back(VarId::from_code(c));
  return out;
}

using RatPoly = SparsePoly<Rat>;
using CycPoly = SparsePoly<CycScalar>;

}  // namespace anrec
