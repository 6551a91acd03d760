#pragma once

// Exact scalars: GMP rationals and the cyclotomic field Q(eta_h),
// eta_h = exp(2 pi i / h), represented as Q[x] / Phi_h(x).

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anrec {

using BigInt = mpz_class;
using Rat = mpq_class;

/// Integer polynomial, coefficients ordered from the constant term up.
using IntPoly = std::vector<BigInt>;

struct ContextMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

/// Internal consistency tripwire: an identity that must hold exactly did not.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "p/q", or "p" when q == 1.
std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);
/// Canonical p/q; throws DivisionByZero when q == 0.
Rat frac(long p, long q);

/// Phi_h by exact division of x^h - 1 by Phi_d for every proper divisor d.
IntPoly cyclotomic_poly(int h);

class CycContext {
 public:
  /// Shared, immutable context for h. Contexts live for the whole program.
  static const CycContext& get(int h);

  int h() const { return h_; }
  /// phi(h), the degree of Phi_h.
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const IntPoly& phi() const { return phi_; }

  /// Coefficients of x^k mod Phi_h for degree() <= k <= 2*degree() - 2.
  const std::vector<BigInt>& high_power(int k) const { return high_powers_[k - degree()]; }
  /// Coefficients of x^k mod Phi_h for 0 <= k < h.
  const std::vector<Rat>& eta_power(int k) const { return eta_powers_[k]; }

  CycContext(const CycContext&) = delete;
  CycContext& operator=(const CycContext&) = delete;

 private:
  explicit CycContext(int h);

  int h_;
  IntPoly phi_;
  std::vector<std::vector<BigInt>> high_powers_;
  std::vector<std::vector<Rat>> eta_powers_;
};

/// Element of Q(eta_h). A scalar without a context is a plain rational and
/// adopts the context of whatever it is combined with.
class CycScalar {
 public:
  CycScalar() : coeffs_{Rat(0)} {}
  CycScalar(const Rat& r) : coeffs_{r} {}  // NOLINT: implicit promotion from Q
  CycScalar(long n) : coeffs_{Rat(n)} {}   // NOLINT
  CycScalar(int n) : coeffs_{Rat(n)} {}    // NOLINT
  CycScalar(const CycContext& ctx, std::vector<Rat> coeffs);

  static CycScalar eta_pow(const CycContext& ctx, long k);

  const CycContext* context() const { return ctx_; }
  int h() const { return ctx_ ? ctx_->h() : 1; }

  /// Coefficients in the basis 1, eta, ..., eta^(phi(h)-1).
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  /// Throws NotRational when an eta-component is nonzero.
  Rat to_rational() const;

  CycScalar inverse() const;
  std::complex<double> approx(int digits = 10) const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar& operator/=(const CycScalar& o) { return *this *= o.inverse(); }

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
  CycScalar operator-() const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);

  std::string to_string() const;

 private:
  const CycContext* adopt(const CycScalar& o) const;
  void lift_to(const CycContext* ctx);

  const CycContext* ctx_ = nullptr;
  std::vector<Rat> coeffs_;
};

struct NotRational : std::domain_error {
  explicit NotRational(const CycScalar& value);
  CycScalar value;
};

std::ostream& operator<<(std::ostream& os, const CycScalar& s);

/// Scalar traits used by the generic polynomial containers.
inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_zero(const CycScalar& s) { return s.is_zero(); }

}  // namespace anrec
