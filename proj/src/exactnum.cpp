#include "anrec/exactnum.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace anrec {

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rat r;
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      r = Rat(BigInt(s, 10));
    } else {
      BigInt den(s.substr(slash + 1), 10);
      if (den == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
      r = Rat(BigInt(s.substr(0, slash), 10), den);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  r.canonicalize();
  return r;
}

namespace {

// Exact quotient of a by a monic polynomial b (remainder must vanish).
IntPoly exact_div_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const BigInt c = a[k];
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw ConsistencyError("cyclotomic division left a remainder");
  }
  return q;
}

IntPoly cyclotomic_impl(int h, std::map<int, IntPoly>& memo) {
  if (auto it = memo.find(h); it != memo.end()) return it->second;
  IntPoly p(h + 1, 0);
  p[0] = -1;
  p[h] = 1;
  for (int d = 1; d < h; ++d) {
    if (h % d == 0) p = exact_div_monic(std::move(p), cyclotomic_impl(d, memo));
  }
  memo.emplace(h, p);
  return p;
}

using RatPoly = std::vector<Rat>;

void trim(RatPoly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

bool poly_is_zero(const RatPoly& p) {
  for (const auto& c : p) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

// Division with remainder in Q[x].
void poly_divmod(RatPoly a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) {
    q = {Rat(0)};
    r = a;
    return;
  }
  q.assign(a.size() - db, Rat(0));
  for (std::size_t k = a.size(); k-- > db;) {
    Rat c = a[k] / b.back();
    q[k - db] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  a.resize(db == 0 ? 1 : db);
  trim(a);
  r = std::move(a);
}

RatPoly poly_sub_mul(const RatPoly& a, const RatPoly& q, const RatPoly& b) {
  RatPoly out(std::max(a.size(), q.size() + b.size() - 1), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (sgn(q[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  }
  trim(out);
  return out;
}

}  // namespace

Rat frac(long p, long q) {
  if (q == 0) throw DivisionByZero("frac: zero denominator");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

IntPoly cyclotomic_poly(int h) {
  if (h < 1) throw std::invalid_argument("cyclotomic_poly: h must be >= 1");
  static std::mutex mu;
  static std::map<int, IntPoly> memo;
  std::lock_guard lock(mu);
  return cyclotomic_impl(h, memo);
}

CycContext::CycContext(int h) : h_(h), phi_(cyclotomic_poly(h)) {
  const int d = degree();
  // x^d = -(phi_0 + ... + phi_{d-1} x^{d-1})
  std::vector<BigInt> row(d);
  for (int i = 0; i < d; ++i) row[i] = -phi_[i];
  for (int k = d; k <= 2 * d - 2; ++k) {
    high_powers_.push_back(row);
    std::vector<BigInt> next(d, 0);
    const BigInt top = row[d - 1];
    for (int i = d - 1; i > 0; --i) next[i] = row[i - 1];
    for (int i = 0; i < d; ++i) next[i] -= top * phi_[i];
    row = std::move(next);
  }
  // eta^k for 0 <= k < h, by repeated multiplication by x
  std::vector<Rat> p(d, Rat(0));
  p[0] = 1;
  for (int k = 0; k < h; ++k) {
    eta_powers_.push_back(p);
    if (d == 1) {
      p[0] *= Rat(-phi_[0]);
      continue;
    }
    std::vector<Rat> next(d, Rat(0));
    const Rat top = p[d - 1];
    for (int i = d - 1; i > 0; --i) next[i] = p[i - 1];
    for (int i = 0; i < d; ++i) next[i] -= top * Rat(phi_[i]);
    p = std::move(next);
  }
}

const CycContext& CycContext::get(int h) {
  if (h < 1) throw std::invalid_argument("CycContext: h must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycContext>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[h];
  if (!slot) slot.reset(new CycContext(h));
  return *slot;
}

CycScalar::CycScalar(const CycContext& ctx, std::vector<Rat> coeffs)
    : ctx_(&ctx), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != ctx.degree()) {
    throw std::invalid_argument("CycScalar: expected " + std::to_string(ctx.degree()) +
                                " coefficients for h=" + std::to_string(ctx.h()));
  }
}

CycScalar CycScalar::eta_pow(const CycContext& ctx, long k) {
  long r = k % ctx.h();
  if (r < 0) r += ctx.h();
  return CycScalar(ctx, ctx.eta_power(static_cast<int>(r)));
}

bool CycScalar::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycScalar::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

bool CycScalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

Rat CycScalar::to_rational() const {
  if (!is_rational()) throw NotRational(*this);
  return coeffs_[0];
}

const CycContext* CycScalar::adopt(const CycScalar& o) const {
  if (!ctx_) return o.ctx_;
  if (!o.ctx_ || o.ctx_ == ctx_) return ctx_;
  throw ContextMismatch("cyclotomic context mismatch: h=" + std::to_string(ctx_->h()) +
                        " vs h=" + std::to_string(o.ctx_->h()));
}

void CycScalar::lift_to(const CycContext* ctx) {
  if (ctx_ == ctx || !ctx) return;
  Rat c = coeffs_[0];
  coeffs_.assign(ctx->degree(), Rat(0));
  coeffs_[0] = c;
  ctx_ = ctx;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  const CycContext* ctx = adopt(o);
  lift_to(ctx);
  if (o.ctx_ == ctx_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  } else {
    coeffs_[0] += o.coeffs_[0];
  }
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
  const CycContext* ctx = adopt(o);
  lift_to(ctx);
  if (o.ctx_ == ctx_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  } else {
    coeffs_[0] -= o.coeffs_[0];
  }
  return *this;
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  const CycContext* ctx = a.adopt(b);
  if (!a.ctx_ || !b.ctx_) {
    const CycScalar& full = a.ctx_ ? a : b;
    const Rat& k = a.ctx_ ? b.coeffs_[0] : a.coeffs_[0];
    CycScalar out = full;
    for (auto& c : out.coeffs_) c *= k;
    return out;
  }
  const int d = ctx->degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(b.coeffs_[j]) == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  std::vector<Rat> out(prod.begin(), prod.begin() + d);
  for (int k = d; k <= 2 * d - 2; ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& row = ctx->high_power(k);
    for (int i = 0; i < d; ++i) {
      if (row[i] != 0) out[i] += prod[k] * Rat(row[i]);
    }
  }
  return CycScalar(*ctx, std::move(out));
}

CycScalar& CycScalar::operator*=(const CycScalar& o) { return *this = *this * o; }

CycScalar CycScalar::operator-() const {
  CycScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.ctx_ == b.ctx_) return a.coeffs_ == b.coeffs_;
  // A bare rational equals a field element only if the latter is rational.
  const CycScalar& full = a.ctx_ ? a : b;
  const CycScalar& bare = a.ctx_ ? b : a;
  if (a.ctx_ && b.ctx_) return false;
  return full.is_rational() && full.coeffs_[0] == bare.coeffs_[0];
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(eta)");
  if (!ctx_ || ctx_->degree() == 1) {
    CycScalar out = *this;
    out.coeffs_[0] = 1 / coeffs_[0];
    return out;
  }
  // Extended Euclid: find s with s*a == 1 (mod Phi_h).
  RatPoly r0(ctx_->phi().begin(), ctx_->phi().end());
  RatPoly r1 = coeffs_;
  trim(r1);
  RatPoly s0{Rat(0)};
  RatPoly s1{Rat(1)};
  while (!(r1.size() == 1)) {
    RatPoly q, r;
    poly_divmod(r0, r1, q, r);
    RatPoly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (poly_is_zero(r1)) throw ConsistencyError("Phi_h is not irreducible?");
  }
  // r1 is a nonzero constant c with s1 * a == c.
  const Rat c = r1[0];
  RatPoly q, red;
  poly_divmod(s1, RatPoly(ctx_->phi().begin(), ctx_->phi().end()), q, red);
  std::vector<Rat> out(ctx_->degree(), Rat(0));
  for (std::size_t i = 0; i < red.size(); ++i) out[i] = red[i] / c;
  return CycScalar(*ctx_, std::move(out));
}

std::complex<double> CycScalar::approx(int digits) const {
  if (digits < 1 || digits > 15) {
    throw std::invalid_argument("approx: digits must lie in 1..15 (double precision)");
  }
  const double theta = 2.0 * std::numbers::pi / h();
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    acc += coeffs_[k].get_d() * std::polar(1.0, theta * static_cast<double>(k));
  }
  return acc;
}

std::string CycScalar::to_string() const {
  if (is_rational()) return anrec::to_string(coeffs_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    const Rat& c = coeffs_[k];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    const Rat mag = abs(c);
    if (k == 0) {
      os << anrec::to_string(mag);
    } else {
      if (mag != 1) os << anrec::to_string(mag) << "*";
      os << "eta";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycScalar& s) { return os << s.to_string(); }

NotRational::NotRational(const CycScalar& v)
    : std::domain_error("value is not rational: " + v.to_string() + " (h=" + std::to_string(v.h()) +
                        ")"),
      value(v) {}

}  // namespace anrec
