#pragma once

// Root data of type A_N at t = 0: the vectors chi_i = sum_a eta^(-i a) gamma_a,
// the invariant pairing, and states in Sym(h) stored in the gamma basis.

#include <map>
#include <span>
#include <vector>

#include "anrec/exactnum.hpp"

namespace anrec {

class RootData {
 public:
  explicit RootData(int N);

  int N() const { return N_; }
  int h() const { return N_ + 1; }
  const CycContext& ctx() const { return *ctx_; }

  /// eta^k, any integer k.
  CycScalar eta(long k) const { return CycScalar::eta_pow(*ctx_, k); }

  /// (gamma_a | gamma_b), a, b in 1..N.
  const CycScalar& gram(int a, int b) const { return gram_[(a - 1) * N_ + (b - 1)]; }

 private:
  int N_;
  const CycContext* ctx_;
  std::vector<CycScalar> gram_;
};

/// Vector of h in gamma coordinates (index a-1 holds the gamma_a coefficient).
using HVector = std::vector<CycScalar>;

HVector chi(const RootData& rd, int i);

/// Coordinates (c_1..c_h) with v = sum_i c_i chi_i and sum_i c_i = 0.
std::vector<CycScalar> to_chi_coords(const RootData& rd, const HVector& v);
HVector from_chi_coords(const RootData& rd, std::span<const CycScalar> c);

CycScalar pairing(const RootData& rd, const HVector& u, const HVector& v);

/// Element of Sym(h): sorted gamma-index multisets -> coefficient.
class SymState {
 public:
  using Key = std::vector<int>;

  SymState() = default;
  explicit SymState(int h) : h_(h) {}

  int h() const { return h_; }
  const std::map<Key, CycScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  CycScalar coeff(const Key& k) const;

  void add(Key k, const CycScalar& c);

  SymState& operator+=(const SymState& o);
  friend SymState operator*(const SymState& a, const SymState& b);
  friend SymState operator*(SymState a, const CycScalar& k);
  friend bool operator==(const SymState& a, const SymState& b) { return a.terms_ == b.terms_; }

  /// Degree-d homogeneous component.
  SymState slice(int d) const;

 private:
  int h_ = 0;
  std::map<Key, CycScalar> terms_;
};

/// Linear state sum_a v_a gamma_a.
SymState linear_state(const RootData& rd, const HVector& v);

/// e_r(chi_1, ..., chi_h) expanded in gamma monomials.
SymState elem_sym_state(const RootData& rd, int r);

/// h * sum' C[b_1..b_r] gamma_b1...gamma_br over weakly increasing b with
/// sum b == 0 (mod h). The factor h is the prefactor the shifted-index
/// resummation produces, so this state equals e_r exactly.
SymState cbracket_state(const RootData& rd, int r);

/// The bare bracket sum sum' C[b] gamma_b (without the factor h).
SymState cbracket_sum(const RootData& rd, int r);

/// sum_s eta^(i_s (r-1)) / prod_{t != s} (eta^(i_s) - eta^(i_t)); always 1.
CycScalar vandermonde_coeff(const RootData& rd, std::span<const int> indices);

}  // namespace anrec
