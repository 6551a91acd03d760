#pragma once

// Genus-0 residue recursion for p_{m,a} = (-a+(m+1)h) dF0/dx_{m,a}, and the
// structural checks (WDVV, Euler homogeneity) on the primary potential.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anrec/lambda_series.hpp"
#include "anrec/poly.hpp"
#include "anrec/rootsys.hpp"

namespace anrec {

enum class ProfileKind { Primary, Descendant };

/// Which x_{m,a} are live variables. Primary: x_{0,a} = t_a, x_{m>0,a} = 0.
/// Descendant: x_{m,a} free for m <= max_level, zero above.
struct InputProfile {
  int N = 1;
  int D = 3;  // total-degree cap of F
  int max_level = 0;
  ProfileKind kind = ProfileKind::Primary;

  static InputProfile primary(int N, int D);
  /// max_level < 0 selects every level that can occur below degree D.
  static InputProfile descendant(int N, int D, int max_level = -1);

  bool live(VarId v) const { return v.m >= 0 && v.m <= max_level && v.a >= 1 && v.a <= N; }
  std::vector<VarId> live_variables() const;
  /// Levels m for which p_{m,a} is tabulated.
  int p_levels() const;
};

/// (m,a) -> p_{m,a}, each truncated at degree D-1.
using PTable = std::map<VarId, RatPoly>;

struct PotentialG0 {
  InputProfile profile;
  PTable p;
  RatPoly F;
};

/// Phi^(0)_a = sum_m x_{m,a} lambda^m + sum_m p_{m,h-a} lambda^(-m-1), integer
/// lambda exponents (series unit 1).
RatSeries phi0(const RootData& rd, const InputProfile& profile, const PTable& p, int a);

/// (n, a0) with -(a + r + sum tuple) = n h + a0 and 0 <= a0 < h.
std::pair<int, int> split_n_a0(int h, int a, std::span<const int> tuple);

/// Degree-d part of the residue formula for p_{m,a}, using the table as given.
RatPoly rhs_residue(const RootData& rd, const InputProfile& profile, const PTable& p, int m, int a, int d);

/// Right side for every tabulated (m,a) at once, all degrees <= cap.
PTable rhs_table(const RootData& rd, const InputProfile& profile, const PTable& p, int cap);

/// Ascending-degree solve; throws ConsistencyError on a failed integrability
/// or well-foundedness check.
PotentialG0 solve(const RootData& rd, const InputProfile& profile);

/// Given dF/dx_v for every v in vars (all homogeneous of degree d), returns
/// the degree-(d+1) potential slice by Euler's formula and checks that its
/// gradient reproduces the input exactly.
RatPoly integrate_slice(const std::map<VarId, RatPoly>& gradient, const std::vector<VarId>& vars, int d);

/// Sets every x_{m,a} with m > 0 to zero.
RatPoly restrict_to_primary(const RatPoly& F);

struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
};

/// Associativity with metric delta_{a+b,h} on the primary restriction,
/// compared on all degrees <= D-3.
CheckReport wdvv_check(const RatPoly& F, int N, int D);
CheckReport wdvv_check(const PotentialG0& pot);

/// Every primary monomial has weight 2 + 2/h with weight(t_i) = (i+1)/h.
CheckReport euler_check(const RatPoly& F, int N);
CheckReport euler_check(const PotentialG0& pot);

/// weight(x_{k,a}) = (a+1)/h - k.
Rat descendant_weight(VarId v, int h);

/// x_{k,a} = t_{k,a} / ((-a+h)(-a+2h)...(-a+kh)): rewrites p(x) in the t-variables.
RatPoly x_to_t(const RatPoly& p, int h);
/// Inverse of x_to_t.
RatPoly t_to_x(const RatPoly& p, int h);

}  // namespace anrec
