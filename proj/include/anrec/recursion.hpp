#pragma once

// Higher genus: fields, propagators, Wick-ordered operators, the correlators
// Omega^(g) obtained by conjugating with exp(sum hbar^(g-1) F^(g)), the
// all-genus solver, and the W-constraint residual after the dilaton shift.
//
// Genus bookkeeping is integral throughout. A term of Omega^(g) for r fields
// carries hbar^(g - r/2); its doubled grade 2g - r is assembled from
//   x-part of a field            -1
//   block of b derivative parts   2(g_F - 1) + b   (acting on F^(g_F))
//   propagator pair               0
// and is asserted, never tolerated.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anrec/genus0.hpp"
#include "anrec/lambda_series.hpp"
#include "anrec/poly.hpp"
#include "anrec/rootsys.hpp"

namespace anrec {

/// One half of Phi_a(lambda): x-part lambda^m x_{m,a} hbar^(-1/2), or
/// derivative part lambda^(-m-1) (a+mh) hbar^(1/2) d/dx_{m,h-a}.
struct FieldPart {
  bool derivative = false;
  int lambda_exp = 0;  // integer power of lambda
  VarId target;        // x_{m,a} for x-parts, x_{m,h-a} for derivative parts
  Rat factor = 1;
  int grade2 = 0;  // doubled hbar exponent: -1 or +1
};

/// The parts of Phi_a up to level max_level (x-part and derivative part of
/// each level). a = h gives no parts (x_{m,h} and x_{m,0} do not exist).
std::vector<FieldPart> field_parts(const RootData& rd, int a, int max_level);

/// A linear field sum_a coeff[a-1] Phi_a(lambda) lambda^(-a/h).
struct Field {
  std::vector<CycScalar> coeff;
};

/// X_j = sum_a eta^(-j a) Phi_a lambda^(-a/h), 1 <= j <= h.
Field x_field(const RootData& rd, int j);
/// Phi_a lambda^(-a/h), i.e. the field of gamma_a.
Field gamma_field(const RootData& rd, int a);

/// Coefficient of lambda^(-2) in P_ij = eta^(i+j)/(eta^i - eta^j)^2 lambda^(-2).
CycScalar propagator(const RootData& rd, int i, int j);
/// The same propagator for gamma fields: delta_{a+b,h} a b/(2h). With it,
/// pairing X_i with X_j reproduces P_ij for i != j.
CycScalar gamma_propagator(const RootData& rd, int a, int b);

struct WickTerm {
  std::vector<std::pair<int, int>> pairs;  // labels, first < second, firsts increasing
  std::vector<int> unpaired;               // labels in increasing order
  CycScalar coeff;                         // product of the propagator values
};

/// Expansion of X_J over all sets of disjoint pairs in J.
struct WickOperator {
  std::vector<int> labels;
  std::vector<WickTerm> terms;
};

WickOperator wick_operator(const RootData& rd, std::span<const int> labels);

/// Number of sets of disjoint pairs among r points.
long matching_count(int r);

/// Truncated potentials F^(0..G); F^(g) holds degrees 1..caps[g] (degree >= 3
/// at genus 0). Constants of F^(g), g >= 2, are not determined and stored as 0.
struct PotentialTable {
  int N = 1;
  std::vector<RatPoly> F;
  std::vector<int> caps;

  int genus_max() const { return static_cast<int>(F.size()) - 1; }
  /// Highest descendant level occurring in any F^(g).
  int max_level() const;
};

/// Shift applied to one x-variable in the x-parts of the fields.
struct DilatonShift {
  VarId var{1, 1};
  Rat amount = 1;  // in t-units; converted to x-units internally
};

/// Options for the correlator engine.
struct OmegaOptions {
  int level_cap = 0;                    // x-parts use levels 0..level_cap
  std::optional<DilatonShift> shift;    // x-part of the shifted variable becomes x - c
};

/// Omega^(g) of X_{j_1..j_r} for distinct labels (lambda exponents in units 1/h).
CycSeries omega(const RootData& rd, const PotentialTable& table, std::span<const int> labels, int g, int cap,
                const OmegaOptions& opt);

/// Omega^(g) of a normal-ordered product of general fields, Wick-expanded with
/// the given propagator between positions k < l; restricted to exponents
/// [qlo, qhi] (units 1/h).
CycSeries omega_fields(const RootData& rd, const PotentialTable& table, const std::vector<Field>& fields,
                       const std::function<CycScalar(int, int)>& prop, int g, int cap, const OmegaOptions& opt,
                       int qlo, int qhi);

/// Omega^(g) of :Phi_{a_1} ... Phi_{a_k}: (no lambda^(-a/h) factors, integer
/// exponents), restricted to exponents [lo, hi].
RatSeries omega_phi(const RootData& rd, const PotentialTable& table, std::span<const int> a, int g, int cap,
                    const OmegaOptions& opt, int lo, int hi);

struct SolveOptions {
  int taper = 2;          // D_g = D - taper * g; must be >= 1
  bool check_identity = true;  // recompute the identity on the finished table
  bool check_genus0 = true;    // compare genus 0 with the residue engine
};

/// Degree cap of F^(g) under the taper.
int genus_cap(int D, int g, int taper);

PotentialTable solve_all_genus(const RootData& rd, int G, int D, const SolveOptions& opt = {});

/// Right side of the identity for (-a+(m+1)h) dF^(g)/dx_{m,a}, every (m,a)
/// with m <= level_cap, degrees <= cap, evaluated on the table as given.
std::map<VarId, RatPoly> recursion_rhs(const RootData& rd, const PotentialTable& table, int g, int cap, int level_cap);

/// Same quantity summed literally over i and the subsets J of the other
/// labels with omega(); slow reference implementation.
std::map<VarId, RatPoly> recursion_rhs_direct(const RootData& rd, const PotentialTable& table, int g, int cap,
                                             int level_cap);

/// Default shift position (1, N): x_{1,N} -> x_{1,N} + 1.
DilatonShift default_shift(const RootData& rd);
/// Shift amount of the variable in x-units: c / ((-i+h)...(-i+kh)).
Rat shift_in_x_units(const RootData& rd, const DilatonShift& s);

/// Substitutes t = q + c at the shift position: p(t) -> p(q + c), written
/// in the same variable names. dilaton_unshift is its inverse.
RatPoly dilaton_shift(const RootData& rd, const RatPoly& p, const DilatonShift& s);
RatPoly dilaton_unshift(const RootData& rd, const RatPoly& p, const DilatonShift& s);

enum class StateRoute { Chi, Gamma };

struct WResidual {
  int a = 1;
  int m = 0;
  int cap = 0;
  std::vector<RatPoly> by_genus;  // residual of Omega^(g), g = 0..G
  bool vanishes() const;
};

/// Res lambda^m X(e_{h+1-a}, lambda) D, genus by genus, truncated at degree cap.
/// The chi route expands e_r over r-subsets of labels; the gamma route uses
/// the bracket state with gamma propagators.
WResidual w_residual(const RootData& rd, const PotentialTable& table, int a, int m, int cap,
                     StateRoute route = StateRoute::Chi, std::optional<DilatonShift> shift = std::nullopt);

/// Caps D_g needed for an exact residual check up to degree cap through genus G.
std::vector<int> residual_caps(int cap, int G);

/// c * h^(h_exp/h) * lambda^(lambda_exp/h)
struct KernelMonomial {
  int h = 1;
  CycScalar coeff;
  int h_exp = 0;
  int lambda_exp = 0;

  /// Same value with 0 <= h_exp < h (whole powers of h moved into coeff).
  KernelMonomial normalized() const;
  friend bool operator==(const KernelMonomial& x, const KernelMonomial& y);
};

KernelMonomial operator*(const KernelMonomial& x, const KernelMonomial& y);
KernelMonomial operator/(const KernelMonomial& x, const KernelMonomial& y);

/// (numerator, denominator unit): (h lambda)^(m+1-a/h) / ((-a+h)...(-a+(m+1)h))
/// and (h lambda)^(1/h); the denominator for (i,j) is (eta^i - eta^j) times the unit.
std::pair<KernelMonomial, KernelMonomial> kernel_monomials(const RootData& rd, int m, int a);

/// Kernel of the period-form operator for label i and the other labels js.
KernelMonomial period_kernel(const RootData& rd, int m, int a, int i, std::span<const int> js);
/// (1/h) eta^(-ia) lambda^(m+1-(a+r)/h) / prod (eta^i - eta^j).
KernelMonomial recursion_kernel(const RootData& rd, int m, int a, int i, std::span<const int> js);

}  // namespace anrec
