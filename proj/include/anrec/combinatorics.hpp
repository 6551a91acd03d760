#pragma once

// The cyclotomic constants
//   C(a_1..a_r) = sum_{1 <= j_1 < ... < j_r <= h-1} prod_s eta^(-j_s a_s) / (1 - eta^(j_s)),
// their symmetrisation SymC, the bracket combination C[a_0..a_r], and
// executable checks of the identities relating them.

#include <span>
#include <string>
#include <vector>

#include "anrec/rootsys.hpp"
#include "anrec/ypoly.hpp"

namespace anrec {

/// Outcome of an exact identity check.
struct VerifyReport {
  std::string claim;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

/// C(a_1..a_r); 1 for the empty tuple and 0 once r > h-1.
CycScalar c_const(const RootData& rd, std::span<const int> a);

/// Sum of C over the distinct permutations of the multiset a (order of a is
/// irrelevant). Equals (1/|Aut a|) sum_{sigma in S_r} C(a_sigma).
CycScalar sym_c(const RootData& rd, std::span<const int> a);

/// C[a_0..a_r] for a weakly increasing tuple: 1 for singletons,
/// sum_i (1/m_i) SymC(a without a_i) otherwise, 0 for length > h.
CycScalar c_bracket(const RootData& rd, std::span<const int> a);

/// [b]_h, the remainder of b modulo h in 0..h-1.
int mod_residue(long b, int h);

/// C[b.., N^m] == (-1)^m binom([sum b]_h, m) C[b..]; entries of b in 1..N-1.
VerifyReport verify_remove_n(const RootData& rd, std::span<const int> b, int m);

/// sum_m SymC[a.., N^m] (1-Y)^m against the truncated Y-series
/// (1-Y^h)/(h(1-Y)) sum_{k, I} prod_j eta^(-i_j (a_j - k_j)) Y^(sum k),
/// I running over sequences of pairwise different indices in 1..N.
/// SymC[...] here sums over ordered index sequences for the a-part and
/// index sets for the N-part, i.e. |Aut(a)| * SymC(a, N^m).
VerifyReport verify_symc_generating(const RootData& rd, std::span<const int> a, int ycap = -1);

/// sum_m C[a.., N^m] (1-Y)^m == Y^([sum a]_h) C[a..].
VerifyReport verify_cbracket_generating(const RootData& rd, std::span<const int> a);

std::string to_string(const YPoly& p);

}  // namespace anrec
