#pragma once

// Independent reference computations. None of these share code paths with
// the library beyond the scalar and polynomial types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "anrec/poly.hpp"
#include "anrec/rootsys.hpp"

namespace oracle {

using namespace anrec;

/// C(a_1..a_r) by enumerating every increasing j-sequence in 1..h-1.
inline CycScalar brute_c(const RootData& rd, const std::vector<int>& a) {
  const int h = rd.h();
  const int r = static_cast<int>(a.size());
  CycScalar total(0);
  std::vector<int> j;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(j.size()) == r) {
      CycScalar term(1);
      for (int s = 0; s < r; ++s) term *= rd.eta(-static_cast<long>(j[s]) * a[s]) / (CycScalar(1) - rd.eta(j[s]));
      total += term;
      return;
    }
    for (int v = lo; v <= h - 1; ++v) {
      j.push_back(v);
      rec(v + 1);
      j.pop_back();
    }
  };
  rec(1);
  return total;
}

/// Symmetrization over all r! orderings divided by |Aut|.
inline CycScalar brute_sym_c(const RootData& rd, std::vector<int> a) {
  std::sort(a.begin(), a.end());
  CycScalar s(0);
  long perms = 0;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> t;
    for (int i : p) t.push_back(a[i]);
    s += brute_c(rd, t);
    ++perms;
  } while (std::next_permutation(p.begin(), p.end()));
  long aut = 1;
  for (std::size_t i = 0; i < a.size();) {
    std::size_t k = i;
    while (k < a.size() && a[k] == a[i]) ++k;
    for (std::size_t f = 2; f <= k - i; ++f) aut *= static_cast<long>(f);
    i = k;
  }
  return s * CycScalar(frac(1, aut));
}

/// e_r(chi_1..chi_h) as a product of linear states, summed over r-subsets.
inline SymState brute_elem_sym(const RootData& rd, int r) {
  SymState total(rd.h());
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(pick.size()) == r) {
      SymState prod(rd.h());
      prod.add({}, CycScalar(1));
      for (int i : pick) prod = prod * linear_state(rd, chi(rd, i));
      total += prod;
      return;
    }
    for (int v = lo; v <= rd.h(); ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return total;
}

/// Number of sets of pairwise disjoint pairs among r points, by bitmask search
/// over the set of all pairs.
inline long brute_matchings(int r) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  }
  long count = 0;
  const std::size_t P = pairs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << P); ++mask) {
    unsigned used = 0;
    bool ok = true;
    for (std::size_t k = 0; k < P && ok; ++k) {
      if (!(mask >> k & 1u)) continue;
      const unsigned bits = (1u << pairs[k].first) | (1u << pairs[k].second);
      ok = (used & bits) == 0;
      used |= bits;
    }
    count += ok;
  }
  return count;
}

/// Witten-Kontsevich intersection numbers <tau_d1 ... tau_dn>_g from the
/// DVV (Virasoro) recursion with base values <tau_0^3>_0 = 1, <tau_1>_1 = 1/24.
class KdvOracle {
 public:
  Rat operator()(int g, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    const int n = static_cast<int>(d.size());
    if (g < 0 || 2 * g - 2 + n <= 0) return 0;
    int sum = 0;
    for (int x : d) sum += x;
    if (sum != 3 * g - 3 + n) return 0;
    const auto key = std::make_pair(g, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Rat value;
    if (g == 0 && d == std::vector<int>{0, 0, 0}) value = 1;
    else if (g == 1 && d == std::vector<int>{1}) value = frac(1, 24);
    else if (d.back() == 0) value = 0;
    else {
      const int k = d.back() - 1;  // insertion tau_{k+1}
      std::vector<int> S(d.begin(), d.end() - 1);
      Rat acc = 0;
      for (std::size_t j = 0; j < S.size(); ++j) {
        std::vector<int> rest = S;
        rest.erase(rest.begin() + static_cast<long>(j));
        rest.push_back(S[j] + k);
        acc += Rat(dfact(2 * k + 2 * S[j] + 1)) / Rat(dfact(2 * S[j] - 1)) * (*this)(g, rest);
      }
      for (int a = 0; a <= k - 1; ++a) {
        const int b = k - 1 - a;
        const Rat w = Rat(dfact(2 * a + 1) * dfact(2 * b + 1)) / 2;
        std::vector<int> both = S;
        both.push_back(a);
        both.push_back(b);
        acc += w * (*this)(g - 1, both);
        const std::size_t m = S.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
          std::vector<int> I{a}, J{b};
          for (std::size_t s = 0; s < m; ++s) (mask >> s & 1u ? I : J).push_back(S[s]);
          for (int g1 = 0; g1 <= g; ++g1) acc += w * (*this)(g1, I) * (*this)(g - g1, J);
        }
      }
      value = acc / Rat(dfact(2 * k + 3));
    }
    memo_[key] = value;
    return value;
  }

  /// F_g restricted to monomials of total degree <= cap in the variables
  /// (k,1) <-> t_k: sum <prod tau> prod t / |Aut|.
  RatPoly potential(int g, int cap) {
    RatPoly F;
    std::vector<int> d;
    std::function<void(int, int)> rec = [&](int lo, int left) {
      if (!d.empty()) {
        const Rat v = (*this)(g, d);
        if (sgn(v) != 0) {
          Monomial mono;
          long aut = 1;
          std::map<int, int> mult;
          for (int x : d) {
            mono = mono * Monomial(VarId{x, 1});
            aut *= ++mult[x];
          }
          F.add_term(mono, v / Rat(aut));
        }
      }
      if (left == 0) return;
      for (int x = lo; x <= 3 * g - 3 + cap + 1; ++x) {
        d.push_back(x);
        rec(x, left - 1);
        d.pop_back();
      }
    };
    rec(0, cap);
    return F;
  }

 private:
  static BigInt dfact(int n) {
    BigInt r = 1;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
  }
  std::map<std::pair<int, std::vector<int>>, Rat> memo_;
};

}  // namespace oracle
