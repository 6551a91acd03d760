#include "anrec/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace anrec {

namespace {

// T[j][a] = eta^(-j a) / (1 - eta^j), 1 <= j, a <= h-1.
class FactorTable {
 public:
  explicit FactorTable(const RootData& rd) : n_(rd.N()) {
    t_.reserve(n_ * n_);
    for (int j = 1; j <= n_; ++j) {
      const CycScalar inv = (CycScalar(1) - rd.eta(j)).inverse();
      for (int a = 1; a <= n_; ++a) t_.push_back(rd.eta(-static_cast<long>(j) * a) * inv);
    }
  }
  const CycScalar& at(int j, int a) const { return t_[(j - 1) * n_ + (a - 1)]; }

 private:
  int n_;
  std::vector<CycScalar> t_;
};

struct Caches {
  std::mutex mu;
  std::map<int, std::unique_ptr<FactorTable>> tables;
  std::map<std::pair<int, std::vector<int>>, CycScalar> symc;
};

Caches& caches() {
  static Caches c;
  return c;
}

const FactorTable& factor_table(const RootData& rd) {
  auto& c = caches();
  std::lock_guard lock(c.mu);
  auto& slot = c.tables[rd.h()];
  if (!slot) slot = std::make_unique<FactorTable>(rd);
  return *slot;
}

void check_entries(const RootData& rd, std::span<const int> a, const char* what) {
  for (int x : a) {
    if (x < 1 || x > rd.N()) {
      throw std::out_of_range(std::string(what) + ": entry " + std::to_string(x) + " outside 1.." +
                              std::to_string(rd.N()));
    }
  }
}

std::string tuple_string(std::span<const int> a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

CycScalar sym_c_uncached(const RootData& rd, const std::vector<int>& sorted) {
  const int r = static_cast<int>(sorted.size());
  if (r == 0) return CycScalar(1);
  if (r > rd.N()) return CycScalar(0);
  const FactorTable& t = factor_table(rd);
  // Distinct values with multiplicities; DP over j = 1..h-1 assigning each j
  // to at most one slot, slots of equal value being unordered.
  std::vector<int> vals, mult;
  for (int x : sorted) {
    if (!vals.empty() && vals.back() == x) ++mult.back();
    else {
      vals.push_back(x);
      mult.push_back(1);
    }
  }
  const int k = static_cast<int>(vals.size());
  std::vector<int> stride(k + 1, 1);
  for (int v = 0; v < k; ++v) stride[v + 1] = stride[v] * (mult[v] + 1);
  const int states = stride[k];
  std::vector<CycScalar> f(states, CycScalar(0));
  f[0] = CycScalar(1);
  for (int j = 1; j <= rd.N(); ++j) {
    std::vector<CycScalar> g = f;
    for (int s = 0; s < states; ++s) {
      for (int v = 0; v < k; ++v) {
        const int used = (s / stride[v]) % (mult[v] + 1);
        if (used == 0) continue;
        const CycScalar& prev = f[s - stride[v]];
        if (!prev.is_zero()) g[s] += prev * t.at(j, vals[v]);
      }
    }
    f = std::move(g);
  }
  return f[states - 1];
}

}  // namespace

int mod_residue(long b, int h) {
  long r = b % h;
  if (r < 0) r += h;
  return static_cast<int>(r);
}

CycScalar c_const(const RootData& rd, std::span<const int> a) {
  check_entries(rd, a, "c_const");
  const int r = static_cast<int>(a.size());
  if (r == 0) return CycScalar(1);
  if (r > rd.N()) return CycScalar(0);
  const FactorTable& t = factor_table(rd);
  // f[s] = sum over j_1 < ... < j_s <= j of prod_{u<=s} T[j_u][a_u]
  std::vector<CycScalar> f(r + 1, CycScalar(0));
  f[0] = CycScalar(1);
  for (int j = 1; j <= rd.N(); ++j) {
    for (int s = std::min(r, j); s >= 1; --s) {
      if (!f[s - 1].is_zero()) f[s] += f[s - 1] * t.at(j, a[s - 1]);
    }
  }
  return f[r];
}

CycScalar sym_c(const RootData& rd, std::span<const int> a) {
  check_entries(rd, a, "sym_c");
  std::vector<int> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  auto& c = caches();
  const auto key = std::make_pair(rd.h(), sorted);
  {
    std::lock_guard lock(c.mu);
    if (auto it = c.symc.find(key); it != c.symc.end()) return it->second;
  }
  CycScalar v = sym_c_uncached(rd, sorted);
  std::lock_guard lock(c.mu);
  c.symc.emplace(key, v);
  return v;
}

CycScalar c_bracket(const RootData& rd, std::span<const int> a) {
  check_entries(rd, a, "c_bracket");
  if (a.empty()) throw std::invalid_argument("c_bracket: empty tuple");
  if (!std::is_sorted(a.begin(), a.end())) {
    throw std::invalid_argument("c_bracket: tuple " + tuple_string(a) + " is not weakly increasing");
  }
  if (a.size() == 1) return CycScalar(1);
  if (static_cast<int>(a.size()) > rd.h()) return CycScalar(0);
  // The m_i copies of a value each contribute SymC(...)/m_i: one term per
  // distinct value.
  CycScalar total(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0 && a[i] == a[i - 1]) continue;
    std::vector<int> rest(a.begin(), a.end());
    rest.erase(rest.begin() + static_cast<long>(i));
    total += sym_c(rd, rest);
  }
  return total;
}

std::string to_string(const YPoly& p) {
  std::ostringstream os;
  os << "[";
  for (int k = 0; k <= p.degree(); ++k) os << (k ? ", " : "") << p.coeff(k);
  os << "]";
  return os.str();
}

VerifyReport verify_remove_n(const RootData& rd, std::span<const int> b, int m) {
  if (b.empty()) throw std::invalid_argument("verify_remove_n: b must be non-empty");
  for (int x : b) {
    if (x < 1 || x >= rd.N()) throw std::out_of_range("verify_remove_n: entries of b must lie in 1..N-1");
  }
  if (m < 0) throw std::invalid_argument("verify_remove_n: m must be >= 0");
  std::vector<int> base(b.begin(), b.end());
  std::sort(base.begin(), base.end());
  std::vector<int> full = base;
  full.insert(full.end(), m, rd.N());

  long sum = 0;
  for (int x : base) sum += x;
  const int top = mod_residue(sum, rd.h());
  BigInt binom = 0;
  if (m <= top) {
    binom = 1;
    for (int j = 0; j < m; ++j) binom = binom * (top - j) / (j + 1);
  }
  const CycScalar lhs = c_bracket(rd, full);
  const CycScalar rhs = CycScalar(Rat((m % 2 ? -1 : 1) * binom)) * c_bracket(rd, base);

  VerifyReport rep;
  rep.claim = "C[b,N^m] = (-1)^m binom([sum b]_h, m) C[b] for h=" + std::to_string(rd.h()) + ", b=" +
              tuple_string(base) + ", m=" + std::to_string(m);
  rep.lhs = lhs.to_string();
  rep.rhs = rhs.to_string();
  rep.pass = lhs == rhs;
  return rep;
}

VerifyReport verify_symc_generating(const RootData& rd, std::span<const int> a, int ycap) {
  const int r = static_cast<int>(a.size());
  if (r == 0) throw std::invalid_argument("verify_symc_generating: a must be non-empty");
  for (int x : a) {
    if (x < 1 || x >= rd.N()) throw std::out_of_range("verify_symc_generating: entries must lie in 1..N-1");
  }
  std::vector<int> base(a.begin(), a.end());
  std::sort(base.begin(), base.end());
  if (ycap < 0) ycap = r + rd.h() + 2;

  // |Aut(a)|
  BigInt aut = 1;
  for (std::size_t i = 0, run = 0; i < base.size(); ++i) {
    run = (i > 0 && base[i] == base[i - 1]) ? run + 1 : 1;
    aut *= static_cast<unsigned long>(run);
  }

  YPoly lhs;
  for (int m = 0; r + m <= rd.N(); ++m) {
    std::vector<int> t = base;
    t.insert(t.end(), m, rd.N());
    lhs += YPoly::one_minus_y_pow(m) * (sym_c(rd, t) * CycScalar(Rat(aut)));
  }

  // sum over ordered sequences I of pairwise distinct indices in 1..N
  YPoly series;
  std::vector<int> idx(r, 1);
  const std::function<void(int)> rec = [&](int pos) {
    if (pos == r) {
      YPoly prod(CycScalar(1));
      for (int j = 0; j < r; ++j) {
        std::vector<CycScalar> geo;
        for (int k = 0; k <= ycap; ++k) {
          geo.push_back(rd.eta(-static_cast<long>(idx[j]) * (base[j] - k)));
        }
        prod = YPoly::mul_trunc(prod, YPoly(std::move(geo)), ycap);
      }
      series += prod;
      return;
    }
    for (int i = 1; i <= rd.N(); ++i) {
      if (std::find(idx.begin(), idx.begin() + pos, i) != idx.begin() + pos) continue;
      idx[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  std::vector<CycScalar> geo(rd.h(), CycScalar(Rat(1, rd.h())));
  const YPoly rhs = YPoly::mul_trunc(YPoly(std::move(geo)), series, ycap);

  VerifyReport rep;
  rep.claim = "sum_m SymC[a,N^m](1-Y)^m = (1-Y^h)/(h(1-Y)) sum_{k,I} ... up to Y^" + std::to_string(ycap) +
              " for h=" + std::to_string(rd.h()) + ", a=" + tuple_string(base);
  rep.lhs = to_string(lhs);
  rep.rhs = to_string(rhs);
  rep.pass = lhs.degree() <= ycap && lhs == rhs;
  return rep;
}

VerifyReport verify_cbracket_generating(const RootData& rd, std::span<const int> a) {
  const int r = static_cast<int>(a.size());
  if (r == 0) throw std::invalid_argument("verify_cbracket_generating: a must be non-empty");
  for (int x : a) {
    if (x < 1 || x >= rd.N()) throw std::out_of_range("verify_cbracket_generating: entries must lie in 1..N-1");
  }
  std::vector<int> base(a.begin(), a.end());
  std::sort(base.begin(), base.end());
  YPoly lhs;
  for (int m = 0; r + m <= rd.h(); ++m) {
    std::vector<int> t = base;
    t.insert(t.end(), m, rd.N());
    lhs += YPoly::one_minus_y_pow(m) * c_bracket(rd, t);
  }
  long sum = 0;
  for (int x : base) sum += x;
  const YPoly rhs = YPoly::monomial(mod_residue(sum, rd.h()), c_bracket(rd, base));

  VerifyReport rep;
  rep.claim = "sum_m C[a,N^m](1-Y)^m = Y^[sum a]_h C[a] for h=" + std::to_string(rd.h()) + ", a=" + tuple_string(base);
  rep.lhs = to_string(lhs);
  rep.rhs = to_string(rhs);
  rep.pass = lhs == rhs;
  return rep;
}

}  // namespace anrec
