#include "anrec/recursion.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

#include "anrec/combinatorics.hpp"

namespace anrec {

namespace {

constexpr long kFar = 1L << 28;

int clamp_exp(long v) { return static_cast<int>(std::clamp(v, -kFar, kFar)); }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long ceil_div(long a, long b) { return -floor_div(-a, b); }

using Blocks = std::vector<std::vector<int>>;

// Set partitions of {0..k-1} via restricted growth strings.
void for_each_set_partition(int k, const std::function<void(const Blocks&)>& fn) {
  std::vector<int> rg(k, 0);
  const std::function<void(int, int)> rec = [&](int pos, int nblocks) {
    if (pos == k) {
      Blocks blocks(nblocks);
      for (int i = 0; i < k; ++i) blocks[rg[i]].push_back(i);
      fn(blocks);
      return;
    }
    for (int b = 0; b <= nblocks && b < k; ++b) {
      rg[pos] = b;
      rec(pos + 1, std::max(nblocks, b + 1));
    }
  };
  if (k == 0) {
    fn({});
    return;
  }
  rec(0, 0);
}

// Sets of disjoint pairs among positions 0..r-1; pairs (i,j) with i < j and
// first entries increasing, unpaired positions increasing.
void for_each_matching(int r,
                       const std::function<void(const std::vector<std::pair<int, int>>&, const std::vector<int>&)>& fn) {
  std::vector<bool> used(r, false);
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> single;
  const std::function<void(int)> rec = [&](int pos) {
    while (pos < r && used[pos]) ++pos;
    if (pos == r) {
      fn(pairs, single);
      return;
    }
    used[pos] = true;
    single.push_back(pos);
    rec(pos + 1);
    single.pop_back();
    for (int j = pos + 1; j < r; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(pos, j);
      rec(pos + 1);
      pairs.pop_back();
      used[j] = false;
    }
    used[pos] = false;
  };
  rec(0);
}

// Every assignment positions -> 1..N weighted by weight(position, value);
// zero weights prune.
void for_each_assignment(const std::vector<int>& positions, int N,
                         const std::function<CycScalar(int, int)>& weight,
                         const std::function<void(const std::vector<int>&, const CycScalar&)>& fn) {
  std::vector<int> values(positions.size());
  const std::function<void(std::size_t, const CycScalar&)> rec = [&](std::size_t i, const CycScalar& w) {
    if (i == positions.size()) {
      std::vector<int> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      fn(sorted, w);
      return;
    }
    for (int a = 1; a <= N; ++a) {
      const CycScalar c = weight(positions[i], a);
      if (c.is_zero()) continue;
      values[i] = a;
      rec(i + 1, w * c);
    }
  };
  rec(0, CycScalar(1));
}

void check_label(const RootData& rd, int j, const char* what) {
  if (j < 1 || j > rd.h()) {
    throw std::out_of_range(std::string(what) + ": label " + std::to_string(j) + " outside 1.." + std::to_string(rd.h()));
  }
}

void check_flat(const RootData& rd, int a, const char* what) {
  if (a < 1 || a > rd.N()) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(a) + " outside 1.." + std::to_string(rd.N()));
  }
}

RatPoly demote_checked(const CycPoly& p, const std::string& what) {
  try {
    return demote(p);
  } catch (const NotRational& e) {
    throw ConsistencyError(what + " has irrational coefficient " + e.value.to_string());
  }
}

// Conjugation of normal-ordered Phi products by exp(sum hbar^(g-1) F^(g)):
// connected blocks are memoized by (block genus, sorted flat indices).
class Conjugator {
 public:
  Conjugator(const RootData& rd, const PotentialTable& table, const OmegaOptions& opt)
      : rd_(rd), table_(table), opt_(opt) {
    if (opt.shift) {
      check_flat(rd, opt.shift->var.a, "dilaton shift");
      shift_x_ = shift_in_x_units(rd, *opt.shift);
    }
  }

  void forget_genus(int gF) {
    for (auto it = memo_.begin(); it != memo_.end();) {
      const int b = static_cast<int>(it->first.second.size());
      if (it->first.first - b + 1 == gF) it = memo_.erase(it);
      else ++it;
    }
  }

  const RatSeries& block(int gB, const std::vector<int>& a) {
    const auto key = std::make_pair(gB, a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int b = static_cast<int>(a.size());
    const int gF = gB - b + 1;
    if (gF < 0) throw ConsistencyError("block of " + std::to_string(b) + " derivatives cannot carry genus " + std::to_string(gB));
    RatSeries s = gF <= table_.genus_max() ? derivatives(gF, a) : RatSeries(1);
    if (b == 1 && gB == 0) {
      for (int m = 0; m <= opt_.level_cap; ++m) {
        RatPoly x = RatPoly::var({m, a[0]});
        if (opt_.shift && opt_.shift->var == VarId{m, a[0]}) x -= RatPoly(shift_x_);
        s.add(m, x);
      }
    }
    return memo_.emplace(key, std::move(s)).first->second;
  }

  RatSeries omega_phi(std::span<const int> A, int g, int cap, int lo, int hi) {
    const int k = static_cast<int>(A.size());
    RatSeries out(1);
    if (g < 0) return out;
    if (k == 0) {
      if (g == 0 && lo <= 0 && 0 <= hi) out.add(0, RatPoly(Rat(1)));
      return out;
    }
    // Group (partition, genus assignment) choices giving the same block multiset.
    std::map<std::vector<std::pair<int, std::vector<int>>>, long> combos;
    for_each_set_partition(k, [&](const Blocks& blocks) {
      const int nb = static_cast<int>(blocks.size());
      const int extra = g - (k - nb);
      if (extra < 0) return;
      std::vector<std::vector<int>> vals(nb);
      for (int i = 0; i < nb; ++i) {
        for (int p : blocks[i]) vals[i].push_back(A[p]);
        std::sort(vals[i].begin(), vals[i].end());
      }
      std::vector<int> gen(nb);
      const std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == nb - 1) {
          gen[i] = static_cast<int>(blocks[i].size()) - 1 + left;
          std::vector<std::pair<int, std::vector<int>>> key;
          for (int j = 0; j < nb; ++j) key.emplace_back(gen[j], vals[j]);
          std::sort(key.begin(), key.end());
          ++combos[key];
          return;
        }
        for (int e = 0; e <= left; ++e) {
          gen[i] = static_cast<int>(blocks[i].size()) - 1 + e;
          rec(i + 1, left - e);
        }
      };
      rec(0, extra);
    });

    for (const auto& [key, count] : combos) {
      int grade2 = 0;
      std::vector<const RatSeries*> factors;
      for (const auto& [gB, vals] : key) {
        const int b = static_cast<int>(vals.size());
        const int gF = gB - b + 1;
        grade2 += (b == 1 && gB == 0) ? -1 : 2 * (gF - 1) + b;
        factors.push_back(&block(gB, vals));
      }
      if (grade2 != 2 * g - k) {
        throw ConsistencyError("hbar grade " + std::to_string(grade2) + "/2 differs from g - r/2 = " +
                               std::to_string(2 * g - k) + "/2");
      }
      RatSeries prod = windowed_product<Rat>(factors, 1, cap, lo, hi);
      if (!prod.is_zero()) out += prod * Rat(count);
    }
    return out;
  }

  CycSeries omega_fields(const std::vector<Field>& fields, const std::function<CycScalar(int, int)>& prop, int g,
                         int cap, long qlo, long qhi) {
    const int h = rd_.h();
    const int r = static_cast<int>(fields.size());
    for (const auto& f : fields) {
      if (static_cast<int>(f.coeff.size()) != rd_.N()) throw std::invalid_argument("omega: field needs N coefficients");
    }
    std::map<std::pair<int, std::vector<int>>, CycScalar> groups;
    for_each_matching(r, [&](const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& single) {
      const int s = static_cast<int>(pairs.size());
      if (s > g) return;
      CycScalar pc(1);
      for (const auto& [k, l] : pairs) pc *= prop(k, l);
      if (pc.is_zero()) return;
      for_each_assignment(
          single, rd_.N(), [&](int pos, int a) { return fields[pos].coeff[a - 1]; },
          [&](const std::vector<int>& A, const CycScalar& w) { groups[{s, A}] += pc * w; });
    });

    CycSeries out(h);
    for (const auto& [key, c] : groups) {
      if (c.is_zero()) continue;
      const auto& [s, A] = key;
      long sumA = 0;
      for (int x : A) sumA += x;
      // q = e h - 2 s h - sumA
      const long elo = ceil_div(qlo + 2L * s * h + sumA, h);
      const long ehi = floor_div(qhi + 2L * s * h + sumA, h);
      if (elo > ehi) continue;
      const RatSeries om = omega_phi(A, g - s, cap, clamp_exp(elo), clamp_exp(ehi));
      for (const auto& [e, poly] : om.terms()) {
        CycPoly term;
        add_scaled(term, c, poly);
        out.add(static_cast<int>(static_cast<long>(e) * h - 2L * s * h - sumA), term);
      }
    }
    return out;
  }

 private:
  RatSeries derivatives(int gF, const std::vector<int>& a) {
    const int h = rd_.h();
    RatSeries cur = RatSeries::monomial(1, 0, table_.F[gF]);
    for (int ak : a) {
      RatSeries next(1);
      for (const auto& [q, poly] : cur.terms()) {
        for (VarId v : variables(poly)) {
          if (v.a != h - ak) continue;
          next.add(q - v.m - 1, diff(poly, v) * Rat(ak + v.m * h));
        }
      }
      cur = std::move(next);
      if (cur.is_zero()) break;
    }
    return cur;
  }

  const RootData& rd_;
  const PotentialTable& table_;
  OmegaOptions opt_;
  Rat shift_x_ = 0;
  std::map<std::pair<int, std::vector<int>>, RatSeries> memo_;
};

// kappa(s, A)[a-1]: the recursion kernel aggregated over label sets S of size
// 2s + |A|, matchings of size s within S, and assignments of A to the
// remaining labels.
struct KappaTable {
  std::map<std::pair<int, std::vector<int>>, std::vector<CycScalar>> entries;
};

KappaTable build_kappa(const RootData& rd) {
  const int h = rd.h();
  const int N = rd.N();
  KappaTable kt;
  for (unsigned mask = 1; mask < (1u << h); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<int> S;
    for (int i = 1; i <= h; ++i) {
      if (mask & (1u << (i - 1))) S.push_back(i);
    }
    std::vector<CycScalar> cS(N, CycScalar(0));
    for (int i : S) {
      CycScalar den(1);
      for (int j : S) {
        if (j != i) den *= rd.eta(i) - rd.eta(j);
      }
      const CycScalar inv = den.inverse();
      for (int a = 1; a <= N; ++a) cS[a - 1] += rd.eta(-static_cast<long>(i) * a) * inv;
    }
    std::map<std::pair<int, std::vector<int>>, CycScalar> local;
    for_each_matching(static_cast<int>(S.size()),
                      [&](const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& single) {
                        CycScalar pc(1);
                        for (const auto& [k, l] : pairs) pc *= propagator(rd, S[k], S[l]);
                        const int s = static_cast<int>(pairs.size());
                        for_each_assignment(
                            single, N, [&](int pos, int a) { return rd.eta(-static_cast<long>(S[pos]) * a); },
                            [&](const std::vector<int>& A, const CycScalar& w) { local[{s, A}] += pc * w; });
                      });
    for (const auto& [key, w] : local) {
      auto& row = kt.entries[key];
      if (row.empty()) row.assign(N, CycScalar(0));
      for (int a = 0; a < N; ++a) row[a] += cS[a] * w;
    }
  }
  return kt;
}

const KappaTable& kappa_table(const RootData& rd) {
  static std::mutex mu;
  static std::map<int, KappaTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(rd.h());
  if (it == cache.end()) it = cache.emplace(rd.h(), build_kappa(rd)).first;
  return it->second;
}

std::map<VarId, RatPoly> rhs_with(Conjugator& conj, const RootData& rd, int g, int cap, int level_cap) {
  const int h = rd.h();
  const int N = rd.N();
  std::map<VarId, CycPoly> acc;
  for (const auto& [key, row] : kappa_table(rd).entries) {
    const auto& [s, A] = key;
    if (s > g) continue;
    const long size = 2L * s + static_cast<long>(A.size());
    long sumA = 0;
    for (int x : A) sumA += x;
    // lambda^E with E = -(a + |S| - 1 + sum A)/h - 2s; skip fractional E.
    std::vector<long> E(N + 1, 0);
    std::vector<bool> use(N + 1, false);
    long lo = kFar, hi = -kFar;
    for (int a = 1; a <= N; ++a) {
      const long num = a + size - 1 + sumA;
      if (num % h != 0 || row[a - 1].is_zero()) continue;
      use[a] = true;
      E[a] = -num / h - 2L * s;
      lo = std::min(lo, -level_cap - 2 - E[a]);
      hi = std::max(hi, -2 - E[a]);
    }
    if (lo > hi) continue;
    const RatSeries om = conj.omega_phi(A, g - s, cap, clamp_exp(lo), clamp_exp(hi));
    if (om.is_zero()) continue;
    for (int a = 1; a <= N; ++a) {
      if (!use[a]) continue;
      const CycScalar k = -row[a - 1] * CycScalar(frac(1, h));
      for (int m = 0; m <= level_cap; ++m) {
        const RatPoly c = om.coeff(static_cast<int>(-m - 2 - E[a]));
        if (!c.is_zero()) add_scaled(acc[{m, a}], k, c);
      }
    }
  }
  std::map<VarId, RatPoly> out;
  for (int m = 0; m <= level_cap; ++m) {
    for (int a = 1; a <= N; ++a) {
      out[{m, a}] = demote_checked(acc[{m, a}], "genus-" + std::to_string(g) + " right side for " + VarId{m, a}.name());
    }
  }
  return out;
}

void check_homogeneous(const RatPoly& slice, VarId v, int g, int h) {
  const Rat target = (Rat(2) + frac(2, h)) * (1 - g) - descendant_weight(v, h);
  for (const auto& [mono, c] : slice.terms()) {
    const Rat w = weighted_degree(mono, [h](VarId x) { return descendant_weight(x, h); });
    if (w != target) {
      throw ConsistencyError("inhomogeneous term " + mono.to_string() + " in dF" + std::to_string(g) + "/d" + v.name() +
                             ": weight " + to_string(w) + ", expected " + to_string(target));
    }
  }
}

}  // namespace

std::vector<FieldPart> field_parts(const RootData& rd, int a, int max_level) {
  check_label(rd, a, "field_parts");
  std::vector<FieldPart> parts;
  if (a == rd.h()) return parts;
  for (int m = 0; m <= max_level; ++m) {
    parts.push_back({false, m, {m, a}, Rat(1), -1});
    parts.push_back({true, -m - 1, {m, rd.h() - a}, Rat(a + m * rd.h()), +1});
  }
  return parts;
}

Field x_field(const RootData& rd, int j) {
  check_label(rd, j, "x_field");
  Field f;
  for (int a = 1; a <= rd.N(); ++a) f.coeff.push_back(rd.eta(-static_cast<long>(j) * a));
  return f;
}

Field gamma_field(const RootData& rd, int a) {
  check_flat(rd, a, "gamma_field");
  Field f;
  f.coeff.assign(rd.N(), CycScalar(0));
  f.coeff[a - 1] = CycScalar(1);
  return f;
}

CycScalar propagator(const RootData& rd, int i, int j) {
  check_label(rd, i, "propagator");
  check_label(rd, j, "propagator");
  if (i == j) throw std::invalid_argument("propagator: labels must differ");
  const CycScalar d = rd.eta(i) - rd.eta(j);
  return rd.eta(i + j) / (d * d);
}

CycScalar gamma_propagator(const RootData& rd, int a, int b) {
  check_flat(rd, a, "gamma_propagator");
  check_flat(rd, b, "gamma_propagator");
  if (a + b != rd.h()) return CycScalar(0);
  return CycScalar(frac(static_cast<long>(a) * b, 2L * rd.h()));
}

WickOperator wick_operator(const RootData& rd, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) > rd.h()) throw std::invalid_argument("wick_operator: more than h labels");
  std::vector<int> J(labels.begin(), labels.end());
  for (int j : J) check_label(rd, j, "wick_operator");
  std::sort(J.begin(), J.end());
  if (std::adjacent_find(J.begin(), J.end()) != J.end()) throw std::invalid_argument("wick_operator: repeated label");
  WickOperator op{J, {}};
  for_each_matching(static_cast<int>(J.size()),
                    [&](const std::vector<std::pair<int, int>>& pairs, const std::vector<int>& single) {
                      WickTerm t;
                      t.coeff = CycScalar(1);
                      for (const auto& [k, l] : pairs) {
                        t.pairs.emplace_back(J[k], J[l]);
                        t.coeff *= propagator(rd, J[k], J[l]);
                      }
                      for (int k : single) t.unpaired.push_back(J[k]);
                      op.terms.push_back(std::move(t));
                    });
  return op;
}

long matching_count(int r) {
  long a = 1, b = 1;  // T(0), T(1)
  if (r <= 1) return 1;
  for (int n = 2; n <= r; ++n) {
    const long c = b + (n - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

int PotentialTable::max_level() const {
  int L = 0;
  for (const auto& f : F) {
    for (VarId v : variables(f)) L = std::max(L, v.m);
  }
  return L;
}

CycSeries omega(const RootData& rd, const PotentialTable& table, std::span<const int> labels, int g, int cap,
                const OmegaOptions& opt) {
  const WickOperator op = wick_operator(rd, labels);  // validates labels
  std::vector<Field> fields;
  for (int j : op.labels) fields.push_back(x_field(rd, j));
  Conjugator conj(rd, table, opt);
  return conj.omega_fields(
      fields, [&](int k, int l) { return propagator(rd, op.labels[k], op.labels[l]); }, g, cap, -kFar, kFar);
}

CycSeries omega_fields(const RootData& rd, const PotentialTable& table, const std::vector<Field>& fields,
                       const std::function<CycScalar(int, int)>& prop, int g, int cap, const OmegaOptions& opt,
                       int qlo, int qhi) {
  Conjugator conj(rd, table, opt);
  return conj.omega_fields(fields, prop, g, cap, qlo, qhi);
}

RatSeries omega_phi(const RootData& rd, const PotentialTable& table, std::span<const int> a, int g, int cap,
                    const OmegaOptions& opt, int lo, int hi) {
  for (int x : a) check_flat(rd, x, "omega_phi");
  Conjugator conj(rd, table, opt);
  return conj.omega_phi(a, g, cap, lo, hi);
}

int genus_cap(int D, int g, int taper) { return D - taper * g; }

std::map<VarId, RatPoly> recursion_rhs(const RootData& rd, const PotentialTable& table, int g, int cap, int level_cap) {
  Conjugator conj(rd, table, OmegaOptions{level_cap, std::nullopt});
  return rhs_with(conj, rd, g, cap, level_cap);
}

std::map<VarId, RatPoly> recursion_rhs_direct(const RootData& rd, const PotentialTable& table, int g, int cap,
                                             int level_cap) {
  const int h = rd.h();
  const int N = rd.N();
  const OmegaOptions opt{level_cap, std::nullopt};
  std::map<VarId, CycPoly> acc;
  for (unsigned mask = 1; mask < (1u << h); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<int> S;
    for (int i = 1; i <= h; ++i) {
      if (mask & (1u << (i - 1))) S.push_back(i);
    }
    const int r = static_cast<int>(S.size()) - 1;
    const CycSeries om = omega(rd, table, S, g, cap, opt);
    for (int i : S) {
      CycScalar den(1);
      for (int j : S) {
        if (j != i) den *= rd.eta(i) - rd.eta(j);
      }
      for (int a = 1; a <= N; ++a) {
        const CycScalar k = -rd.eta(-static_cast<long>(i) * a) / den * CycScalar(frac(1, h));
        for (int m = 0; m <= level_cap; ++m) {
          // residue of lambda^(m+1-(a+r)/h) * Omega
          const int q = -h - ((m + 1) * h - a - r);
          const CycPoly c = om.coeff(q);
          for (const auto& [mono, x] : c.terms()) acc[{m, a}].add_term(mono, k * x);
        }
      }
    }
  }
  std::map<VarId, RatPoly> out;
  for (int m = 0; m <= level_cap; ++m) {
    for (int a = 1; a <= N; ++a) out[{m, a}] = demote_checked(acc[{m, a}], "direct right side");
  }
  return out;
}

PotentialTable solve_all_genus(const RootData& rd, int G, int D, const SolveOptions& opt) {
  if (G < 0) throw std::invalid_argument("solve_all_genus: genus cap must be >= 0");
  if (D < 0) throw std::invalid_argument("solve_all_genus: degree cap must be >= 0");
  if (opt.taper < 1) throw std::invalid_argument("solve_all_genus: taper must be >= 1");
  const int h = rd.h();
  PotentialTable table;
  table.N = rd.N();
  table.F.assign(G + 1, RatPoly());
  for (int g = 0; g <= G; ++g) table.caps.push_back(std::max(0, genus_cap(D, g, opt.taper)));

  for (int g = 0; g <= G; ++g) {
    const int Dg = table.caps[g];
    if (Dg < 1) continue;
    const int L = std::max(0, 3 * g - 3 + Dg);
    std::vector<VarId> vars;
    for (int m = 0; m <= L; ++m) {
      for (int a = 1; a <= rd.N(); ++a) vars.push_back({m, a});
    }
    Conjugator conj(rd, table, OmegaOptions{L, std::nullopt});
    RatPoly& F = table.F[g];
    for (int d = 0; d < Dg; ++d) {
      conj.forget_genus(g);
      const auto rhs = rhs_with(conj, rd, g, d, L);
      std::map<VarId, RatPoly> grad;
      for (const auto& [v, poly] : rhs) {
        const Rat scale(-v.a + (v.m + 1) * h);
        if (!(poly.truncated(d - 1) == diff(F, v) * scale)) {
          throw ConsistencyError("well-foundedness: lower slices of dF" + std::to_string(g) + "/d" + v.name() +
                                 " changed at degree " + std::to_string(d));
        }
        const RatPoly slice = poly.slice(d);
        check_homogeneous(slice, v, g, h);
        grad[v] = slice * Rat(1 / scale);
      }
      F += integrate_slice(grad, vars, d);
    }
    if (opt.check_identity) {
      conj.forget_genus(g);
      const auto rhs = rhs_with(conj, rd, g, Dg - 1, L);
      for (const auto& [v, poly] : rhs) {
        if (!(poly == diff(F, v) * Rat(-v.a + (v.m + 1) * h))) {
          throw ConsistencyError("well-foundedness: the finished genus-" + std::to_string(g) +
                                 " table does not reproduce dF/d" + v.name());
        }
      }
    }
  }

  if (opt.check_genus0 && table.caps[0] >= 3) {
    const PotentialG0 ref = solve(rd, InputProfile::descendant(rd.N(), table.caps[0]));
    if (!(ref.F == table.F[0])) {
      throw ConsistencyError("genus-0 potential differs from the residue engine: difference " +
                             (ref.F - table.F[0]).to_string());
    }
  }
  return table;
}

DilatonShift default_shift(const RootData& rd) { return DilatonShift{VarId{1, rd.N()}, Rat(1)}; }

Rat shift_in_x_units(const RootData& rd, const DilatonShift& s) {
  check_flat(rd, s.var.a, "dilaton shift");
  if (s.var.m < 0) throw std::out_of_range("dilaton shift: negative level");
  BigInt f = 1;
  for (int l = 1; l <= s.var.m; ++l) f *= (-s.var.a + l * rd.h());
  return Rat(s.amount / Rat(f));
}

RatPoly dilaton_shift(const RootData& rd, const RatPoly& p, const DilatonShift& s) {
  return shift_variable(p, s.var, shift_in_x_units(rd, s));
}

RatPoly dilaton_unshift(const RootData& rd, const RatPoly& p, const DilatonShift& s) {
  return shift_variable(p, s.var, Rat(-shift_in_x_units(rd, s)));
}

bool WResidual::vanishes() const {
  return std::all_of(by_genus.begin(), by_genus.end(), [](const RatPoly& p) { return p.is_zero(); });
}

std::vector<int> residual_caps(int cap, int G) {
  std::vector<int> caps;
  for (int g = 0; g <= G; ++g) caps.push_back(cap + G + 1 - g);
  return caps;
}

WResidual w_residual(const RootData& rd, const PotentialTable& table, int a, int m, int cap, StateRoute route,
                     std::optional<DilatonShift> shift) {
  check_flat(rd, a, "w_residual");
  if (m < 0) throw std::invalid_argument("w_residual: m must be >= 0");
  if (cap < 0) throw std::invalid_argument("w_residual: degree cap must be >= 0");
  if (table.N != rd.N()) throw std::invalid_argument("w_residual: table rank does not match root data");
  const int h = rd.h();
  const int r = h + 1 - a;
  const DilatonShift sh = shift.value_or(default_shift(rd));
  const OmegaOptions opt{std::max(table.max_level(), sh.var.m), sh};
  Conjugator conj(rd, table, opt);
  const long q = -static_cast<long>(m + 1) * h;

  WResidual res{a, m, cap, {}};
  for (int g = 0; g <= table.genus_max(); ++g) {
    CycPoly acc;
    if (route == StateRoute::Chi) {
      for (unsigned mask = 1; mask < (1u << h); ++mask) {
        if (std::popcount(mask) != r) continue;
        std::vector<int> I;
        std::vector<Field> fields;
        for (int i = 1; i <= h; ++i) {
          if (mask & (1u << (i - 1))) {
            I.push_back(i);
            fields.push_back(x_field(rd, i));
          }
        }
        const CycSeries s = conj.omega_fields(
            fields, [&](int k, int l) { return propagator(rd, I[k], I[l]); }, g, cap, q, q);
        acc += s.coeff(static_cast<int>(q));
      }
    } else {
      const SymState state = cbracket_state(rd, r);
      for (const auto& [b, c] : state.terms()) {
        std::vector<Field> fields;
        for (int x : b) fields.push_back(gamma_field(rd, x));
        const CycSeries s = conj.omega_fields(
            fields, [&](int k, int l) { return gamma_propagator(rd, b[k], b[l]); }, g, cap, q, q);
        const CycPoly part = s.coeff(static_cast<int>(q));
        for (const auto& [mono, x] : part.terms()) acc.add_term(mono, c * x);
      }
    }
    res.by_genus.push_back(demote_checked(acc, "W-constraint residual").truncated(cap));
  }
  return res;
}

KernelMonomial KernelMonomial::normalized() const {
  KernelMonomial k = *this;
  while (k.h_exp >= k.h) {
    k.coeff *= CycScalar(k.h);
    k.h_exp -= k.h;
  }
  while (k.h_exp < 0) {
    k.coeff /= CycScalar(k.h);
    k.h_exp += k.h;
  }
  return k;
}

bool operator==(const KernelMonomial& x, const KernelMonomial& y) {
  const KernelMonomial a = x.normalized();
  const KernelMonomial b = y.normalized();
  return a.h == b.h && a.coeff == b.coeff && a.h_exp == b.h_exp && a.lambda_exp == b.lambda_exp;
}

KernelMonomial operator*(const KernelMonomial& x, const KernelMonomial& y) {
  if (x.h != y.h) throw ContextMismatch("kernel monomials with different h");
  return {x.h, x.coeff * y.coeff, x.h_exp + y.h_exp, x.lambda_exp + y.lambda_exp};
}

KernelMonomial operator/(const KernelMonomial& x, const KernelMonomial& y) {
  if (x.h != y.h) throw ContextMismatch("kernel monomials with different h");
  return {x.h, x.coeff / y.coeff, x.h_exp - y.h_exp, x.lambda_exp - y.lambda_exp};
}

std::pair<KernelMonomial, KernelMonomial> kernel_monomials(const RootData& rd, int m, int a) {
  check_flat(rd, a, "kernel_monomials");
  if (m < 0) throw std::invalid_argument("kernel_monomials: m must be >= 0");
  const int h = rd.h();
  BigInt den = 1;
  for (int k = 1; k <= m + 1; ++k) den *= (-a + k * h);
  const int e = (m + 1) * h - a;
  KernelMonomial num{h, CycScalar(Rat(1) / Rat(den)), e, e};
  KernelMonomial unit{h, CycScalar(1), 1, 1};
  return {num, unit};
}

KernelMonomial period_kernel(const RootData& rd, int m, int a, int i, std::span<const int> js) {
  check_label(rd, i, "period_kernel");
  auto [num, unit] = kernel_monomials(rd, m, a);
  KernelMonomial k = num;
  k.coeff *= rd.eta(-static_cast<long>(i) * a);
  for (int j : js) {
    check_label(rd, j, "period_kernel");
    if (j == i) throw std::invalid_argument("period_kernel: j equals i");
    KernelMonomial d = unit;
    d.coeff = rd.eta(i) - rd.eta(j);
    k = k / d;
  }
  return k;
}

KernelMonomial recursion_kernel(const RootData& rd, int m, int a, int i, std::span<const int> js) {
  check_flat(rd, a, "recursion_kernel");
  check_label(rd, i, "recursion_kernel");
  const int h = rd.h();
  CycScalar c = rd.eta(-static_cast<long>(i) * a) * CycScalar(frac(1, h));
  for (int j : js) {
    check_label(rd, j, "recursion_kernel");
    if (j == i) throw std::invalid_argument("recursion_kernel: j equals i");
    c /= rd.eta(i) - rd.eta(j);
  }
  const int r = static_cast<int>(js.size());
  return {h, c, 0, (m + 1) * h - a - r};
}

}  // namespace anrec
