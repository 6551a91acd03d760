#include "anrec/genus0.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "anrec/combinatorics.hpp"

namespace anrec {

namespace {

void check_flat_index(const RootData& rd, int a, const char* what) {
  if (a < 1 || a > rd.N()) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(a) + " outside 1.." + std::to_string(rd.N()));
  }
}

// Weakly increasing tuples over 1..N of length r.
void for_each_multiset(int N, int r, const std::function<void(const std::vector<int>&)>& fn) {
  if (r <= 0) return;
  std::vector<int> b(r, 1);
  while (true) {
    fn(b);
    int k = r - 1;
    while (k >= 0 && b[k] == N) --k;
    if (k < 0) return;
    ++b[k];
    for (int j = k + 1; j < r; ++j) b[j] = b[k];
  }
}

// prod_{l=1..k} (-a + l h)
BigInt rescale_factor(VarId v, int h) {
  BigInt f = 1;
  for (int l = 1; l <= v.m; ++l) f *= (-v.a + l * h);
  return f;
}

RatPoly rescale(const RatPoly& p, int h, bool x_to_t_direction) {
  RatPoly out;
  for (const auto& [mono, c] : p.terms()) {
    Rat k = c;
    for (const auto& [code, e] : mono.factors()) {
      const Rat f(rescale_factor(VarId::from_code(code), h));
      for (std::uint32_t i = 0; i < e; ++i) k = x_to_t_direction ? Rat(k / f) : Rat(k * f);
    }
    out.add_term(mono, k);
  }
  return out;
}

}  // namespace

InputProfile InputProfile::primary(int N, int D) {
  if (N < 1) throw std::invalid_argument("profile: N must be >= 1");
  if (D < 0) throw std::invalid_argument("profile: degree cap must be >= 0");
  return InputProfile{N, D, 0, ProfileKind::Primary};
}

InputProfile InputProfile::descendant(int N, int D, int max_level) {
  if (N < 1) throw std::invalid_argument("profile: N must be >= 1");
  if (D < 0) throw std::invalid_argument("profile: degree cap must be >= 0");
  if (max_level < 0) max_level = std::max(0, D - 3);
  return InputProfile{N, D, max_level, ProfileKind::Descendant};
}

std::vector<VarId> InputProfile::live_variables() const {
  std::vector<VarId> vs;
  for (int m = 0; m <= max_level; ++m) {
    for (int a = 1; a <= N; ++a) vs.push_back({m, a});
  }
  return vs;
}

int InputProfile::p_levels() const { return kind == ProfileKind::Primary ? 0 : std::max(0, D - 3); }

RatSeries phi0(const RootData& rd, const InputProfile& profile, const PTable& p, int a) {
  check_flat_index(rd, a, "phi0");
  RatSeries s(1);
  for (int m = 0; m <= profile.max_level; ++m) s.add(m, RatPoly::var({m, a}));
  for (const auto& [v, poly] : p) {
    if (v.a == rd.h() - a) s.add(-v.m - 1, poly);
  }
  return s;
}

std::pair<int, int> split_n_a0(int h, int a, std::span<const int> tuple) {
  long total = a + static_cast<long>(tuple.size());
  for (int x : tuple) total += x;
  const int a0 = mod_residue(-total, h);
  const long n = (-total - a0) / h;
  return {static_cast<int>(n), a0};
}

PTable rhs_table(const RootData& rd, const InputProfile& profile, const PTable& p, int cap) {
  const int N = rd.N();
  const int levels = profile.p_levels();
  std::vector<RatSeries> phis;
  phis.emplace_back(1);
  for (int a = 1; a <= N; ++a) phis.push_back(phi0(rd, profile, p, a));

  std::map<VarId, CycPoly> acc;
  // r+1 factors each of degree >= 1.
  const int rmax = std::min(N, cap - 1);
  for (int r = 1; r <= rmax; ++r) {
    for_each_multiset(N, r, [&](const std::vector<int>& A) {
      const CycScalar coef = sym_c(rd, A);
      if (coef.is_zero()) return;
      for (int a = 1; a <= N; ++a) {
        const auto [n, a0] = split_n_a0(rd.h(), a, A);
        if (a0 == 0) continue;
        std::vector<const RatSeries*> factors;
        for (int x : A) factors.push_back(&phis[x]);
        factors.push_back(&phis[a0]);
        // residue of Q lambda^(m+n+1) is the coefficient of lambda^(-m-n-2)
        const RatSeries Q = windowed_product<Rat>(factors, 1, cap, -levels - n - 2, -n - 2);
        for (int m = 0; m <= levels; ++m) {
          const RatPoly c = Q.coeff(-m - n - 2);
          if (!c.is_zero()) add_scaled(acc[{m, a}], -coef, c);
        }
      }
    });
  }

  PTable out;
  for (int m = 0; m <= levels; ++m) {
    for (int a = 1; a <= N; ++a) {
      try {
        out[{m, a}] = demote(acc[{m, a}]);
      } catch (const NotRational& e) {
        throw ConsistencyError("genus-0 residue for p_{" + std::to_string(m) + "," + std::to_string(a) +
                               "} has irrational coefficient " + e.value.to_string());
      }
    }
  }
  return out;
}

RatPoly rhs_residue(const RootData& rd, const InputProfile& profile, const PTable& p, int m, int a, int d) {
  check_flat_index(rd, a, "rhs_residue");
  if (m < 0 || m > profile.p_levels()) throw std::out_of_range("rhs_residue: level outside the tabulated range");
  return rhs_table(rd, profile, p, d).at({m, a}).slice(d);
}

RatPoly integrate_slice(const std::map<VarId, RatPoly>& gradient, const std::vector<VarId>& vars, int d) {
  RatPoly F;
  for (VarId v : vars) {
    auto it = gradient.find(v);
    if (it == gradient.end() || it->second.is_zero()) continue;
    F += RatPoly::var(v) * it->second;
  }
  F *= Rat(1, d + 1);
  for (VarId v : vars) {
    auto it = gradient.find(v);
    const RatPoly want = it == gradient.end() ? RatPoly() : it->second;
    if (!(diff(F, v) == want)) {
      throw ConsistencyError("integrability failure at degree " + std::to_string(d + 1) + " in variable " + v.name() +
                             ": d/d" + v.name() + " F = " + diff(F, v).to_string() + " but the recursion gives " +
                             want.to_string());
    }
  }
  return F;
}

PotentialG0 solve(const RootData& rd, const InputProfile& profile) {
  if (profile.N != rd.N()) throw std::invalid_argument("solve: profile rank does not match root data");
  const int h = rd.h();
  PotentialG0 pot{profile, {}, {}};
  for (int m = 0; m <= profile.p_levels(); ++m) {
    for (int a = 1; a <= rd.N(); ++a) pot.p[{m, a}] = RatPoly();
  }
  const auto vars = profile.live_variables();

  for (int d = 2; d + 1 <= profile.D; ++d) {
    const PTable rhs = rhs_table(rd, profile, pot.p, d);
    std::map<VarId, RatPoly> grad;
    for (auto& [v, poly] : pot.p) {
      const RatPoly& full = rhs.at(v);
      if (!(full.truncated(d - 1) == poly)) {
        throw ConsistencyError("well-foundedness: lower slices of p_{" + std::to_string(v.m) + "," +
                               std::to_string(v.a) + "} changed at degree " + std::to_string(d));
      }
      const RatPoly slice = full.slice(d);
      poly += slice;
      if (profile.live(v)) grad[v] = slice * frac(1, -v.a + (v.m + 1) * h);
    }
    pot.F += integrate_slice(grad, vars, d);
  }

  // Whole-table identity: the completed table reproduces itself, so no slice
  // depended on entries of its own or higher degree.
  if (profile.D >= 3) {
    const PTable rhs = rhs_table(rd, profile, pot.p, profile.D - 1);
    for (const auto& [v, poly] : pot.p) {
      if (!(rhs.at(v) == poly)) {
        throw ConsistencyError("well-foundedness: the completed table does not reproduce p_{" + std::to_string(v.m) +
                               "," + std::to_string(v.a) + "}");
      }
    }
  }
  return pot;
}

RatPoly restrict_to_primary(const RatPoly& F) {
  RatPoly out;
  for (const auto& [mono, c] : F.terms()) {
    bool primary = true;
    for (const auto& [code, e] : mono.factors()) primary = primary && VarId::from_code(code).m == 0;
    if (primary) out.add_term(mono, c);
  }
  return out;
}

CheckReport wdvv_check(const RatPoly& F0, int N, int D) {
  CheckReport rep{"wdvv", true, {}};
  const int h = N + 1;
  const int cap = D - 3;
  if (cap < 0 || N < 2) return rep;
  const RatPoly F = restrict_to_primary(F0);
  auto t = [](int a) { return VarId{0, a}; };
  std::vector<RatPoly> F3(N * N * N);
  auto idx = [N](int a, int b, int c) { return ((a - 1) * N + (b - 1)) * N + (c - 1); };
  for (int a = 1; a <= N; ++a) {
    const RatPoly Fa = diff(F, t(a));
    for (int b = 1; b <= N; ++b) {
      const RatPoly Fab = diff(Fa, t(b));
      for (int c = 1; c <= N; ++c) F3[idx(a, b, c)] = diff(Fab, t(c)).truncated(cap);
    }
  }
  for (int a = 1; a <= N; ++a) {
    for (int b = 1; b <= N; ++b) {
      for (int c = b + 1; c <= N; ++c) {
        for (int d = 1; d <= N; ++d) {
          RatPoly lhs, rhs;
          for (int e = 1; e <= N; ++e) {
            lhs += mul(F3[idx(a, b, e)], F3[idx(h - e, c, d)], cap);
            rhs += mul(F3[idx(a, c, e)], F3[idx(h - e, b, d)], cap);
          }
          if (!(lhs == rhs)) {
            rep.pass = false;
            rep.failures.push_back("(a,b,c,d)=(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                   std::to_string(c) + "," + std::to_string(d) + "): difference " +
                                   (lhs - rhs).to_string());
          }
        }
      }
    }
  }
  return rep;
}

CheckReport wdvv_check(const PotentialG0& pot) { return wdvv_check(pot.F, pot.profile.N, pot.profile.D); }

Rat descendant_weight(VarId v, int h) { return frac(v.a + 1, h) - v.m; }

CheckReport euler_check(const RatPoly& F, int N) {
  CheckReport rep{"euler", true, {}};
  const int h = N + 1;
  const Rat target = Rat(2) + frac(2, h);
  for (const auto& [mono, c] : F.terms()) {
    const Rat w = weighted_degree(mono, [h](VarId v) { return descendant_weight(v, h); });
    if (w != target) {
      rep.pass = false;
      rep.failures.push_back(mono.to_string() + " has weight " + to_string(w) + ", expected " + to_string(target));
    }
  }
  return rep;
}

CheckReport euler_check(const PotentialG0& pot) { return euler_check(pot.F, pot.profile.N); }

RatPoly x_to_t(const RatPoly& p, int h) { return rescale(p, h, true); }
RatPoly t_to_x(const RatPoly& p, int h) { return rescale(p, h, false); }

}  // namespace anrec
