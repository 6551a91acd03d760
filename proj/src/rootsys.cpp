#include "anrec/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "anrec/combinatorics.hpp"

namespace anrec {

RootData::RootData(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("RootData: rank N must be >= 1");
  ctx_ = &CycContext::get(N + 1);
  // (gamma_a | gamma_b) from (chi_i | chi_j) = -1/h + delta_ij with
  // gamma_a = (1/h) sum_i eta^(i a) chi_i.
  const int hh = h();
  const Rat inv_h(1, hh);
  gram_.assign(N * N, CycScalar(0));
  for (int a = 1; a <= N; ++a) {
    for (int b = 1; b <= N; ++b) {
      CycScalar s(0);
      for (int i = 1; i <= hh; ++i) {
        for (int j = 1; j <= hh; ++j) {
          const Rat form = (i == j ? Rat(1) : Rat(0)) - inv_h;
          s += eta(static_cast<long>(i) * a + static_cast<long>(j) * b) * CycScalar(form);
        }
      }
      gram_[(a - 1) * N + (b - 1)] = s * CycScalar(inv_h * inv_h);
    }
  }
}

HVector chi(const RootData& rd, int i) {
  if (i < 1 || i > rd.h()) throw std::out_of_range("chi: index " + std::to_string(i) + " outside 1..h");
  HVector v;
  for (int a = 1; a <= rd.N(); ++a) v.push_back(rd.eta(-static_cast<long>(i) * a));
  return v;
}

std::vector<CycScalar> to_chi_coords(const RootData& rd, const HVector& v) {
  const Rat inv_h(1, rd.h());
  std::vector<CycScalar> c(rd.h(), CycScalar(0));
  for (int i = 1; i <= rd.h(); ++i) {
    for (int a = 1; a <= rd.N(); ++a) c[i - 1] += v[a - 1] * rd.eta(static_cast<long>(i) * a);
    c[i - 1] *= CycScalar(inv_h);
  }
  return c;
}

HVector from_chi_coords(const RootData& rd, std::span<const CycScalar> c) {
  if (static_cast<int>(c.size()) != rd.h()) throw std::invalid_argument("from_chi_coords: need h coordinates");
  HVector v(rd.N(), CycScalar(0));
  for (int i = 1; i <= rd.h(); ++i) {
    const HVector ci = chi(rd, i);
    for (int a = 0; a < rd.N(); ++a) v[a] += c[i - 1] * ci[a];
  }
  return v;
}

CycScalar pairing(const RootData& rd, const HVector& u, const HVector& v) {
  if (static_cast<int>(u.size()) != rd.N() || static_cast<int>(v.size()) != rd.N()) {
    throw std::invalid_argument("pairing: vectors must have N gamma coordinates");
  }
  CycScalar s(0);
  for (int a = 1; a <= rd.N(); ++a) {
    if (u[a - 1].is_zero()) continue;
    for (int b = 1; b <= rd.N(); ++b) {
      if (!v[b - 1].is_zero()) s += u[a - 1] * rd.gram(a, b) * v[b - 1];
    }
  }
  return s;
}

CycScalar SymState::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? CycScalar(0) : it->second;
}

void SymState::add(Key k, const CycScalar& c) {
  if (c.is_zero()) return;
  std::sort(k.begin(), k.end());
  auto [it, fresh] = terms_.try_emplace(std::move(k), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymState& SymState::operator+=(const SymState& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

SymState operator*(const SymState& a, const SymState& b) {
  SymState out(std::max(a.h_, b.h_));
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      SymState::Key k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      out.add(std::move(k), ca * cb);
    }
  }
  return out;
}

SymState operator*(SymState a, const CycScalar& k) {
  SymState out(a.h_);
  for (auto& [key, c] : a.terms_) out.add(key, c * k);
  return out;
}

SymState SymState::slice(int d) const {
  SymState out(h_);
  for (const auto& [k, c] : terms_) {
    if (static_cast<int>(k.size()) == d) out.terms_.emplace(k, c);
  }
  return out;
}

SymState linear_state(const RootData& rd, const HVector& v) {
  SymState s(rd.h());
  for (int a = 1; a <= rd.N(); ++a) s.add({a}, v[a - 1]);
  return s;
}

SymState elem_sym_state(const RootData& rd, int r) {
  if (r < 1 || r > rd.h()) throw std::out_of_range("elem_sym_state: r must lie in 1..h");
  // prod_i (1 + chi_i), keeping degrees <= r; e_r is the degree-r part.
  SymState acc(rd.h());
  acc.add({}, CycScalar(1));
  for (int i = 1; i <= rd.h(); ++i) {
    SymState factor(rd.h());
    factor.add({}, CycScalar(1));
    factor += linear_state(rd, chi(rd, i));
    SymState next(rd.h());
    for (const auto& [ka, ca] : acc.terms()) {
      for (const auto& [kb, cb] : factor.terms()) {
        if (ka.size() + kb.size() > static_cast<std::size_t>(r)) continue;
        SymState::Key k = ka;
        k.insert(k.end(), kb.begin(), kb.end());
        next.add(std::move(k), ca * cb);
      }
    }
    acc = std::move(next);
  }
  return acc.slice(r);
}

namespace {

// Weakly increasing tuples over 1..N of length r with sum == 0 mod h.
void for_each_admissible(int N, int h, int r, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> b(r, 1);
  if (r == 0) return;
  while (true) {
    int sum = 0;
    for (int x : b) sum += x;
    if (sum % h == 0) fn(b);
    int k = r - 1;
    while (k >= 0 && b[k] == N) --k;
    if (k < 0) return;
    ++b[k];
    for (int j = k + 1; j < r; ++j) b[j] = b[k];
  }
}

}  // namespace

SymState cbracket_sum(const RootData& rd, int r) {
  if (r < 2 || r > rd.h()) throw std::out_of_range("cbracket_state: r must lie in 2..h");
  SymState s(rd.h());
  for_each_admissible(rd.N(), rd.h(), r, [&](const std::vector<int>& b) { s.add(b, c_bracket(rd, b)); });
  return s;
}

SymState cbracket_state(const RootData& rd, int r) { return cbracket_sum(rd, r) * CycScalar(rd.h()); }

CycScalar vandermonde_coeff(const RootData& rd, std::span<const int> indices) {
  const int r = static_cast<int>(indices.size());
  if (r < 1) throw std::invalid_argument("vandermonde_coeff: need at least one index");
  for (int s = 0; s < r; ++s) {
    if (indices[s] < 1 || indices[s] > rd.h()) throw std::out_of_range("vandermonde_coeff: index outside 1..h");
    for (int t = 0; t < s; ++t) {
      if (indices[s] == indices[t]) throw std::invalid_argument("vandermonde_coeff: repeated index");
    }
  }
  CycScalar total(0);
  for (int s = 0; s < r; ++s) {
    CycScalar denom(1);
    for (int t = 0; t < r; ++t) {
      if (t != s) denom *= rd.eta(indices[s]) - rd.eta(indices[t]);
    }
    total += rd.eta(static_cast<long>(indices[s]) * (r - 1)) / denom;
  }
  return total;
}

}  // namespace anrec
