#include <doctest.h>

#include "anrec/rootsys.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace anrec;

namespace {

HVector chi_comb(const RootData& rd, const std::vector<CycScalar>& c, const std::vector<int>& relabel) {
  HVector v(rd.N(), CycScalar(0));
  for (int i = 1; i <= rd.h(); ++i) {
    const HVector x = chi(rd, relabel[i - 1]);
    for (int a = 0; a < rd.N(); ++a) v[a] += c[i - 1] * x[a];
  }
  return v;
}

}  // namespace

TEST_CASE("chi vectors") {
  const RootData a1(1);
  CHECK(chi(a1, 1) == HVector{CycScalar(-1)});
  CHECK(chi(a1, 2) == HVector{CycScalar(1)});
  const RootData a3(3);
  CHECK(chi(a3, 4) == HVector(3, CycScalar(1)));
  CHECK_THROWS_AS(chi(a3, 0), std::out_of_range);
  CHECK_THROWS_AS(chi(a3, 5), std::out_of_range);
}

TEST_CASE("pairing values") {
  const RootData a3(3);
  CHECK(pairing(a3, chi(a3, 1), chi(a3, 1)) == CycScalar(frac(3, 4)));
  const RootData a1(1);
  CHECK(pairing(a1, chi(a1, 1), chi(a1, 2)) == CycScalar(frac(-1, 2)));
  for (int N = 1; N <= 6; ++N) {
    const RootData rd(N);
    HVector root = chi(rd, 1);
    const HVector c2 = chi(rd, 2);
    for (int a = 0; a < N; ++a) root[a] -= c2[a];
    CHECK(pairing(rd, root, root) == CycScalar(2));
  }
}

TEST_CASE("chi coordinates round trip") {
  testgen::Gen gen(301);
  for (int N = 1; N <= 6; ++N) {
    const RootData rd(N);
    HVector v(N);
    for (auto& x : v) x = gen.cyc(rd.ctx());
    const auto c = to_chi_coords(rd, v);
    CycScalar sum(0);
    for (const auto& x : c) sum += x;
    CHECK(sum.is_zero());
    CHECK(from_chi_coords(rd, c) == v);
  }
}

TEST_CASE("elementary symmetric states") {
  const RootData a1(1);
  CHECK(elem_sym_state(a1, 1).is_zero());
  SymState e2(2);
  e2.add({1, 1}, CycScalar(-1));
  CHECK(elem_sym_state(a1, 2) == e2);

  const RootData a2(2);
  CycScalar want(0);
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) want += a2.eta(-i) * a2.eta(-2 * j) + a2.eta(-2 * i) * a2.eta(-j);
  CHECK(elem_sym_state(a2, 2).coeff({1, 2}) == want);
  CHECK_THROWS_AS(elem_sym_state(a2, 0), std::out_of_range);
  CHECK_THROWS_AS(elem_sym_state(a2, 4), std::out_of_range);
}

TEST_CASE("bracket state at h = 2") {
  const RootData a1(1);
  SymState want(2);
  want.add({1, 1}, CycScalar(-1));
  CHECK(cbracket_state(a1, 2) == want);
  // the bare bracket sum differs by the factor h
  SymState bare(2);
  bare.add({1, 1}, CycScalar(frac(-1, 2)));
  CHECK(cbracket_sum(a1, 2) == bare);
  CHECK_THROWS_AS(cbracket_state(a1, 1), std::out_of_range);
}

TEST_CASE("vandermonde examples and errors") {
  const RootData a3(3), a5(5);
  for (int i = 1; i <= 4; ++i) CHECK(vandermonde_coeff(a3, std::vector<int>{i}) == CycScalar(1));
  CHECK(vandermonde_coeff(a3, std::vector<int>{1, 2}) == CycScalar(1));
  CHECK(vandermonde_coeff(a5, std::vector<int>{1, 3, 5}) == CycScalar(1));
  CHECK_THROWS_AS(vandermonde_coeff(a3, std::vector<int>{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(vandermonde_coeff(a3, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("property: chi vectors sum to zero, h = 2..12") {
  for (int h = 2; h <= 12; ++h) {
    const RootData rd(h - 1);
    HVector s(rd.N(), CycScalar(0));
    for (int i = 1; i <= h; ++i) {
      const HVector c = chi(rd, i);
      for (int a = 0; a < rd.N(); ++a) s[a] += c[a];
    }
    for (const auto& x : s) CHECK(x.is_zero());
  }
}

TEST_CASE("property: pairing is symmetric and invariant under relabeling chi") {
  testgen::Gen gen(302);
  for (int h = 2; h <= 8; ++h) {
    const RootData rd(h - 1);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<CycScalar> cu(h), cv(h);
      for (auto& x : cu) x = gen.cyc(rd.ctx(), 3);
      for (auto& x : cv) x = gen.cyc(rd.ctx(), 3);
      std::vector<int> id(h), sigma(h);
      std::iota(id.begin(), id.end(), 1);
      sigma = id;
      gen.shuffle(sigma);
      const HVector u = chi_comb(rd, cu, id), v = chi_comb(rd, cv, id);
      const HVector su = chi_comb(rd, cu, sigma), sv = chi_comb(rd, cv, sigma);
      CHECK(pairing(rd, u, v) == pairing(rd, v, u));
      CHECK(pairing(rd, su, sv) == pairing(rd, u, v));
    }
  }
}

TEST_CASE("property: (chi_i|chi_j) = delta_ij - 1/h") {
  for (int h = 2; h <= 9; ++h) {
    const RootData rd(h - 1);
    for (int i = 1; i <= h; ++i)
      for (int j = 1; j <= h; ++j)
        CHECK(pairing(rd, chi(rd, i), chi(rd, j)) == CycScalar(Rat(i == j ? 1 : 0) - frac(1, h)));
  }
}

TEST_CASE("property: elementary states match a product-of-chi oracle") {
  for (int h = 2; h <= 5; ++h) {
    const RootData rd(h - 1);
    for (int r = 1; r <= h; ++r) CHECK_MESSAGE(elem_sym_state(rd, r) == oracle::brute_elem_sym(rd, r), "h=" << h << " r=" << r);
  }
}

TEST_CASE("property: bracket state equals e_r for 2 <= r <= h, h = 2..6") {
  for (int h = 2; h <= 6; ++h) {
    const RootData rd(h - 1);
    CHECK(elem_sym_state(rd, 1).is_zero());
    for (int r = 2; r <= h; ++r) CHECK_MESSAGE(cbracket_state(rd, r) == elem_sym_state(rd, r), "h=" << h << " r=" << r);
  }
}

TEST_CASE("property: vandermonde coefficient is 1 on random index sets, h <= 12") {
  testgen::Gen gen(303);
  for (int h = 2; h <= 12; ++h) {
    const RootData rd(h - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const auto idx = gen.subset(h, gen.int_in(1, h));
      CHECK(vandermonde_coeff(rd, idx) == CycScalar(1));
    }
  }
}
