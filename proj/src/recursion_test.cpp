#include <doctest.h>

#include "anrec/recursion.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace anrec;

namespace {

PotentialTable zero_table(int N, int G, int cap) {
  PotentialTable t;
  t.N = N;
  t.F.assign(G + 1, RatPoly());
  t.caps.assign(G + 1, cap);
  return t;
}

// x-part of a linear field: sum_a coeff[a] sum_{m <= L} x_{m,a} lambda^(m - a/h)
CycSeries x_part(const RootData& rd, const Field& f, int L) {
  CycSeries s(rd.h());
  for (int a = 1; a <= rd.N(); ++a)
    for (int m = 0; m <= L; ++m) s.add(m * rd.h() - a, CycPoly::var({m, a}) * f.coeff[a - 1]);
  return s;
}

SolveOptions taper1() {
  SolveOptions o;
  o.taper = 1;
  return o;
}

}  // namespace

TEST_CASE("x fields") {
  const RootData a1(1);
  CHECK(x_field(a1, 1).coeff == std::vector<CycScalar>{CycScalar(-1)});
  CHECK(x_field(a1, 2).coeff == std::vector<CycScalar>{CycScalar(1)});
  const RootData a3(3);
  CHECK(x_field(a3, 4).coeff == std::vector<CycScalar>(3, CycScalar(1)));
  for (int a = 1; a <= 3; ++a) {
    CycScalar s(0);
    for (int j = 1; j <= 4; ++j) s += x_field(a3, j).coeff[a - 1];
    CHECK(s.is_zero());
  }
  CHECK(field_parts(a3, 4, 2).empty());
  CHECK(field_parts(a3, 1, 2).size() == 6);
}

TEST_CASE("propagator values") {
  const RootData a1(1), a3(3);
  CHECK(propagator(a1, 1, 2) == CycScalar(frac(-1, 4)));
  CHECK(propagator(a3, 1, 3) == CycScalar(frac(-1, 4)));
  CHECK_THROWS_AS(propagator(a3, 2, 2), std::invalid_argument);
  CHECK(gamma_propagator(a3, 1, 3) == CycScalar(frac(3, 8)));
  CHECK(gamma_propagator(a3, 1, 2).is_zero());
}

TEST_CASE("property: propagator symmetry and the gamma route reproduces P_ij") {
  for (int h = 2; h <= 7; ++h) {
    const RootData rd(h - 1);
    for (int i = 1; i <= h; ++i) {
      for (int j = 1; j <= h; ++j) {
        if (i == j) continue;
        CHECK(propagator(rd, i, j) == propagator(rd, j, i));
        CycScalar viagamma(0);
        const Field fi = x_field(rd, i), fj = x_field(rd, j);
        for (int a = 1; a <= rd.N(); ++a)
          for (int b = 1; b <= rd.N(); ++b) viagamma += fi.coeff[a - 1] * fj.coeff[b - 1] * gamma_propagator(rd, a, b);
        CHECK(viagamma == propagator(rd, i, j));
      }
    }
  }
}

TEST_CASE("Wick operators for small label sets") {
  const RootData rd(4);
  const auto one = wick_operator(rd, std::vector<int>{3});
  REQUIRE(one.terms.size() == 1);
  CHECK(one.terms[0].pairs.empty());

  const auto two = wick_operator(rd, std::vector<int>{2, 5});
  REQUIRE(two.terms.size() == 2);
  int paired = 0;
  for (const auto& t : two.terms) {
    if (t.pairs.empty()) {
      CHECK(t.unpaired == std::vector<int>{2, 5});
      CHECK(t.coeff == CycScalar(1));
    } else {
      ++paired;
      CHECK(t.coeff == propagator(rd, 2, 5));
    }
  }
  CHECK(paired == 1);

  const auto three = wick_operator(rd, std::vector<int>{1, 2, 4});
  CHECK(three.terms.size() == 4);
  for (const auto& t : three.terms) CHECK(t.pairs.size() * 2 + t.unpaired.size() == 3);

  CHECK_THROWS_AS(wick_operator(rd, std::vector<int>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(wick_operator(RootData(1), std::vector<int>{1, 2, 1}), std::invalid_argument);
}

TEST_CASE("property: Wick term counts against brute-force enumeration") {
  for (int r = 0; r <= 6; ++r) CHECK(matching_count(r) == oracle::brute_matchings(r));
  const RootData rd(5);
  for (int r = 1; r <= 5; ++r) {
    std::vector<int> J;
    for (int i = 1; i <= r; ++i) J.push_back(i);
    const auto op = wick_operator(rd, J);
    CHECK(static_cast<long>(op.terms.size()) == oracle::brute_matchings(r));
    for (const auto& t : op.terms) {
      CycScalar c(1);
      for (const auto& [i, j] : t.pairs) c *= propagator(rd, i, j);
      CHECK(t.coeff == c);
    }
  }
}

TEST_CASE("two-point correlator on the zero table is the product of x-parts") {
  for (int N = 1; N <= 3; ++N) {
    const RootData rd(N);
    const PotentialTable zero = zero_table(N, 0, 4);
    const OmegaOptions opt{1, std::nullopt};
    for (int i = 1; i <= rd.h(); ++i) {
      for (int j = i + 1; j <= rd.h(); ++j) {
        const std::vector<int> J{i, j};
        const CycSeries om = omega(rd, zero, J, 0, 4, opt);
        const CycSeries want = x_part(rd, x_field(rd, i), 1) * x_part(rd, x_field(rd, j), 1);
        CHECK(om == want);
      }
    }
  }
}

TEST_CASE("one propagator pairing shifts the genus by one") {
  // On the zero table, Omega^(1) of two fields is the bare propagator.
  const RootData rd(2);
  const PotentialTable zero = zero_table(2, 1, 4);
  const OmegaOptions opt{1, std::nullopt};
  const CycSeries om = omega(rd, zero, std::vector<int>{1, 3}, 1, 4, opt);
  CHECK(om == CycSeries::monomial(3, -6, CycPoly(propagator(rd, 1, 3))));
  CHECK(omega(rd, zero, std::vector<int>{1, 3}, 2, 4, opt).is_zero());
}

TEST_CASE("solver edge cases") {
  const RootData rd(2);
  const PotentialTable t = solve_all_genus(rd, 2, 0);
  for (const auto& f : t.F) CHECK(f.is_zero());
  SolveOptions bad;
  bad.taper = 0;
  CHECK_THROWS_AS(solve_all_genus(rd, 1, 4, bad), std::invalid_argument);
  CHECK_THROWS_AS(solve_all_genus(rd, -1, 4), std::invalid_argument);
  CHECK(genus_cap(6, 2, 2) == 2);
  CHECK(residual_caps(4, 1) == std::vector<int>{6, 5});
}

TEST_CASE("property: batched right side equals the literal subset sum") {
  struct Case {
    int N, G, D;
  };
  for (const auto& c : {Case{1, 1, 4}, Case{2, 1, 3}, Case{1, 2, 4}}) {
    const RootData rd(c.N);
    const PotentialTable table = solve_all_genus(rd, c.G, c.D, taper1());
    for (int g = 0; g <= c.G; ++g) {
      const int L = std::max(0, 3 * g - 3 + table.caps[g]);
      const auto fast = recursion_rhs(rd, table, g, table.caps[g] - 1, L);
      const auto slow = recursion_rhs_direct(rd, table, g, table.caps[g] - 1, L);
      CHECK_MESSAGE(fast == slow, "N=" << c.N << " g=" << g);
    }
  }
}

TEST_CASE("property: the finished table satisfies the identity") {
  for (int N = 1; N <= 2; ++N) {
    const RootData rd(N);
    const PotentialTable table = solve_all_genus(rd, 1, 4, taper1());
    for (int g = 0; g <= 1; ++g) {
      const int L = std::max(0, 3 * g - 3 + table.caps[g]);
      for (const auto& [v, p] : recursion_rhs(rd, table, g, table.caps[g] - 1, L))
        CHECK(p == diff(table.F[g], v) * Rat(-v.a + (v.m + 1) * rd.h()));
    }
  }
}

TEST_CASE("dilaton shift") {
  const RootData rd(2);
  CHECK(default_shift(rd).var == VarId{1, 2});
  CHECK(shift_in_x_units(rd, default_shift(rd)) == Rat(1));
  CHECK(shift_in_x_units(rd, DilatonShift{{2, 1}, Rat(1)}) == frac(1, 10));
  const RatPoly x = RatPoly::var({1, 2});
  CHECK(dilaton_shift(rd, x, default_shift(rd)) == x + RatPoly(Rat(1)));
  const RatPoly y = RatPoly::var({0, 1});
  CHECK(dilaton_shift(rd, y, default_shift(rd)) == y);
}

TEST_CASE("property: shift then unshift is the identity") {
  testgen::Gen gen(601);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = gen.int_in(1, 4);
    const RootData rd(N);
    const RatPoly p = gen.poly(N, 2, 5, 4);
    const DilatonShift s{gen.var(N, 2), gen.nonzero_rat()};
    CHECK(dilaton_unshift(rd, dilaton_shift(rd, p, s), s) == p);
    CHECK(dilaton_shift(rd, dilaton_unshift(rd, p, s), s) == p);
  }
}

TEST_CASE("W residuals vanish on solved tables and both state routes agree") {
  const RootData rd(2);
  const PotentialTable table = solve_all_genus(rd, 1, residual_caps(3, 1)[0], taper1());
  for (int a = 1; a <= 2; ++a) {
    for (int m = 0; m <= 1; ++m) {
      const WResidual chi = w_residual(rd, table, a, m, 3, StateRoute::Chi);
      const WResidual gam = w_residual(rd, table, a, m, 3, StateRoute::Gamma);
      CHECK(chi.vanishes());
      CHECK(gam.vanishes());
    }
  }
}

TEST_CASE("W residuals: sensitivity") {
  const RootData rd(2);
  PotentialTable table = solve_all_genus(rd, 1, residual_caps(3, 1)[0], taper1());
  PotentialTable bad = table;
  bad.F[0].add_term(Monomial({0, 1}, 2) * Monomial({0, 2}), Rat(1));
  bool any = false;
  for (int a = 1; a <= 2; ++a) {
    const WResidual chi = w_residual(rd, bad, a, 0, 3, StateRoute::Chi);
    const WResidual gam = w_residual(rd, bad, a, 0, 3, StateRoute::Gamma);
    CHECK(chi.by_genus == gam.by_genus);
    any = any || !chi.vanishes();
  }
  CHECK(any);
  // shifting the level-0 variable instead does not give a solution
  const RootData a1(1);
  const PotentialTable t1 = solve_all_genus(a1, 1, residual_caps(3, 1)[0], taper1());
  CHECK_FALSE(w_residual(a1, t1, 1, 0, 3, StateRoute::Chi, DilatonShift{{0, 1}, Rat(1)}).vanishes());
  CHECK(w_residual(a1, t1, 1, 0, 3).vanishes());
}

TEST_CASE("kernel monomials") {
  for (int N = 1; N <= 5; ++N) {
    const RootData rd(N);
    const int h = rd.h();
    const auto [num, unit] = kernel_monomials(rd, 0, N);
    CHECK(num == KernelMonomial{h, CycScalar(1), 1, 1});
    CHECK(unit == KernelMonomial{h, CycScalar(1), 1, 1});
  }
  const KernelMonomial k{3, CycScalar(2), 7, 1};
  CHECK(k.normalized().h_exp == 1);
  CHECK(k.normalized().coeff == CycScalar(18));
  CHECK(k == k.normalized());
}

TEST_CASE("property: the period kernel is the recursion kernel times a constant") {
  for (int h = 2; h <= 6; ++h) {
    const RootData rd(h - 1);
    for (int a = 1; a < h; ++a) {
      for (int m = 0; m <= 3; ++m) {
        BigInt den = 1;
        for (int k = 1; k <= m + 1; ++k) den *= (-a + k * h);
        for (int i = 1; i <= h; ++i) {
          std::vector<int> js;
          for (int j = 1; j <= h && static_cast<int>(js.size()) < h - 2; ++j)
            if (j != i) js.push_back(j);
          const int r = static_cast<int>(js.size());
          const KernelMonomial ratio = period_kernel(rd, m, a, i, js) / recursion_kernel(rd, m, a, i, js);
          CHECK(ratio.lambda_exp == 0);
          CHECK(ratio == KernelMonomial{h, CycScalar(Rat(h) / Rat(den)), (m + 1) * h - a - r, 0});
        }
      }
    }
  }
}
