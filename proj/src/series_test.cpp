#include <doctest.h>

#include "anrec/json_io.hpp"
#include "anrec/lambda_series.hpp"
#include "anrec/poly.hpp"
#include "anrec/ypoly.hpp"
#include "gen.hpp"

using namespace anrec;

namespace {

RatPoly x(int m, int a) { return RatPoly::var({m, a}); }
RatPoly t(int a) { return x(0, a); }

RatSeries mono(int h, int q, const RatPoly& c) { return RatSeries::monomial(h, q, c); }
RatSeries mono(int h, int q, long c) { return RatSeries::monomial(h, q, RatPoly(Rat(c))); }

// Direct convolution of two series, coefficient q of the product.
RatPoly convolve_at(const RatSeries& f, const RatSeries& g, int q) {
  RatPoly out;
  for (const auto& [qa, ca] : f.terms()) out += ca * g.coeff(q - qa);
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  CHECK(t(1) * t(1) == RatPoly::monomial(Monomial({0, 1}, 2), 1));
  CHECK((t(1) * RatPoly()).is_zero());
  CHECK((t(1) + t(2)) * (t(1) - t(2)) == t(1) * t(1) - t(2) * t(2));
  CHECK((t(1) - t(1)).terms().empty());
}

TEST_CASE("partial derivatives") {
  CHECK(diff(t(1) * t(1) * t(1), {0, 1}) == RatPoly(Rat(3)) * t(1) * t(1));
  CHECK(diff(t(2), {0, 1}).is_zero());
  CHECK(diff(t(1) * x(1, 2), {1, 2}) == t(1));
}

TEST_CASE("weighted truncation") {
  auto unit = [](VarId) { return Rat(1); };
  const RatPoly p = t(1) * t(1) * t(1) + t(1) * t(1) * t(1) * t(1);
  CHECK(truncate(p, unit, Rat(3)) == t(1) * t(1) * t(1));
  CHECK(truncate(RatPoly(), unit, Rat(3)).is_zero());
  auto a3 = [](VarId v) { return frac(v.a + 1, 4); };
  const RatPoly q = t(1) * t(3) * t(3);
  CHECK(truncate(q, a3, frac(5, 2)) == q);
  CHECK(truncate(q, a3, frac(9, 4)).is_zero());
  auto bad = [](VarId) { return Rat(0); };
  CHECK_THROWS_AS(truncate(q, bad, Rat(1)), std::invalid_argument);
}

TEST_CASE("lambda series products and residues") {
  const int h = 3;
  CHECK(mono(h, 1, 1) * mono(h, -1, 1) == mono(h, 0, 1));
  CHECK((mono(h, 1, t(1)) * RatSeries(h)).is_zero());
  const RatPoly p = x(0, 2);
  const RatSeries f = mono(1, 0, t(1)) + mono(1, -1, p);
  const RatSeries sq = mono(1, 0, t(1) * t(1)) + mono(1, -1, RatPoly(Rat(2)) * t(1) * p) + mono(1, -2, p * p);
  CHECK(f * f == sq);
  CHECK(residue(mono(h, -h, 1)) == RatPoly(Rat(1)));
  CHECK(residue(mono(h, -1, 1)).is_zero());
  const RatSeries two = mono(h, -2 * h, t(1)) + mono(h, -h, t(2));
  CHECK(residue(two) == t(2));
  CHECK_THROWS_AS(mono(2, 0, 1) * mono(3, 0, 1), std::invalid_argument);
}

TEST_CASE("Y polynomials") {
  const YPoly sq = YPoly::one_minus_y_pow(2);
  CHECK(sq == YPoly(std::vector<CycScalar>{1, -2, 1}));
  for (int k = 0; k < 5; ++k) CHECK(YPoly::monomial(k).eval_at_one() == CycScalar(1));
  // (1 - Y^4)/(1 - Y) = 1 + Y + Y^2 + Y^3
  YPoly geo;
  for (int k = 0; k < 4; ++k) geo += YPoly::monomial(k);
  CHECK(geo * YPoly::one_minus_y_pow(1) == YPoly(std::vector<CycScalar>{1, 0, 0, 0, -1}));
  CHECK(geo.coeff(2) == CycScalar(1));
  CHECK(YPoly::mul_trunc(geo, geo, 2).degree() == 2);
}

TEST_CASE("property: Leibniz rule") {
  testgen::Gen gen(201);
  for (int trial = 0; trial < 200; ++trial) {
    const RatPoly p = gen.poly(3, 2, 4, 4);
    const RatPoly q = gen.poly(3, 2, 4, 4);
    const VarId v = gen.var(3, 2);
    CHECK(diff(p * q, v) == diff(p, v) * q + p * diff(q, v));
  }
}

TEST_CASE("property: ring laws for sparse polynomials") {
  testgen::Gen gen(202);
  for (int trial = 0; trial < 100; ++trial) {
    const RatPoly p = gen.poly(2, 1, 3, 3), q = gen.poly(2, 1, 3, 3), r = gen.poly(2, 1, 3, 3);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK((p * q).truncated(3) == mul(p, q, 3));
    const RatPoly z = p * q - q * p + p;
    for (const auto& [m, c] : z.terms()) CHECK(sgn(c) != 0);
  }
}

TEST_CASE("property: residue of f * (lambda g) is the shifted convolution") {
  testgen::Gen gen(203);
  for (int trial = 0; trial < 100; ++trial) {
    const int h = gen.int_in(1, 5);
    const RatSeries f = gen.series(h, -3 * h, 2 * h, 2, 4);
    const RatSeries g = gen.series(h, -3 * h, 2 * h, 2, 4);
    const RatSeries lam = mono(h, h, 1);
    // Res f * lambda g = [lambda^-2] (f g)
    CHECK(residue(f * (lam * g)) == convolve_at(f, g, -2 * h));
    CHECK(residue(f * g) == convolve_at(f, g, -h));
  }
}

TEST_CASE("property: windowed product agrees with the plain product on its window") {
  testgen::Gen gen(204);
  for (int trial = 0; trial < 50; ++trial) {
    const int h = gen.int_in(1, 4);
    std::vector<RatSeries> fs;
    for (int k = 0; k < 3; ++k) fs.push_back(gen.series(h, -2 * h, h, 2, 3));
    std::vector<const RatSeries*> ptrs;
    for (const auto& f : fs) ptrs.push_back(&f);
    const int lo = gen.int_in(-4 * h, 0), hi = lo + gen.int_in(0, 2 * h);
    const RatSeries full = fs[0] * fs[1] * fs[2];
    const RatSeries win = windowed_product<Rat>(ptrs, h, -1, lo, hi);
    CHECK(win == full.window(lo, hi));
  }
}

TEST_CASE("property: serialization round trips") {
  testgen::Gen gen(205);
  for (int trial = 0; trial < 100; ++trial) {
    const Rat r = gen.rat(1000);
    CHECK(rat_from_json(to_json(r)) == r);
    const RatPoly p = gen.poly(4, 3, 6, 5);
    const Json j = to_json(p);
    CHECK(rat_poly_from_json(j) == p);
    CHECK(rat_poly_from_json(Json::parse(j.dump())) == p);
    const auto& ctx = CycContext::get(gen.int_in(2, 12));
    const CycScalar c = gen.cyc(ctx);
    CHECK(cyc_from_json(Json::parse(to_json(c).dump())) == c);
  }
  CHECK(cyc_from_json(to_json(CycScalar(frac(2, 3)))) == CycScalar(frac(2, 3)));
}

TEST_CASE("polynomial JSON layout") {
  const RatPoly p = RatPoly(frac(1, 2)) * t(1) * x(1, 2) * x(1, 2);
  const Json j = to_json(p);
  CHECK(j.dump() == R"({"vars":[[0,1],[1,2]],"terms":[{"exps":[[0,1],[1,2]],"coeff":"1/2"}]})");
  CHECK_THROWS(rat_from_json(Json(3)));
}
