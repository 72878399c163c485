#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "wba/curve.hpp"
#include "wba/rng.hpp"

using namespace wba;

namespace {

const Precision P(50);

Real lit(const std::string& s) { return Real::from_decimal(s, P); }

void check_close(const Real& got, const Real& want, const char* tol = "1e-40") {
  INFO("want ", want.str(40), " got ", got.str(40));
  CHECK(abs(got - want) < lit(tol));
}

}  // namespace

TEST_CASE("polynomial evaluation and derivative") {
  Poly p = make_poly({"1", "2", "3"}, P);
  Real s2 = sqrt(Real::of(2, P.bits()));
  check_close(p.eval(s2), Real::of(7, P.bits()) + 2 * s2);

  Poly dp = p.derivative();
  CHECK(dp.degree() == 1);
  CHECK(dp.eval(Real::of(5, P.bits())).cmp(32) == 0);

  Poly cube = make_poly({"0", "-1", "0", "1"}, P);
  CHECK(cube.derivative().eval(Real::of(2, P.bits())).cmp(11) == 0);

  Poly c = make_poly({"4"}, P);
  CHECK(c.derivative().eval(Real::of(9, P.bits())).is_zero());

  CHECK_THROWS_AS(make_poly({"abc"}, P), ValidationError);
  CHECK_THROWS_AS(make_poly({}, P), ValidationError);
}

TEST_CASE("builtin curves and kappa estimate") {
  Real zero = Real::of(0, P.bits());
  Real one = Real::of(1, P.bits());

  CurveSpec ident = builtin_curve("identity", zero, one, P);
  CHECK(ident.n == 1);
  CHECK(ident.f1_direction == 1);
  check_close(ident.kappa_curve, Real::of(11, P.bits()) / 10, "1e-60");

  CurveSpec par = builtin_curve("parabola", zero, one, P);
  CHECK(par.n == 2);
  check_close(par.kappa_curve, Real::of(11, P.bits()) / 5, "1e-60");

  CurveSpec cub = builtin_curve("cubic", -one, Real::of(2, P.bits()), P);
  CHECK(cub.n == 3);
  check_close(cub.kappa_curve, Real::of(66, P.bits()) / 5, "1e-60");

  CHECK_THROWS_AS(builtin_curve("circle", zero, one, P), ValidationError);

  CurveSpec forced = make_curve({make_poly({"0", "1"}, P)}, zero, one, P,
                                Real::of(5, P.bits()));
  CHECK(forced.kappa_curve.cmp(5) == 0);
  CHECK_THROWS_AS(
      make_curve({make_poly({"0", "1"}, P)}, zero, one, P, lit("0.5")),
      ValidationError);
}

TEST_CASE("first-component monotonicity is enforced") {
  Real one = Real::of(1, P.bits());
  CHECK_THROWS_AS(make_curve({make_poly({"0", "0", "1"}, P)}, -one, one, P),
                  ValidationError);

  CurveSpec right = make_curve({make_poly({"0", "0", "1"}, P)}, lit("0.1"), one, P);
  CHECK(right.f1_direction == 1);
  check_close(right.kappa_curve, Real::of(11, P.bits()) / 10, "1e-60");

  CurveSpec down = make_curve({make_poly({"0", "-1"}, P)}, Real::of(0, P.bits()), one, P);
  CHECK(down.f1_direction == -1);
  CHECK(down.f1_min().cmp(-1) == 0);
  CHECK(down.f1_max().cmp(0) == 0);
}

TEST_CASE("inverse of the first component") {
  Real zero = Real::of(0, P.bits());
  Real one = Real::of(1, P.bits());

  CurveSpec ident = builtin_curve("identity", zero, one, P);
  check_close(f1_inverse(ident, lit("0.3"), P), lit("0.3"), "1e-24");

  CurveSpec down = make_curve({make_poly({"0", "-1"}, P)}, zero, one, P);
  check_close(f1_inverse(down, lit("-0.25"), P), lit("0.25"), "1e-24");

  CurveSpec cube = make_curve({make_poly({"0", "0", "0", "1"}, P)}, lit("0.5"),
                              Real::of(2, P.bits()), P);
  check_close(f1_inverse(cube, one, P), one, "1e-23");
  check_close(f1_inverse(cube, Real::of(8, P.bits()), P), Real::of(2, P.bits()), "1e-23");
  check_close(f1_inverse(cube, lit("0.125"), P), lit("0.5"), "1e-23");
  CHECK_THROWS_AS(f1_inverse(cube, lit("0.1"), P), ValidationError);
  CHECK_THROWS_AS(f1_inverse(cube, Real::of(9, P.bits()), P), ValidationError);

  SplitMix64 g(3);
  for (int i = 0; i < 25; ++i) {
    Real y = lit("0.125") + g.unit_real(P) * (Real::of(8, P.bits()) - lit("0.125"));
    Real x = f1_inverse(cube, y, P);
    CHECK(x >= cube.a);
    CHECK(x <= cube.b);
    check_close(cube.f1(x), y, "1e-22");
  }
}

TEST_CASE("derivative supremum bound") {
  Poly cube = make_poly({"0", "-1", "0", "1"}, P);
  check_close(deriv_sup_bound(cube, Real::of(0, P.bits()), Real::of(1, P.bits())),
              Real::of(4, P.bits()), "1e-60");
  check_close(deriv_sup_bound(cube, Real::of(-2, P.bits()), Real::of(1, P.bits())),
              Real::of(13, P.bits()), "1e-60");
}

TEST_CASE("image enclosures contain the true range") {
  Real zero = Real::of(0, P.bits());
  Real one = Real::of(1, P.bits());

  CurveSpec par = builtin_curve("parabola", zero, one, P);
  Real lo(P.bits()), hi(P.bits());
  interval_image_bounds(par, 1, lit("0.5"), lit("0.7"), 64, lo, hi);
  CHECK(lo <= lit("0.25"));
  CHECK(hi >= lit("0.49"));
  CHECK(lo >= lit("0.2477"));
  CHECK(hi <= lit("0.4923"));

  CurveSpec wavy = make_curve(
      {make_poly({"0", "1"}, P), make_poly({"0", "-1", "0", "1"}, P)}, zero, one, P);
  interval_image_bounds(wavy, 1, zero, one, 1024, lo, hi);
  Real s3 = sqrt(Real::of(3, P.bits()));
  Real true_min = -2 * s3 / 9;
  CHECK(lo <= true_min);
  CHECK(hi >= zero);
  CHECK(lo >= true_min - lit("0.002"));
  CHECK(hi <= lit("0.002"));

  interval_image_bounds(par, 1, lit("0.6"), lit("0.6"), 8, lo, hi);
  check_close(lo, lit("0.36"), "1e-40");
  check_close(hi, lit("0.36"), "1e-40");

  CHECK_THROWS_AS(interval_image_bounds(par, 2, zero, one, 8, lo, hi),
                  ValidationError);
  CHECK_THROWS_AS(interval_image_bounds(par, 1, one, zero, 8, lo, hi),
                  ValidationError);
}
