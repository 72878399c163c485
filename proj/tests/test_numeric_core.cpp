#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "wba/real.hpp"
#include "wba/rng.hpp"

using namespace wba;

namespace {

const Precision P(50);

Real lit(const std::string& s) { return Real::from_decimal(s, P); }

// Reference digit strings below were produced by an independent
// high-precision evaluation and frozen; comparisons leave headroom for the
// final rounded digit of each string.
void check_close(const Real& got, const std::string& want, const char* tol = "1e-48") {
  INFO("want ", want, " got ", got.str(40));
  CHECK(abs(got - lit(want)) < lit(tol));
}

}  // namespace

TEST_CASE("precision policy") {
  CHECK_THROWS_AS(Precision(29), ValidationError);
  CHECK(Precision(50).bits() == 365);
  CHECK(Precision(100).bits() > Precision(50).bits());
  check_close(P.tolerance(), "1e-25", "1e-70");
}

TEST_CASE("construction and round trips") {
  Real a = Real::of(-7, P);
  CHECK(a.cmp(-7) == 0);
  CHECK(a.sign() == -1);
  CHECK(Real::of(0, P).is_zero());
  CHECK(Real::of(0, P).str() == "0");

  Real h = Real::from_decimal("0.5", P);
  CHECK(h.str() == "5e-1");
  CHECK(Real::from_decimal("-12.25", P).str() == "-1.225e1");
  CHECK(Real::from_decimal("3e2", P).cmp(300) == 0);

  CHECK_THROWS_AS(Real::from_decimal("", P), ValidationError);
  CHECK_THROWS_AS(Real::from_decimal("abc", P), ValidationError);
  CHECK_THROWS_AS(Real::from_decimal("1.2.3", P), ValidationError);
  CHECK_THROWS_AS(Real::from_decimal("1e", P), ValidationError);
  CHECK_THROWS_AS(Real::from_decimal("nan", P), ValidationError);
}

TEST_CASE("string form round-trips exactly") {
  SplitMix64 rng(20240901);
  for (int i = 0; i < 300; ++i) {
    Real x = rng.unit_real(P);
    long long sh = static_cast<long long>(rng.below(61)) - 30;
    Real y = (rng.below(2) ? x : -x) * Real::of(1LL << 20, P);
    mpfr_mul_2si(y.raw(), y.raw(), static_cast<long>(sh), MPFR_RNDN);
    Real back = Real::from_decimal(y.str(), y.prec());
    CHECK(back == y);
  }
}

TEST_CASE("square roots match frozen references") {
  check_close(sqrt(Real::of(2, P)), "1.414213562373095048801688724209698078569671875376948");
  check_close(sqrt(Real::of(3, P)), "1.732050807568877293527446341505872366942805253810381");
  check_close(Real::pi(P.bits()), "3.1415926535897932384626433832795028841971693993751058");
  CHECK_THROWS_AS(sqrt(Real::of(-1, P)), ValidationError);
}

TEST_CASE("distance to nearest integer") {
  check_close(dist_nearest_int(sqrt(Real::of(3, P))),
              "0.2679491924311227064725536584941276330571947461896194");
  Real phi = QuadIrrational{1, 1, 2, 5}.value(P);
  check_close(phi - 1, "0.6180339887498948482045868343656381177203091798057629");
  check_close(dist_nearest_int(phi),
              "0.3819660112501051517954131656343618822796908201942371");

  CHECK(dist_nearest_int(Real::of(4, P)).is_zero());
  Real half = Real::from_decimal("0.5", P);
  CHECK(dist_nearest_int(half) == half);
  CHECK(dist_nearest_int(-half) == half);
  CHECK(dist_nearest_int(Real::from_decimal("2.25", P)) == Real::from_decimal("0.25", P));

  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Real x = rng.unit_real(P) * 20 - 10;
    Real d = dist_nearest_int(x);
    CHECK(d.sign() >= 0);
    CHECK(d <= half);
    long long sh = static_cast<long long>(rng.below(9)) - 4;
    CHECK(dist_nearest_int(x + Real::of(sh, P)) == d);
    CHECK(dist_nearest_int(-x) == d);
  }
}

TEST_CASE("floor ceil and integer extraction") {
  CHECK(Real::from_decimal("3.7", P).to_ll_floor() == 3);
  CHECK(Real::from_decimal("-3.2", P).to_ll_floor() == -4);
  CHECK(Real::of(12, P).to_ll_floor() == 12);
  CHECK(floor(Real::from_decimal("-0.5", P)).cmp(-1) == 0);
  CHECK(ceil(Real::from_decimal("2.01", P)).cmp(3) == 0);
  CHECK_THROWS_AS(Real::from_decimal("1e30", P).to_ll_floor(), ValidationError);
}

TEST_CASE("sup norm") {
  CHECK(sup_norm({3, -7, 5}) == 7);
  CHECK(sup_norm({0}) == 0);
  CHECK(sup_norm({-2}) == 2);
}

TEST_CASE("weighted power domain") {
  Real z = Real::of(0, P);
  Real e = Real::from_decimal("0.3", P);
  CHECK(weighted_power(z, e).is_zero());
  CHECK_THROWS_AS(weighted_power(z, z), ValidationError);
  CHECK_THROWS_AS(weighted_power(z, -e), ValidationError);
  CHECK_THROWS_AS(weighted_power(Real::of(-2, P), e), ValidationError);

  SplitMix64 rng(99);
  for (int i = 0; i < 100; ++i) {
    Real a = rng.unit_real(P) * 5;
    Real b = a + rng.unit_real(P) + Real::from_decimal("1e-20", P);
    Real ex = rng.unit_real(P) * 3 + Real::from_decimal("0.01", P);
    CHECK(weighted_power(a, ex) < weighted_power(b, ex));
  }
}

TEST_CASE("quadratic irrationals") {
  QuadIrrational phi{1, 1, 2, 5};
  check_close(phi.value(P), "1.6180339887498948482045868343656381177203091798057629");

  QuadIrrational r = QuadIrrational{2, 2, 4, 5}.normalized();
  CHECK(r.a == 1);
  CHECK(r.b == 1);
  CHECK(r.c == 2);
  CHECK(r.d == 5);

  QuadIrrational s = QuadIrrational{1, 1, -2, 5}.normalized();
  CHECK(s.a == -1);
  CHECK(s.b == -1);
  CHECK(s.c == 2);

  QuadIrrational z = QuadIrrational{3, 0, 6, 17}.normalized();
  CHECK(z.a == 1);
  CHECK(z.c == 2);
  CHECK(z.d == 0);

  QuadIrrational x{1, 2, 3, 5}, y{2, 1, 6, 5};
  Real want = x.value(P) + y.value(P);
  CHECK(abs(x.plus(y).value(P) - want) < lit("1e-90"));

  Real w2 = x.value(P) * 7;
  CHECK(abs(x.scaled(7).value(P) - w2) < lit("1e-90"));

  QuadIrrational rational{1, 0, 3, 0};
  CHECK(abs(rational.plus(x).value(P) - (x.value(P) + rational.value(P))) < lit("1e-90"));

  CHECK_THROWS_AS(x.plus(QuadIrrational{1, 1, 1, 7}), ValidationError);
  CHECK_THROWS_AS((QuadIrrational{1LL << 62, 0, 1, 0}.scaled(4)), ValidationError);
  CHECK_THROWS_AS((QuadIrrational{1, 1, 0, 5}.value(P)), ValidationError);
  CHECK_THROWS_AS((QuadIrrational{1, 1, 1, -5}.value(P)), ValidationError);
}

TEST_CASE("scalar parsing") {
  ScalarSpec d = parse_scalar("  -3.25e-1 ");
  CHECK(d.form == ScalarSpec::Form::decimal);
  CHECK(d.value(P) == Real::from_decimal("-0.325", P));

  ScalarSpec q = parse_scalar("(1 + 1*sqrt(5)) / 2");
  CHECK(q.form == ScalarSpec::Form::quadratic);
  CHECK(q.qi.a == 1);
  CHECK(q.qi.b == 1);
  CHECK(q.qi.c == 2);
  CHECK(q.qi.d == 5);

  ScalarSpec neg = parse_scalar("(1-2*sqrt(3))/-5");
  CHECK(neg.qi.b == -2);
  CHECK(neg.qi.c == -5);
  Real want = (1 - 2 * sqrt(Real::of(3, P))) / -5;
  CHECK(abs(neg.value(P) - want) < lit("1e-90"));

  CHECK_THROWS_AS(parse_scalar(""), ValidationError);
  CHECK_THROWS_AS(parse_scalar("x"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("(1+sqrt(5))/2"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("(1+1*sqrt(5))/0"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("(1+1*sqrt(-5))/2"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("(1+1*sqrt(5))/2x"), ValidationError);
  CHECK_THROWS_AS(parse_scalar("(99999999999999999999+1*sqrt(5))/2"), ValidationError);
}

TEST_CASE("weights") {
  Weights w = make_weights({"(2+0*sqrt(0))/3", "(1+0*sqrt(0))/3"}, 1, P);
  CHECK(w.n() == 2);
  CHECK(w.m == 1);
  CHECK(abs(w.k[0] - Real::of(2, P) / 3) < lit("1e-90"));
  CHECK(abs(w.k[0] + w.k[1] - 1) < lit("1e-90"));

  Weights dec = make_weights({"0.9", "0.1"}, 2, P);
  CHECK(dec.m == 2);
  CHECK(dec.k[1] == Real::from_decimal("0.1", P));

  Weights hi = dec.reparsed(Precision(100));
  CHECK(hi.k[0].prec() > dec.k[0].prec());

  CHECK_THROWS_AS(make_weights(std::vector<std::string>{}, 1, P), ValidationError);
  CHECK_THROWS_AS(make_weights({"0.5", "0.49"}, 1, P), ValidationError);
  CHECK_THROWS_AS(make_weights({"1.5", "-0.5"}, 1, P), ValidationError);
  CHECK_THROWS_AS(make_weights({"1", "0"}, 1, P), ValidationError);
  CHECK_THROWS_AS(make_weights({"0.5", "0.5"}, 0, P), ValidationError);
}

TEST_CASE("deterministic rng stream") {
  SplitMix64 a(0);
  CHECK(a.next() == 0xe220a8397b1dcdafULL);
  CHECK(a.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(a.next() == 0x06c45d188009454fULL);

  SplitMix64 b(42), c(42);
  for (int i = 0; i < 10; ++i) CHECK(b.next() == c.next());

  SplitMix64 d(7);
  for (int i = 0; i < 50; ++i) {
    Real u = d.unit_real(P);
    CHECK(u.sign() >= 0);
    CHECK(u < Real::of(1, P));
  }
}
