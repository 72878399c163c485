#pragma once

// Arbitrary-precision scalars for the approximation-quality computations.
// Every Real carries its own MPFR precision; results take the max operand
// precision, so values never silently degrade and worker threads never
// consult shared mutable state.

#include <cstdint>

#define MPFR_USE_INTMAX_T
#include <mpfr.h>
#include <string>
#include <string_view>
#include <vector>

#include "wba/errors.hpp"

namespace wba {

class Real;

// Declared working precision. Arithmetic runs with doubled digits (plus a few
// guard bits); derived bounds are asserted instead of interval-tracked.
struct Precision {
  int digits;

  explicit Precision(int d = 50);
  mpfr_prec_t bits() const;
  Real tolerance() const;  // 10^(-digits/2)
};

class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real of(long long v, mpfr_prec_t bits);
  static Real of(long long v, const Precision& P) { return of(v, P.bits()); }
  static Real from_decimal(std::string_view s, mpfr_prec_t bits);
  static Real from_decimal(std::string_view s, const Precision& P) {
    return from_decimal(s, P.bits());
  }
  static Real pi(mpfr_prec_t bits);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  Real operator+(const Real& o) const;
  Real operator-(const Real& o) const;
  Real operator*(const Real& o) const;
  Real operator/(const Real& o) const;
  Real operator-() const;
  Real operator+(long long v) const;
  Real operator-(long long v) const;
  Real operator*(long long v) const;
  Real operator/(long long v) const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);

  bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
  bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
  bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }
  bool operator>=(const Real& o) const { return mpfr_cmp(v_, o.v_) >= 0; }
  bool operator==(const Real& o) const { return mpfr_equal_p(v_, o.v_) != 0; }
  bool operator!=(const Real& o) const { return !(*this == o); }
  int cmp(long long v) const { return mpfr_cmp_si(v_, v); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long long to_ll_floor() const;  // floor, must fit in long long

  // Full-precision round-trip form; digits > 0 gives a shortened display form.
  std::string str(int digits = 0) const;

 private:
  mpfr_t v_;
};

Real operator*(long long v, const Real& x);
Real operator-(long long v, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real floor(const Real& x);
Real ceil(const Real& x);
Real round_nearest(const Real& x);  // ties to even
Real pow(const Real& base, const Real& exp);
Real exp(const Real& x);
Real log(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real tan(const Real& x);
Real acos(const Real& x);
Real atan(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

using IntVec = std::vector<long long>;
using RealVec = std::vector<Real>;

// Distance to the nearest integer, in [0, 1/2]; ties resolve to 1/2 either way.
Real dist_nearest_int(const Real& x);

long long sup_norm(const IntVec& q);

// base^exp for base >= 0; zero base demands a positive exponent.
Real weighted_power(const Real& base, const Real& exp);

// Exact (a + b*sqrt(d))/c with integer fields, c != 0, d >= 0.
struct QuadIrrational {
  long long a = 0, b = 0, c = 1, d = 0;

  Real value(mpfr_prec_t bits) const;
  Real value(const Precision& P) const { return value(P.bits()); }
  QuadIrrational normalized() const;
  QuadIrrational plus(const QuadIrrational& o) const;  // radicands must agree
  QuadIrrational scaled(long long s) const;
  std::string str() const;
};

// A scalar literal: either a decimal string or a quadratic irrational.
// The source text is retained so values can be re-evaluated at any precision.
struct ScalarSpec {
  enum class Form { decimal, quadratic };
  Form form = Form::decimal;
  std::string text = "0";
  QuadIrrational qi;

  Real value(mpfr_prec_t bits) const;
  Real value(const Precision& P) const { return value(P.bits()); }
};

// Accepts "[+-]ddd[.ddd][e[+-]ddd]" or "(a+b*sqrt(d))/c".
ScalarSpec parse_scalar(std::string_view s);

// Weight vector: every entry positive, sum within tolerance of 1.
struct Weights {
  std::vector<ScalarSpec> spec;
  RealVec k;
  int m = 1;

  int n() const { return static_cast<int>(k.size()); }
  Weights reparsed(const Precision& P) const;
};

Weights make_weights(const std::vector<std::string>& texts, int m, const Precision& P);
Weights make_weights_from_specs(std::vector<ScalarSpec> spec, int m, const Precision& P);

}  // namespace wba
