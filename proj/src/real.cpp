#include "wba/real.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace wba {

Precision::Precision(int d) : digits(d) {
  if (d < 30) throw ValidationError("precision digits must be at least 30");
}

mpfr_prec_t Precision::bits() const {
  // 2x guard digits, then a few guard bits on top.
  return static_cast<mpfr_prec_t>(std::ceil(2.0 * digits * 3.3219280948873623)) + 32;
}

Real Precision::tolerance() const {
  Real e = Real::of(digits, bits()) / 2;
  return pow(Real::of(10, bits()), -e);
}

Real::Real() {
  mpfr_init2(v_, 64);
  mpfr_set_nan(v_);
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_nan(v_);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, 64);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(long long v, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_sj(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {

bool valid_decimal(std::string_view s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t digits = 0;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++digits;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (digits == 0) return false;
  if (i == s.size()) return true;
  if (s[i] != 'e' && s[i] != 'E') return false;
  ++i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t ed = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    ++ed;
  }
  return ed > 0;
}

mpfr_prec_t max_prec(const Real& a, const Real& b) {
  return a.prec() > b.prec() ? a.prec() : b.prec();
}

}  // namespace

Real Real::from_decimal(std::string_view s, mpfr_prec_t bits) {
  if (!valid_decimal(s))
    throw ValidationError("malformed decimal literal: '" + std::string(s) + "'");
  Real r(bits);
  std::string buf(s);
  if (mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0)
    throw ValidationError("unparseable decimal literal: '" + buf + "'");
  return r;
}

#define WBA_BINOP(op, fn)                          \
  Real Real::operator op(const Real& o) const {    \
    Real r(max_prec(*this, o));                    \
    fn(r.v_, v_, o.v_, MPFR_RNDN);                 \
    return r;                                      \
  }
WBA_BINOP(+, mpfr_add)
WBA_BINOP(-, mpfr_sub)
WBA_BINOP(*, mpfr_mul)
WBA_BINOP(/, mpfr_div)
#undef WBA_BINOP

#define WBA_BINOP_SI(op, fn)                  \
  Real Real::operator op(long long v) const { \
    Real r(prec());                           \
    fn(r.v_, v_, v, MPFR_RNDN);               \
    return r;                                 \
  }
WBA_BINOP_SI(+, mpfr_add_si)
WBA_BINOP_SI(-, mpfr_sub_si)
WBA_BINOP_SI(*, mpfr_mul_si)
WBA_BINOP_SI(/, mpfr_div_si)
#undef WBA_BINOP_SI

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator*(long long v, const Real& x) { return x * v; }
Real operator-(long long v, const Real& x) { return -(x - v); }

long long Real::to_ll_floor() const {
  if (!is_finite()) throw ValidationError("non-finite value where integer expected");
  Real f = wba::floor(*this);
  if (!mpfr_fits_intmax_p(f.raw(), MPFR_RNDN))
    throw ValidationError("value out of integer range: " + str(10));
  return mpfr_get_sj(f.raw(), MPFR_RNDN);
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  std::string sgn;
  if (mant[0] == '-') {
    sgn = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = sgn + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long long>(e) - 1);
  return out;
}

#define WBA_UNFUN(name, fn)      \
  Real name(const Real& x) {     \
    Real r(x.prec());            \
    fn(r.raw(), x.raw(), MPFR_RNDN); \
    return r;                    \
  }
WBA_UNFUN(abs, mpfr_abs)
WBA_UNFUN(exp, mpfr_exp)
WBA_UNFUN(log, mpfr_log)
WBA_UNFUN(cos, mpfr_cos)
WBA_UNFUN(sin, mpfr_sin)
WBA_UNFUN(tan, mpfr_tan)
WBA_UNFUN(acos, mpfr_acos)
WBA_UNFUN(atan, mpfr_atan)
WBA_UNFUN(round_nearest, mpfr_rint)
#undef WBA_UNFUN

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw ValidationError("sqrt of negative value");
  Real r(x.prec());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.prec());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Real ceil(const Real& x) {
  Real r(x.prec());
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

Real pow(const Real& base, const Real& e) {
  Real r(max_prec(base, e));
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real dist_nearest_int(const Real& x) {
  Real r(x.prec());
  mpfr_rint(r.raw(), x.raw(), MPFR_RNDN);
  mpfr_sub(r.raw(), x.raw(), r.raw(), MPFR_RNDN);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

long long sup_norm(const IntVec& q) {
  long long s = 0;
  for (long long v : q) {
    long long a = std::llabs(v);
    if (a > s) s = a;
  }
  return s;
}

Real weighted_power(const Real& base, const Real& e) {
  if (base.sign() < 0) throw ValidationError("weighted_power: negative base");
  if (base.is_zero() && e.sign() <= 0)
    throw ValidationError("weighted_power: zero base requires a positive exponent");
  return pow(base, e);
}

// ---- quadratic irrationals ----

Real QuadIrrational::value(mpfr_prec_t bits) const {
  if (c == 0) throw ValidationError("quadratic irrational with zero denominator");
  if (d < 0) throw ValidationError("quadratic irrational with negative radicand");
  Real s(bits);
  mpfr_set_sj(s.raw(), d, MPFR_RNDN);
  mpfr_sqrt(s.raw(), s.raw(), MPFR_RNDN);
  Real r = (Real::of(a, bits) + Real::of(b, bits) * s) / c;
  return r;
}

QuadIrrational QuadIrrational::normalized() const {
  QuadIrrational r = *this;
  if (r.d == 0 || r.b == 0) {
    r.b = 0;
    r.d = 0;
  }
  if (r.c < 0) {
    r.a = -r.a;
    r.b = -r.b;
    r.c = -r.c;
  }
  long long g = std::gcd(std::gcd(std::llabs(r.a), std::llabs(r.b)), std::llabs(r.c));
  if (g > 1) {
    r.a /= g;
    r.b /= g;
    r.c /= g;
  }
  return r;
}

namespace {
long long checked_mul(long long x, long long y) {
  long long r;
  if (__builtin_mul_overflow(x, y, &r))
    throw ValidationError("quadratic irrational arithmetic overflow");
  return r;
}
long long checked_add(long long x, long long y) {
  long long r;
  if (__builtin_add_overflow(x, y, &r))
    throw ValidationError("quadratic irrational arithmetic overflow");
  return r;
}
}  // namespace

QuadIrrational QuadIrrational::plus(const QuadIrrational& o) const {
  QuadIrrational x = normalized(), y = o.normalized();
  if (x.b != 0 && y.b != 0 && x.d != y.d)
    throw ValidationError("quadratic irrational addition requires equal radicands");
  long long d2 = x.b != 0 ? x.d : y.d;
  QuadIrrational r{checked_add(checked_mul(x.a, y.c), checked_mul(y.a, x.c)),
                   checked_add(checked_mul(x.b, y.c), checked_mul(y.b, x.c)),
                   checked_mul(x.c, y.c), d2};
  return r.normalized();
}

QuadIrrational QuadIrrational::scaled(long long s) const {
  QuadIrrational r{checked_mul(a, s), checked_mul(b, s), c, d};
  return r.normalized();
}

std::string QuadIrrational::str() const {
  return "(" + std::to_string(a) + "+" + std::to_string(b) + "*sqrt(" + std::to_string(d) +
         "))/" + std::to_string(c);
}

// ---- scalar literals ----

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

long long parse_ll(const std::string& s, size_t& i, bool allow_sign) {
  size_t start = i;
  if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == d0) throw ValidationError("malformed quadratic literal: '" + s + "'");
  try {
    return std::stoll(s.substr(start, i - start));
  } catch (const std::out_of_range&) {
    throw ValidationError("integer out of range in quadratic literal: '" + s + "'");
  }
}

QuadIrrational parse_quad(const std::string& s) {
  // (a+b*sqrt(d))/c  with the sign of b carried by the separator
  size_t i = 0;
  auto expect = [&](std::string_view tok) {
    if (s.compare(i, tok.size(), tok) != 0)
      throw ValidationError("malformed quadratic literal: '" + s + "'");
    i += tok.size();
  };
  expect("(");
  QuadIrrational q;
  q.a = parse_ll(s, i, true);
  if (i >= s.size() || (s[i] != '+' && s[i] != '-'))
    throw ValidationError("malformed quadratic literal: '" + s + "'");
  long long bsign = s[i] == '-' ? -1 : 1;
  ++i;
  q.b = bsign * parse_ll(s, i, false);
  expect("*sqrt(");
  q.d = parse_ll(s, i, true);
  expect("))/");
  q.c = parse_ll(s, i, true);
  if (i != s.size()) throw ValidationError("malformed quadratic literal: '" + s + "'");
  if (q.c == 0) throw ValidationError("quadratic literal with zero denominator");
  if (q.d < 0) throw ValidationError("quadratic literal with negative radicand");
  return q;
}

}  // namespace

ScalarSpec parse_scalar(std::string_view sv) {
  std::string s = strip_spaces(sv);
  if (s.empty()) throw ValidationError("empty scalar literal");
  ScalarSpec spec;
  spec.text = s;
  if (s[0] == '(') {
    spec.form = ScalarSpec::Form::quadratic;
    spec.qi = parse_quad(s);
  } else {
    spec.form = ScalarSpec::Form::decimal;
    if (!valid_decimal(s)) throw ValidationError("malformed scalar literal: '" + s + "'");
  }
  return spec;
}

Real ScalarSpec::value(mpfr_prec_t bits) const {
  if (form == Form::quadratic) return qi.value(bits);
  return Real::from_decimal(text, bits);
}

// ---- weights ----

Weights make_weights_from_specs(std::vector<ScalarSpec> spec, int m, const Precision& P) {
  if (spec.empty()) throw ValidationError("weights: need at least one entry");
  if (m < 1) throw ValidationError("weights: m must be positive");
  Weights w;
  w.spec = std::move(spec);
  w.m = m;
  Real sum = Real::of(0, P);
  for (const auto& sp : w.spec) {
    Real v = sp.value(P);
    if (v.sign() <= 0) throw ValidationError("weights: entries must be positive");
    sum += v;
    w.k.push_back(std::move(v));
  }
  if (abs(sum - 1) > P.tolerance())
    throw ValidationError("weights: entries must sum to 1, got " + sum.str(20));
  return w;
}

Weights make_weights(const std::vector<std::string>& texts, int m, const Precision& P) {
  std::vector<ScalarSpec> spec;
  spec.reserve(texts.size());
  for (const auto& t : texts) spec.push_back(parse_scalar(t));
  return make_weights_from_specs(std::move(spec), m, P);
}

Weights Weights::reparsed(const Precision& P) const {
  return make_weights_from_specs(spec, m, P);
}

}  // namespace wba
