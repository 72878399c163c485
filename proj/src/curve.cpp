#include "wba/curve.hpp"

#include <utility>

namespace wba {

namespace {

constexpr int kGridPoints = 10000;
constexpr int kMaxBisect = 200;

Real grid_point(const Real& a, const Real& b, int j, int count) {
  return a + (b - a) * static_cast<long long>(j) / static_cast<long long>(count);
}

}  // namespace

Real Poly::eval(const Real& x) const {
  if (coeff.empty()) throw ValidationError("Poly: no coefficients");
  Real acc = Real::of(0, x.prec());
  for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
  return acc;
}

Poly Poly::derivative() const {
  if (coeff.empty()) throw ValidationError("Poly: no coefficients");
  Poly d;
  if (coeff.size() == 1) {
    d.coeff.push_back(Real::of(0, coeff[0].prec()));
    return d;
  }
  for (std::size_t i = 1; i < coeff.size(); ++i)
    d.coeff.push_back(coeff[i] * static_cast<long long>(i));
  return d;
}

Poly make_poly(const std::vector<std::string>& coeffs, const Precision& P) {
  if (coeffs.empty()) throw ValidationError("make_poly: no coefficients");
  Poly p;
  for (const std::string& s : coeffs) {
    p.spec.push_back(parse_scalar(s));
    p.coeff.push_back(p.spec.back().value(P));
  }
  return p;
}

Poly make_poly_values(RealVec coeff) {
  if (coeff.empty()) throw ValidationError("make_poly_values: no coefficients");
  Poly p;
  p.coeff = std::move(coeff);
  return p;
}

Real CurveSpec::f1_min() const {
  return f1_direction > 0 ? f1(a) : f1(b);
}

Real CurveSpec::f1_max() const {
  return f1_direction > 0 ? f1(b) : f1(a);
}

CurveSpec make_curve(std::vector<Poly> components, const Real& a, const Real& b,
                     const Precision& P,
                     const std::optional<Real>& kappa_override) {
  if (components.empty()) throw ValidationError("make_curve: no components");
  if (!(a < b)) throw ValidationError("make_curve: need a < b");

  CurveSpec c;
  c.n = static_cast<int>(components.size());
  c.f = std::move(components);
  for (const Poly& p : c.f) c.fp.push_back(p.derivative());
  c.a = a;
  c.b = b;

  // One grid pass checks strict monotonicity of f_1 and accumulates the
  // kappa estimate. Grid endpoints are included.
  Real ratio_max = Real::of(1, P.bits());
  int direction = 0;
  for (int j = 0; j <= kGridPoints; ++j) {
    const Real x = grid_point(a, b, j, kGridPoints);
    const Real d1 = c.fp[0].eval(x);
    if (d1.is_zero())
      throw ValidationError("make_curve: f_1' vanishes on the interval");
    const int s = d1.sign();
    if (direction == 0) direction = s;
    if (s != direction)
      throw ValidationError("make_curve: f_1 not monotone on the interval");
    const Real ad1 = abs(d1);
    for (int i = 1; i < c.n; ++i) {
      const Real r = abs(c.fp[static_cast<std::size_t>(i)].eval(x)) / ad1;
      if (r > ratio_max) ratio_max = r;
    }
  }
  c.f1_direction = direction;

  if (kappa_override) {
    if (!(*kappa_override >= Real::of(1, P.bits())))
      throw ValidationError("make_curve: kappa override below 1");
    c.kappa_curve = *kappa_override;
  } else {
    c.kappa_curve = ratio_max * 11 / 10;
  }
  return c;
}

CurveSpec builtin_curve(const std::string& name, const Real& a, const Real& b,
                        const Precision& P) {
  std::vector<std::vector<std::string>> comps;
  if (name == "identity") {
    comps = {{"0", "1"}};
  } else if (name == "parabola") {
    comps = {{"0", "1"}, {"0", "0", "1"}};
  } else if (name == "cubic") {
    comps = {{"0", "1"}, {"0", "0", "1"}, {"0", "0", "0", "1"}};
  } else {
    throw ValidationError("builtin_curve: unknown curve '" + name + "'");
  }
  std::vector<Poly> f;
  for (const auto& cs : comps) f.push_back(make_poly(cs, P));
  return make_curve(std::move(f), a, b, P);
}

Real f1_inverse(const CurveSpec& c, const Real& y, const Precision& P) {
  const Real tol = P.tolerance();
  const Real lo_val = c.f1_min();
  const Real hi_val = c.f1_max();
  if (y < lo_val - tol || y > hi_val + tol)
    throw ValidationError("f1_inverse: value outside f_1(I)");
  const Real target = min(max(y, lo_val), hi_val);

  Real xl = c.a;
  Real xr = c.b;
  const int dir = c.f1_direction;
  for (int it = 0; it < kMaxBisect; ++it) {
    if (xr - xl <= tol) break;
    const Real mid = (xl + xr) / 2;
    const Real v = c.f1(mid);
    const bool go_right = dir > 0 ? (v < target) : (v > target);
    if (go_right)
      xl = mid;
    else
      xr = mid;
  }
  return (xl + xr) / 2;
}

Real deriv_sup_bound(const Poly& p, const Real& lo, const Real& hi) {
  const Real m = max(abs(lo), abs(hi));
  Real bound = Real::of(0, m.prec());
  Real mp = Real::of(1, m.prec());
  for (std::size_t i = 1; i < p.coeff.size(); ++i) {
    bound = bound + abs(p.coeff[i]) * static_cast<long long>(i) * mp;
    mp = mp * m;
  }
  return bound;
}

void poly_image_bounds(const Poly& p, const Real& xlo, const Real& xhi,
                       int grid, Real& out_lo, Real& out_hi) {
  if (!(xlo <= xhi)) throw ValidationError("poly_image_bounds: empty interval");
  Real lo = p.eval(xlo);
  Real hi = lo;
  for (int j = 1; j <= grid; ++j) {
    const Real v = p.eval(grid_point(xlo, xhi, j, grid));
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const Real pad =
      deriv_sup_bound(p, xlo, xhi) * (xhi - xlo) / (2 * static_cast<long long>(grid));
  out_lo = lo - pad;
  out_hi = hi + pad;
}

void interval_image_bounds(const CurveSpec& c, int i, const Real& xlo,
                           const Real& xhi, int grid, Real& out_lo,
                           Real& out_hi) {
  if (i < 0 || i >= c.n) throw ValidationError("interval_image_bounds: bad index");
  poly_image_bounds(c.f[static_cast<std::size_t>(i)], xlo, xhi, grid, out_lo, out_hi);
}

Real poly_bisect(const Poly& p, const Real& xl, const Real& xr,
                 const Real& target, bool increasing, const Real& tol) {
  if (!(xl <= xr)) throw ValidationError("poly_bisect: empty bracket");
  Real lo_val = p.eval(xl);
  Real hi_val = p.eval(xr);
  if (!increasing) std::swap(lo_val, hi_val);
  if (!(lo_val <= hi_val + tol))
    throw ValidationError("poly_bisect: not monotone in claimed direction");
  if (target <= lo_val) return increasing ? xl : xr;
  if (target >= hi_val) return increasing ? xr : xl;

  Real a = xl;
  Real b = xr;
  for (int it = 0; it < kMaxBisect; ++it) {
    if (b - a <= tol) break;
    const Real mid = (a + b) / 2;
    const bool go_right = increasing ? (p.eval(mid) < target) : (p.eval(mid) > target);
    if (go_right)
      a = mid;
    else
      b = mid;
  }
  return (a + b) / 2;
}

}  // namespace wba
