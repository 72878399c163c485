#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wba/real.hpp"

namespace wba {

// Polynomial with coefficients in ascending degree order. spec keeps the
// parsed literals when the polynomial came from text.
struct Poly {
  std::vector<ScalarSpec> spec;
  RealVec coeff;

  Real eval(const Real& x) const;
  Poly derivative() const;
  int degree() const { return static_cast<int>(coeff.size()) - 1; }
};

Poly make_poly(const std::vector<std::string>& coeffs, const Precision& P);
Poly make_poly_values(RealVec coeff);

// Planar-to-R^n polynomial curve x -> (f_1(x), ..., f_n(x)) on I = [a, b].
// f_1 must be strictly monotone on I; kappa bounds |f_i(x) - f_i(x')| by
// kappa * |f_1(x) - f_1(x')| for all i and x, x' in I.
struct CurveSpec {
  int n = 0;
  std::vector<Poly> f;
  std::vector<Poly> fp;
  Real a;
  Real b;
  Real kappa_curve;
  int f1_direction = 0;  // +1 increasing on I, -1 decreasing

  Real fi(int i, const Real& x) const { return f[static_cast<std::size_t>(i)].eval(x); }
  Real f1(const Real& x) const { return fi(0, x); }
  Real f1_min() const;  // min of f_1 over I
  Real f1_max() const;
};

// Validates f_1 monotonicity on a 10^4-point grid and estimates kappa as the
// grid supremum of |f_i'| / |f_1'| inflated by 10% (unless overridden).
CurveSpec make_curve(std::vector<Poly> components, const Real& a, const Real& b,
                     const Precision& P,
                     const std::optional<Real>& kappa_override = std::nullopt);

// identity: (x); parabola: (x, x^2); cubic: (x, x^2, x^3).
CurveSpec builtin_curve(const std::string& name, const Real& a, const Real& b,
                        const Precision& P);

// Bisection on [a, b]; y must lie in f_1(I) up to tolerance (clamped).
// At most 200 iterations, each halving the bracket.
Real f1_inverse(const CurveSpec& c, const Real& y, const Precision& P);

// Rigorous sup of |p'| on [lo, hi] from coefficient magnitudes.
Real deriv_sup_bound(const Poly& p, const Real& lo, const Real& hi);

// Enclosure of p([xlo, xhi]): grid min/max widened by the derivative bound
// times half the grid step. Always contains the true image.
void poly_image_bounds(const Poly& p, const Real& xlo, const Real& xhi,
                       int grid, Real& out_lo, Real& out_hi);

// Same for curve component i.
void interval_image_bounds(const CurveSpec& c, int i, const Real& xlo,
                           const Real& xhi, int grid, Real& out_lo,
                           Real& out_hi);

// Solves p(x) = target on [xl, xr] where p is monotone there (increasing
// says which way). target is clamped to the endpoint values.
Real poly_bisect(const Poly& p, const Real& xl, const Real& xr,
                 const Real& target, bool increasing, const Real& tol);

}  // namespace wba
