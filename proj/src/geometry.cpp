#include "wba/geometry.hpp"

#include <stdexcept>
#include <string>

namespace wba {

namespace {

Real dot(const RealVec& a, const RealVec& b) {
  if (a.size() != b.size()) throw ValidationError("dot: size mismatch");
  Real s = Real::of(0, a[0].prec());
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

Real clamp01(const Real& x, const Precision& P) {
  const Real one = Real::of(1, P.bits());
  const Real zero = Real::of(0, P.bits());
  return min(max(x, zero), one);
}

}  // namespace

Real euclid_norm(const RealVec& x) {
  if (x.empty()) throw ValidationError("euclid_norm: empty vector");
  Real s = Real::of(0, x[0].prec());
  for (const Real& c : x) s = s + c * c;
  return sqrt(s);
}

LinearSubspace make_subspace(int ambient_dim, const std::vector<RealVec>& raw,
                             const Precision& P) {
  if (ambient_dim < 1) throw ValidationError("make_subspace: ambient_dim < 1");
  if (raw.empty()) throw ValidationError("make_subspace: empty basis");
  if (static_cast<int>(raw.size()) > ambient_dim)
    throw ValidationError("make_subspace: more vectors than ambient_dim");

  LinearSubspace L;
  L.ambient_dim = ambient_dim;
  L.raw_basis = raw;
  const Real tol = P.tolerance();
  for (const RealVec& v : raw) {
    if (static_cast<int>(v.size()) != ambient_dim)
      throw ValidationError("make_subspace: vector length != ambient_dim");
    RealVec w = v;
    // Two rounds of Gram-Schmidt keep orthogonality at full precision.
    for (int round = 0; round < 2; ++round) {
      for (const RealVec& b : L.basis) {
        const Real c = dot(w, b);
        for (int i = 0; i < ambient_dim; ++i) w[i] = w[i] - c * b[i];
      }
    }
    const Real nrm = euclid_norm(w);
    if (nrm < tol)
      throw ValidationError("make_subspace: dependent basis vector");
    for (int i = 0; i < ambient_dim; ++i) w[i] = w[i] / nrm;
    L.basis.push_back(std::move(w));
  }
  return L;
}

LinearSubspace coordinate_gamma(int ambient_dim, int zero_prefix,
                                const Precision& P) {
  if (zero_prefix < 0 || zero_prefix >= ambient_dim)
    throw ValidationError("coordinate_gamma: prefix out of range");
  std::vector<RealVec> raw;
  for (int j = zero_prefix; j < ambient_dim; ++j) {
    RealVec e(static_cast<std::size_t>(ambient_dim), Real::of(0, P.bits()));
    e[static_cast<std::size_t>(j)] = Real::of(1, P.bits());
    raw.push_back(std::move(e));
  }
  return make_subspace(ambient_dim, raw, P);
}

int compute_t(const LinearSubspace& L, const Precision& P) {
  const int n = L.ambient_dim;
  const Real tol = P.tolerance();
  int zero_prefix = 0;
  for (; zero_prefix < n; ++zero_prefix) {
    bool all_zero = true;
    for (const RealVec& b : L.basis) {
      if (abs(b[static_cast<std::size_t>(zero_prefix)]) >= tol) {
        all_zero = false;
        break;
      }
    }
    if (!all_zero) break;
  }
  // zero_prefix = n would mean L = {0}, excluded by make_subspace.
  if (zero_prefix >= n)
    throw InvariantViolation("compute_t: trivial subspace");
  return n - zero_prefix - 1;
}

RealVec project_onto(const LinearSubspace& L, const RealVec& x) {
  if (static_cast<int>(x.size()) != L.ambient_dim)
    throw ValidationError("project_onto: size mismatch");
  RealVec out(x.size(), Real::of(0, x[0].prec()));
  for (const RealVec& b : L.basis) {
    const Real c = dot(x, b);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = out[i] + c * b[i];
  }
  return out;
}

Real project_norm(const LinearSubspace& L, const RealVec& x) {
  // |P_L x|^2 = sum of squared basis coefficients; avoids cancellation in
  // the ambient-coordinate sum.
  Real s = Real::of(0, x[0].prec());
  for (const RealVec& b : L.basis) {
    const Real c = dot(x, b);
    s = s + c * c;
  }
  return sqrt(s);
}

Real angle_between_lines(const RealVec& a, const RealVec& b,
                         const Precision& P) {
  const Real na = euclid_norm(a);
  const Real nb = euclid_norm(b);
  if (na.is_zero() || nb.is_zero())
    throw ValidationError("angle_between_lines: zero vector");
  return acos(clamp01(abs(dot(a, b)) / (na * nb), P));
}

Real angle_line_to_subspace(const RealVec& l_unit, const LinearSubspace& L,
                            const Precision& P) {
  const Real nrm = euclid_norm(l_unit);
  if (abs(nrm - Real::of(1, P.bits())) > P.tolerance())
    throw ValidationError("angle_line_to_subspace: l not unit length");
  return acos(clamp01(project_norm(L, l_unit), P));
}

SubspaceContext make_context(const LinearSubspace& L, const Precision& P) {
  SubspaceContext ctx;
  ctx.n = L.ambient_dim;
  ctx.d = L.dim();
  ctx.t = compute_t(L, P);
  ctx.digits = P.digits;

  const long b = P.bits();
  const Real zero = Real::of(0, b);
  const Real quarter_pi = Real::pi(b) / Real::of(4, b);
  const Real eighth_pi = Real::pi(b) / Real::of(8, b);

  if (ctx.d == ctx.t + 1) {
    // L fills Gamma_{n-(t+1)} entirely; the coordinate line ell_{n-t} lies
    // inside L, so omega = 0 and the sentinel sigma applies.
    ctx.kind = SubspaceCase::Case1;
    ctx.omega = zero;
    ctx.omega_degenerate = true;
    ctx.sigma = eighth_pi;
  } else {
    ctx.kind = SubspaceCase::Case2;
    RealVec ell(static_cast<std::size_t>(ctx.n), zero);
    ell[static_cast<std::size_t>(ctx.n - ctx.t - 1)] = Real::of(1, b);
    ctx.omega = angle_line_to_subspace(ell, L, P);
    if (ctx.omega < P.tolerance()) {
      ctx.omega_degenerate = true;
      ctx.sigma = eighth_pi;
    } else {
      ctx.sigma = min(ctx.omega / Real::of(2, b),
                      quarter_pi - ctx.omega / Real::of(2, b));
    }
  }

  if (!(ctx.sigma > zero) || !(ctx.sigma < quarter_pi))
    throw InvariantViolation("make_context: sigma outside (0, pi/4)");

  if (ctx.t >= 1) {
    ctx.lambda = sqrt(Real::of(ctx.t, b)) / tan(ctx.sigma);
    if (!(ctx.lambda > Real::of(1, b)))
      throw InvariantViolation("make_context: lambda <= 1");
  } else {
    ctx.lambda = Real::of(1, b);
  }
  return ctx;
}

namespace {

Real cos_ratio(const SubspaceContext& ctx, long bits) {
  if (ctx.kind == SubspaceCase::Case1) return Real::of(1, bits);
  return cos(ctx.omega - ctx.sigma) / cos(ctx.omega + ctx.sigma);
}

}  // namespace

Real lambda_ratio_target(const SubspaceContext& ctx, const Precision& P) {
  return Real::of(2, P.bits()) * cos_ratio(ctx, P.bits());
}

Real lambda_scale_ratio_exp(const SubspaceContext& ctx, const Real& gamma,
                            int m, const Real& k_exp, const Precision& P) {
  const long b = P.bits();
  const Real one = Real::of(1, b);
  if (!(gamma > Real::of(0, b)) || !(gamma < one))
    throw ValidationError("lambda_scale_ratio: gamma outside (0,1)");
  if (m < 1) throw ValidationError("lambda_scale_ratio: m < 1");
  if (!(k_exp > Real::of(0, b)))
    throw ValidationError("lambda_scale_ratio: k_exp <= 0");

  const Real mr = Real::of(m, b);
  const Real base = Real::of(2, b) * sqrt(Real::of(ctx.t + 1, b)) *
                    pow(ctx.lambda, Real::of(ctx.t, b)) *
                    pow(gamma, -mr) * cos_ratio(ctx, b);
  const Real R = pow(base, one / (mr * k_exp));

  const Real floor_bound = pow(gamma, -(one / k_exp)) *
                           pow(ctx.lambda, Real::of(ctx.t, b) / (mr * k_exp));
  if (!(R > floor_bound))
    throw InvariantViolation("lambda_scale_ratio: R below gamma/lambda floor");
  if (!(R > one))
    throw InvariantViolation("lambda_scale_ratio: R <= 1");
  return R;
}

Real lambda_scale_ratio(const SubspaceContext& ctx, const Real& gamma,
                        const Weights& k, const Precision& P) {
  const int n = k.n();
  if (n < ctx.t + 1)
    throw ValidationError("lambda_scale_ratio: weights shorter than t+1");
  for (int i = 0; i + 1 < n; ++i) {
    if (k.k[static_cast<std::size_t>(i)] + P.tolerance() <
        k.k[static_cast<std::size_t>(i + 1)])
      throw ValidationError("lambda_scale_ratio: weights not descending");
  }
  const Real& k_exp = k.k[static_cast<std::size_t>(n - ctx.t - 1)];
  return lambda_scale_ratio_exp(ctx, gamma, k.m, k_exp, P);
}

}  // namespace wba
