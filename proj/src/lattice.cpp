#include "wba/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace wba {

namespace {

// Integer extents of a box plus the budget-relevant point count. The count
// is kept as a Real so oversized boxes are rejected without overflow.
struct BoxGeom {
  int n = 0, m = 0;
  std::vector<long long> ub;  // |u_i| <= ub[i]
  Real vrad;
  Real count;
};

BoxGeom analyze_box(const ParallelepipedSpec& spec, const Precision& P) {
  const int n = spec.theta.n, m = spec.theta.m;
  if (n < 1 || m < 1) throw ValidationError("parallelepiped needs n, m >= 1");
  if (spec.k.n() != n || spec.k.m != m)
    throw ValidationError("weight shape does not match theta");
  if (static_cast<int>(spec.betas.size()) != n + 1)
    throw ValidationError("betas must have n+1 entries");
  if (spec.T.cmp(1) < 0) throw ValidationError("scale T must be >= 1");
  for (const Real& b : spec.betas)
    if (b.sign() <= 0) throw ValidationError("betas must be positive");

  BoxGeom g;
  g.n = n;
  g.m = m;
  const Real ll_cap = Real::from_decimal("4e18", P);
  g.count = Real::of(1, P);
  const Real mR = Real::of(m, P);
  for (int i = 0; i < n; ++i) {
    Real bound = spec.betas[i] * pow(spec.T, mR * spec.k.k[i]);
    if (bound >= ll_cap)
      throw BudgetError("u range " + bound.str(8) + " exceeds the integer width");
    g.ub.push_back(bound.to_ll_floor());
    g.count *= Real::of(2 * g.ub.back() + 1, P);
  }
  g.vrad = spec.betas[n] / spec.T;
  if (g.vrad >= ll_cap)
    throw BudgetError("slab radius " + g.vrad.str(8) + " exceeds the integer width");
  const long long vspan = 2 * g.vrad.to_ll_floor() + 1;
  for (int j = 0; j < m; ++j) g.count *= Real::of(vspan, P);
  return g;
}

void check_budget(const BoxGeom& g, long long budget, const Precision& P) {
  if (g.count > Real::of(budget, P))
    throw BudgetError("enumeration of ~" + g.count.str(8) + " points exceeds budget " +
                      std::to_string(budget));
}

bool all_zero(const IntVec& v) {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

bool lex_less(const LatticePoint& a, const LatticePoint& b) {
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

// Per-j integer windows of the dual slab around theta*_j(u); false when some
// window is empty. Closed inequalities, so the endpoints are kept.
bool v_windows(const SystemMatrix& theta, const IntVec& u, const Real& vrad,
               IntVec& vlo, IntVec& vhi) {
  const int m = theta.m;
  for (int j = 0; j < m; ++j) {
    Real x = theta_dual_apply(theta, j, u);
    vlo[j] = ceil(x - vrad).to_ll_floor();
    vhi[j] = floor(x + vrad).to_ll_floor();
    if (vlo[j] > vhi[j]) return false;
  }
  return true;
}

void emit_points(const IntVec& u, const IntVec& vlo, const IntVec& vhi,
                 std::vector<LatticePoint>& out) {
  const bool u_zero = all_zero(u);
  IntVec v(vlo);
  const int m = static_cast<int>(vlo.size());
  while (true) {
    if (!(u_zero && all_zero(v))) out.push_back({u, v});
    int j = m - 1;
    while (j >= 0 && v[j] == vhi[j]) {
      v[j] = vlo[j];
      --j;
    }
    if (j < 0) break;
    ++v[j];
  }
}

// Coordinates 0..n-2 form a mixed-radix outer odometer (coordinate 0 most
// significant); the last coordinate is cut into blocks. Ascending task index
// therefore visits u lexicographically.
struct TaskSpace {
  long long outer = 1;
  long long blocks = 1;
  long long ntasks = 1;
  static constexpr long long kBlock = 32768;
};

TaskSpace make_tasks(const BoxGeom& g) {
  TaskSpace t;
  for (int i = 0; i + 1 < g.n; ++i) t.outer *= 2 * g.ub[i] + 1;
  const long long inner = 2 * g.ub[g.n - 1] + 1;
  t.blocks = (inner + TaskSpace::kBlock - 1) / TaskSpace::kBlock;
  t.ntasks = t.outer * t.blocks;
  return t;
}

void decode_task(const TaskSpace& ts, const BoxGeom& g, long long task, IntVec& u,
                 long long& lo, long long& hi) {
  const long long b = task % ts.blocks;
  long long o = task / ts.blocks;
  for (int i = g.n - 2; i >= 0; --i) {
    const long long radix = 2 * g.ub[i] + 1;
    u[i] = o % radix - g.ub[i];
    o /= radix;
  }
  lo = -g.ub[g.n - 1] + b * TaskSpace::kBlock;
  hi = std::min(lo + TaskSpace::kBlock - 1, g.ub[g.n - 1]);
}

std::vector<LatticePoint> scan_direct(const BoxGeom& g, const ParallelepipedSpec& spec) {
  std::vector<LatticePoint> out;
  IntVec u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = -g.ub[i];
  IntVec vlo(g.m), vhi(g.m);
  while (true) {
    if (v_windows(spec.theta, u, g.vrad, vlo, vhi)) emit_points(u, vlo, vhi, out);
    int i = g.n - 1;
    while (i >= 0 && u[i] == g.ub[i]) {
      u[i] = -g.ub[i];
      --i;
    }
    if (i < 0) break;
    ++u[i];
  }
  return out;
}

std::vector<LatticePoint> scan_parallel_direct(const BoxGeom& g,
                                               const ParallelepipedSpec& spec) {
  const TaskSpace ts = make_tasks(g);
  std::vector<std::vector<LatticePoint>> slots(ts.ntasks);
#pragma omp parallel for schedule(static)
  for (long long task = 0; task < ts.ntasks; ++task) {
    IntVec u(g.n);
    long long lo = 0, hi = 0;
    decode_task(ts, g, task, u, lo, hi);
    IntVec vlo(g.m), vhi(g.m);
    for (long long un = lo; un <= hi; ++un) {
      u[g.n - 1] = un;
      if (v_windows(spec.theta, u, g.vrad, vlo, vhi))
        emit_points(u, vlo, vhi, slots[task]);
    }
  }
  std::vector<LatticePoint> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

// Wrapping fixed-point prescan. Fractional parts of theta are truncated to
// 64 bits, so sums over u are exact mod 2^64 up to a representation error
// below (sum_i ub_i + 1) * 2^-64, which is folded into the threshold. The
// prescan therefore never misses a point; false positives are discarded by
// the exact v_windows pass.
struct Prescan {
  bool eligible = false;
  std::vector<std::uint64_t> phi;  // [i*m + j]
  std::uint64_t thr = 0;
};

Prescan prepare_prescan(const BoxGeom& g, const ParallelepipedSpec& spec,
                        const Precision& P) {
  Prescan f;
  if (g.count <= Real::of(65536, P)) return f;
  const Real eighth = Real::of(1, P) / 8;
  if (g.vrad >= eighth) return f;

  Real esum = Real::of(1, P);
  for (long long b : g.ub) esum += Real::of(b, P);
  Real pad(P.bits());
  mpfr_set_ui_2exp(pad.raw(), 1, -64, MPFR_RNDN);
  Real thr_real = g.vrad + esum * pad;
  Real scaled(P.bits());
  mpfr_mul_2ui(scaled.raw(), thr_real.raw(), 64, MPFR_RNDU);
  Real cap(P.bits());
  mpfr_set_ui_2exp(cap.raw(), 1, 61, MPFR_RNDN);
  if (scaled >= cap) return f;
  f.thr = static_cast<std::uint64_t>(ceil(scaled).to_ll_floor());

  f.phi.resize(static_cast<std::size_t>(g.n) * g.m);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.m; ++j) {
      const Real& th = spec.theta.at(i, j);
      Real fr = th - floor(th);
      Real sc(P.bits());
      mpfr_mul_2ui(sc.raw(), fr.raw(), 64, MPFR_RNDD);
      mpfr_floor(sc.raw(), sc.raw());
      // frac can round up to 1 when theta sits just below an integer; the
      // scaled value 2^64 then wraps to 0.
      f.phi[static_cast<std::size_t>(i) * g.m + j] =
          mpfr_cmp_ui_2exp(sc.raw(), 1, 64) >= 0 ? 0 : mpfr_get_uj(sc.raw(), MPFR_RNDZ);
    }
  f.eligible = true;
  return f;
}

std::vector<LatticePoint> scan_fixed(const BoxGeom& g, const ParallelepipedSpec& spec,
                                     const Prescan& f) {
  const TaskSpace ts = make_tasks(g);
  std::vector<std::vector<IntVec>> slots(ts.ntasks);
  const int n = g.n, m = g.m;
  const std::uint64_t thr = f.thr, twothr = 2 * f.thr;
#pragma omp parallel for schedule(static)
  for (long long task = 0; task < ts.ntasks; ++task) {
    IntVec u(n);
    long long lo = 0, hi = 0;
    decode_task(ts, g, task, u, lo, hi);
    std::vector<std::uint64_t> acc(m, 0);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i + 1 < n; ++i)
        acc[j] += static_cast<std::uint64_t>(u[i]) * f.phi[static_cast<std::size_t>(i) * m + j];
      acc[j] += static_cast<std::uint64_t>(lo) * f.phi[static_cast<std::size_t>(n - 1) * m + j];
    }
    for (long long un = lo; un <= hi; ++un) {
      bool near = true;
      for (int j = 0; j < m; ++j)
        if (acc[j] + thr > twothr) {  // wraps: distance to 0 mod 2^64 above thr
          near = false;
          break;
        }
      if (near) {
        u[n - 1] = un;
        slots[task].push_back(u);
      }
      for (int j = 0; j < m; ++j) acc[j] += f.phi[static_cast<std::size_t>(n - 1) * m + j];
    }
  }
  std::vector<LatticePoint> out;
  IntVec vlo(m), vhi(m);
  for (auto& s : slots)
    for (IntVec& u : s)
      if (v_windows(spec.theta, u, g.vrad, vlo, vhi)) emit_points(u, vlo, vhi, out);
  return out;
}

Real point_psi(const SystemMatrix& theta, const LatticePoint& w, const Precision& P) {
  Real best = Real::of(0, P);
  for (int j = 0; j < theta.m; ++j) {
    Real d = abs(theta_dual_apply(theta, j, w.u) - Real::of(w.v[j], P));
    if (d > best) best = d;
  }
  return best;
}

void require_sorted_weights(const Weights& k, const Precision& P) {
  const Real tol = P.tolerance();
  for (int i = 0; i + 1 < k.n(); ++i)
    if (k.k[i] + tol < k.k[i + 1])
      throw ValidationError("weights must be sorted descending");
}

RealVec small_betas(const SubspaceContext& ctx, const Real& gamma, const Precision& P) {
  RealVec b;
  const Real one = Real::of(1, P);
  for (int i = 0; i < ctx.n - ctx.t; ++i) b.push_back(one);
  for (int i = 0; i < ctx.t; ++i) b.push_back(one / ctx.lambda);
  b.push_back(gamma);
  return b;
}

RealVec big_betas(const SubspaceContext& ctx, const Real& gamma, int m,
                  const Precision& P) {
  RealVec b;
  const Real one = Real::of(1, P);
  for (int i = 0; i < ctx.n - ctx.t - 1; ++i) b.push_back(one);
  b.push_back(pow(ctx.lambda, Real::of(ctx.t, P)) * pow(gamma, Real::of(-m, P)));
  for (int i = 0; i < ctx.t; ++i) b.push_back(one / ctx.lambda);
  b.push_back(gamma);
  return b;
}

std::string point_str(const LatticePoint& w) {
  std::string s = "u=(";
  for (std::size_t i = 0; i < w.u.size(); ++i)
    s += (i ? "," : "") + std::to_string(w.u[i]);
  s += ") v=(";
  for (std::size_t j = 0; j < w.v.size(); ++j)
    s += (j ? "," : "") + std::to_string(w.v[j]);
  return s + ")";
}

}  // namespace

ParallelepipedSpec make_parallelepiped(const Real& T, RealVec betas, SystemMatrix theta,
                                       Weights k, const Precision& P) {
  ParallelepipedSpec spec{T, std::move(betas), std::move(theta), std::move(k)};
  analyze_box(spec, P);
  return spec;
}

bool operator==(const LatticePoint& a, const LatticePoint& b) {
  return a.u == b.u && a.v == b.v;
}

bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }

std::vector<LatticePoint> enumerate_pi_serial(const ParallelepipedSpec& spec,
                                              const Precision& P, long long budget) {
  const BoxGeom g = analyze_box(spec, P);
  check_budget(g, budget, P);
  std::vector<LatticePoint> out = scan_direct(g, spec);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<LatticePoint> enumerate_pi(const ParallelepipedSpec& spec, const Precision& P,
                                       long long budget) {
  const BoxGeom g = analyze_box(spec, P);
  check_budget(g, budget, P);
  const Prescan f = prepare_prescan(g, spec, P);
  std::vector<LatticePoint> out =
      f.eligible ? scan_fixed(g, spec, f) : scan_parallel_direct(g, spec);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

LatticePoint select_w(const Real& T, const SystemMatrix& theta, const Weights& k,
                      const SubspaceContext& ctx, const Real& gamma, const Precision& P,
                      long long budget) {
  const int n = theta.n, m = theta.m, t = ctx.t;
  if (ctx.n != n) throw ValidationError("context dimension does not match theta");
  if (gamma.sign() <= 0 || gamma.cmp(1) >= 0)
    throw ValidationError("gamma must lie in (0,1)");
  require_sorted_weights(k, P);

  const int nt = n - t - 1;  // zero-based slot of the distinguished coordinate
  const ParallelepipedSpec small =
      make_parallelepiped(T, small_betas(ctx, gamma, P), theta, k, P);
  const std::vector<LatticePoint> occupants = enumerate_pi(small, P, budget);
  if (!occupants.empty())
    throw GammaTooLarge("(lamed1) small box at T = " + T.str(12) +
                            " contains " + point_str(occupants.front()),
                        occupants.front().u, occupants.front().v);

  const ParallelepipedSpec big =
      make_parallelepiped(T, big_betas(ctx, gamma, m, P), theta, k, P);
  const std::vector<LatticePoint> pts = enumerate_pi(big, P, budget);
  const BoxGeom gs = analyze_box(small, P);

  // The two boxes differ only in slot n-t, so "outside the small box" is the
  // integer test |u_{n-t}| > ub_small.
  bool found = false;
  LatticePoint best;
  Real best_psi;
  for (const LatticePoint& w : pts) {
    const long long a = w.u[nt] < 0 ? -w.u[nt] : w.u[nt];
    if (a <= gs.ub[nt] || a < 1) continue;
    Real psi = point_psi(theta, w, P);
    if (!found) {
      found = true;
      best = w;
      best_psi = psi;
      continue;
    }
    const long long ba = best.u[nt] < 0 ? -best.u[nt] : best.u[nt];
    bool better = false;
    if (a != ba) {
      better = a < ba;
    } else if (psi != best_psi) {
      better = psi < best_psi;
    } else if ((w.u[nt] > 0) != (best.u[nt] > 0)) {
      better = w.u[nt] > 0;
    } else {
      better = lex_less(w, best);
    }
    if (better) {
      best = w;
      best_psi = psi;
    }
  }
  if (!found)
    throw InvariantViolation(
        "selection set empty although the big box has volume 2^(n+m)");

  const Real tol = P.tolerance();
  const Real mR = Real::of(m, P);
  const Real Tmk = pow(T, mR * k.k[nt]);
  for (int i = 0; i < nt; ++i) {
    Real bound = pow(T, mR * k.k[i]);
    if (Real::of(best.u[i] < 0 ? -best.u[i] : best.u[i], P) > bound + tol)
      throw InvariantViolation("(2.1'') |u_" + std::to_string(i + 1) + "| above " +
                               bound.str(12) + " at " + point_str(best));
  }
  const Real abs_nt = Real::of(best.u[nt] < 0 ? -best.u[nt] : best.u[nt], P);
  const Real big_cap = pow(ctx.lambda, Real::of(t, P)) * pow(gamma, -mR) * Tmk;
  if (abs_nt > big_cap + tol)
    throw InvariantViolation("(2uy) |u_{n-t}| = " + abs_nt.str(12) + " above " +
                             big_cap.str(12));
  for (int i = nt + 1; i < n; ++i) {
    Real bound = pow(T, mR * k.k[i]) / ctx.lambda;
    if (Real::of(best.u[i] < 0 ? -best.u[i] : best.u[i], P) > bound + tol)
      throw InvariantViolation("(2uz) |u_" + std::to_string(i + 1) + "| above " +
                               bound.str(12) + " at " + point_str(best));
  }
  if (!(abs_nt > Tmk))
    throw InvariantViolation("(2uu) |u_{n-t}| = " + abs_nt.str(12) +
                             " not above T^(m k) = " + Tmk.str(12));
  if (best_psi > gamma / T + tol)
    throw InvariantViolation("(2.2'') psi = " + best_psi.str(12) + " above gamma/T = " +
                             (gamma / T).str(12));
  Real argmax = Real::of(0, P);
  for (int i = 0; i < n; ++i) {
    Real a = Real::of(best.u[i] < 0 ? -best.u[i] : best.u[i], P);
    Real powed = weighted_power(a, Real::of(1, P) / (mR * k.k[i]));
    if (powed > argmax) argmax = powed;
  }
  if (argmax > weighted_power(abs_nt, Real::of(1, P) / (mR * k.k[nt])) + tol)
    throw InvariantViolation("(P1) max_i |u_i|^(1/(m k_i)) not attained at n-t");
  return best;
}

LambdaSequence build_lambda(const SystemMatrix& theta, const Weights& k,
                            const AffineSubspace& A, const Real& gamma, int r_max,
                            const Precision& P, long long budget) {
  const int n = theta.n, m = theta.m;
  if (r_max < 2) throw ValidationError("r_max must be >= 2");
  if (gamma.sign() <= 0 || gamma.cmp(1) >= 0)
    throw ValidationError("gamma must lie in (0,1)");
  if (k.n() != n || k.m != m) throw ValidationError("weight shape does not match theta");
  if (A.direction.ambient_dim != n)
    throw ValidationError("subspace ambient dimension does not match theta");
  if (!A.offset.empty() && static_cast<int>(A.offset.size()) != n)
    throw ValidationError("offset dimension does not match theta");

  // Internal frame: weights descending; theta rows and subspace coordinates
  // follow the same permutation. Stable, so equal weights keep their order.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return k.k[a] > k.k[b]; });
  bool identity = true;
  for (int i = 0; i < n; ++i) identity = identity && perm[i] == i;

  SystemMatrix th = theta;
  Weights ks = k;
  LinearSubspace L = A.direction;
  if (!identity) {
    std::vector<std::vector<ScalarSpec>> rows(n);
    std::vector<ScalarSpec> wspec(n);
    for (int s = 0; s < n; ++s) {
      rows[s].assign(theta.spec.begin() + static_cast<std::ptrdiff_t>(perm[s]) * m,
                     theta.spec.begin() + static_cast<std::ptrdiff_t>(perm[s] + 1) * m);
      wspec[s] = k.spec[perm[s]];
    }
    th = make_system_matrix_from_specs(rows, P);
    ks = make_weights_from_specs(wspec, m, P);
    const std::vector<RealVec>& raw =
        A.direction.raw_basis.empty() ? A.direction.basis : A.direction.raw_basis;
    std::vector<RealVec> praw;
    for (const RealVec& b : raw) {
      RealVec pb;
      for (int s = 0; s < n; ++s) pb.push_back(b[perm[s]]);
      praw.push_back(pb);
    }
    L = make_subspace(n, praw, P);
  }

  const SubspaceContext ctx = make_context(L, P);
  const int t = ctx.t;
  const int nt = n - t - 1;
  const Real Mt = lambda_ratio_target(ctx, P);
  const Real tol = P.tolerance();
  const Real mR = Real::of(m, P);

  Real g = gamma;
  for (int halvings = 0; halvings <= 40; ++halvings) {
    const Real R = lambda_scale_ratio(ctx, g, ks, P);
    const ParallelepipedSpec top = make_parallelepiped(
        pow(R, Real::of(r_max, P)), big_betas(ctx, g, m, P), th, ks, P);
    check_budget(analyze_box(top, P), budget, P);
    try {
      std::vector<LambdaEntry> entries;
      for (int r = 1; r <= r_max; ++r) {
        const Real Tr = pow(R, Real::of(r, P));
        LatticePoint w = select_w(Tr, th, ks, ctx, g, P, budget);
        Real psi = point_psi(th, w, P);

        LambdaEntry e;
        e.r = r;
        e.T_r = Tr;
        e.w = w;
        e.psi = psi;
        e.u_tilde.assign(w.u.begin() + nt, w.u.end());
        RealVec ufull;
        for (long long c : w.u) ufull.push_back(Real::of(c, P));
        e.u_proj_L_norm = project_norm(L, ufull);

        const Real Tmk = pow(Tr, mR * ks.k[nt]);
        const Real thr = pow(ctx.lambda, Real::of(-t, P) / (mR * ks.k[nt])) *
                         pow(g, Real::of(1, P) + Real::of(1, P) / ks.k[nt]) / Tr;
        if (psi < thr - tol)
          throw InvariantViolation("(P2) psi = " + psi.str(12) + " below " +
                                   thr.str(12) + " at r = " + std::to_string(r));

        const Real cap = pow(ctx.lambda, Real::of(t, P)) * pow(g, -mR) * Tmk;
        const Real lead = Real::of(
            e.u_tilde[0] < 0 ? -e.u_tilde[0] : e.u_tilde[0], P);
        if (!(lead > Tmk) || lead > cap + tol)
          throw InvariantViolation("(ou) leading coordinate " + lead.str(12) +
                                   " outside (" + Tmk.str(12) + ", " + cap.str(12) + "]");
        for (int i = 1; i <= t; ++i) {
          Real bound = pow(Tr, mR * ks.k[nt + i]) / ctx.lambda;
          Real a = Real::of(e.u_tilde[i] < 0 ? -e.u_tilde[i] : e.u_tilde[i], P);
          if (a > bound + tol)
            throw InvariantViolation("(ou) trailing coordinate above lambda^-1 bound");
        }

        RealVec utv;
        for (long long c : e.u_tilde) utv.push_back(Real::of(c, P));
        const Real ut_norm = euclid_norm(utv);
        if (t >= 1) {
          Real tail = Real::of(0, P);
          for (int i = 1; i <= t; ++i) tail += utv[i] * utv[i];
          tail = sqrt(tail);
          if (tail / lead > tan(ctx.sigma) + tol)
            throw InvariantViolation("(angle) u_tilde leaves the sigma cone at r = " +
                                     std::to_string(r));
        }
        const Real lemma_hi = sqrt(Real::of(t + 1, P)) * cap;
        if (ut_norm < Tmk - tol || ut_norm > lemma_hi + tol)
          throw InvariantViolation("(lemma) |u_tilde|_e = " + ut_norm.str(12) +
                                   " outside [" + Tmk.str(12) + ", " +
                                   lemma_hi.str(12) + "]");

        if (!entries.empty()) {
          const LambdaEntry& p = entries.back();
          if (!(psi < p.psi))
            throw InvariantViolation("psi_r must decrease strictly: " + psi.str(12) +
                                     " after " + p.psi.str(12));
          RealVec putv;
          for (long long c : p.u_tilde) putv.push_back(Real::of(c, P));
          if (ut_norm / euclid_norm(putv) < Mt - tol)
            throw InvariantViolation("(lasa) |u_tilde| growth below " + Mt.str(12));
          if (p.u_proj_L_norm.sign() <= 0 ||
              e.u_proj_L_norm / p.u_proj_L_norm < Real::of(2, P) - tol)
            throw InvariantViolation("(1) projected growth below 2");
        }
        entries.push_back(std::move(e));
      }

      LambdaSequence out{ctx, g, R, std::move(entries)};
      if (!identity) {
        for (LambdaEntry& e : out.entries) {
          IntVec cu(n);
          for (int s = 0; s < n; ++s) cu[perm[s]] = e.w.u[s];
          e.w.u = std::move(cu);
        }
      }
      return out;
    } catch (const GammaTooLarge&) {
      g = g / 2;
    }
  }
  throw ValidationError("small box still inhabited after 40 gamma halvings");
}

MembershipEstimate n_lambda_membership(const RealVec& x, const LambdaSequence& lam,
                                       const Precision& P) {
  if (lam.entries.empty()) throw ValidationError("lambda sequence is empty");
  if (static_cast<int>(x.size()) != lam.context.n)
    throw ValidationError("x dimension does not match the sequence");
  MembershipEstimate best;
  bool first = true;
  for (const LambdaEntry& e : lam.entries) {
    Real s = Real::of(0, P);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * Real::of(e.w.u[i], P);
    Real d = dist_nearest_int(s);
    if (first || d < best.c_x) {
      best.c_x = d;
      best.r = e.r;
      first = false;
    }
  }
  return best;
}

}  // namespace wba
