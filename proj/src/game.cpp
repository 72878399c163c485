#include "wba/game.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace wba {

namespace {

void validate_shapes(const CurveSpec& curve, const SystemMatrix& theta,
                     const Weights& k) {
  if (theta.n != curve.n)
    throw ValidationError("game: theta rows != curve components");
  if (k.n() != theta.n || k.m != theta.m)
    throw ValidationError("game: weights do not match theta");
}

Real q_power(long long ql, int m, const Real& ki) {
  return pow(Real::of(ql, ki.prec()), Real::of(m, ki.prec()) * ki);
}

// x-window of a closed f_1-coordinate interval, widened by the inversion
// tolerance so it is a superset of the true preimage.
void x_window(const CurveSpec& curve, const Interval& y, const Precision& P,
              Real& xa, Real& xb) {
  Real u = f1_inverse(curve, y.lo, P);
  Real v = f1_inverse(curve, y.hi, P);
  if (curve.f1_direction < 0) std::swap(u, v);
  const Real tol = P.tolerance();
  xa = max(curve.a, u - tol);
  xb = min(curve.b, v + tol);
}

bool hit_order(const DangerHit& a, const DangerHit& b) {
  if (a.q != b.q) return a.q < b.q;
  return a.p < b.p;
}

bool hit_same_pair(const DangerHit& a, const DangerHit& b) {
  return a.q == b.q && a.p == b.p;
}

// Stage annulus in sup norm: s = 0 covers exactly |q| = 1; s >= 1 covers
// floor(R^{s-1})+1 .. floor(R^s). Both stages compute R^s identically, so
// consecutive annuli partition the integers without gap or overlap.
void stage_bounds(int s, const Real& R, const Precision& P, long long& qlo,
                  long long& qhi) {
  if (s == 0) {
    qlo = 1;
    qhi = 1;
    return;
  }
  const long b = P.bits();
  qlo = pow(R, Real::of(s - 1, b)).to_ll_floor() + 1;
  qhi = pow(R, Real::of(s, b)).to_ll_floor();
}

// All q with qlo <= sup|q| <= qhi, first nonzero coordinate positive, in
// lexicographic order.
std::vector<IntVec> annulus_points(int m, long long qlo, long long qhi) {
  std::vector<IntVec> out;
  if (qhi < qlo || qhi < 1) return out;
  IntVec q(static_cast<std::size_t>(m), -qhi);
  while (true) {
    long long sup = sup_norm(q);
    bool canonical = false;
    for (long long c : q) {
      if (c != 0) {
        canonical = c > 0;
        break;
      }
    }
    if (canonical && sup >= qlo && sup <= qhi) out.push_back(q);
    int i = m - 1;
    while (i >= 0 && q[static_cast<std::size_t>(i)] == qhi) {
      q[static_cast<std::size_t>(i)] = -qhi;
      --i;
    }
    if (i < 0) break;
    ++q[static_cast<std::size_t>(i)];
  }
  return out;
}

struct StageScan {
  const CurveSpec* curve;
  const SystemMatrix* theta;
  const Weights* k;
  const Interval* Bs;
  Real epsilon;
  RealVec img_lo;  // enclosure of f_i over the B_s window, per component
  RealVec img_hi;

  StageScan(const Interval& Bs_in, const CurveSpec& c, const SystemMatrix& th,
            const Weights& kk, const Real& eps, const Precision& P)
      : curve(&c), theta(&th), k(&kk), Bs(&Bs_in), epsilon(eps) {
    Real xa(P.bits()), xb(P.bits());
    x_window(c, Bs_in, P, xa, xb);
    for (int i = 0; i < c.n; ++i) {
      Real lo(P.bits()), hi(P.bits());
      poly_image_bounds(c.f[static_cast<std::size_t>(i)], xa, xb, 128, lo, hi);
      img_lo.push_back(lo);
      img_hi.push_back(hi);
    }
  }

  // Appends hits for one q; returns the number of (p, q) candidates tried.
  long long scan_q(const IntVec& q, const Precision& P,
                   std::vector<DangerHit>& out) const {
    const int n = curve->n;
    const long long ql = sup_norm(q);
    RealVec rho, cval;
    for (int i = 0; i < n; ++i) {
      rho.push_back(epsilon / q_power(ql, k->m, k->k[static_cast<std::size_t>(i)]));
      cval.push_back(theta_row_apply(*theta, i, q));
    }
    std::vector<long long> plo(static_cast<std::size_t>(n));
    std::vector<long long> pcount(static_cast<std::size_t>(n));
    long long total = 1;
    for (int i = 0; i < n; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      plo[ui] = (cval[ui] - img_hi[ui] - rho[ui]).to_ll_floor();
      const long long phi = (cval[ui] - img_lo[ui] + rho[ui]).to_ll_floor() + 1;
      pcount[ui] = phi - plo[ui] + 1;
      total *= pcount[ui];
    }

    IntVec p(static_cast<std::size_t>(n));
    std::vector<long long> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] =
            plo[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
      auto d = delta_interval(*curve, *theta, *k, epsilon, p, q, P);
      if (d && intervals_meet(*d, *Bs)) out.push_back({p, q, *d});
      int i = n - 1;
      while (i >= 0 &&
             idx[static_cast<std::size_t>(i)] + 1 == pcount[static_cast<std::size_t>(i)]) {
        idx[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
    }
    return total;
  }
};

std::optional<DangerHit> resolve_hits(std::vector<DangerHit>& hits) {
  if (hits.empty()) return std::nullopt;
  std::sort(hits.begin(), hits.end(), hit_order);
  hits.erase(std::unique(hits.begin(), hits.end(), hit_same_pair), hits.end());
  if (hits.size() > 1) {
    std::string msg = "two danger windows meet the stage interval: q={";
    for (long long c : hits[0].q) msg += std::to_string(c) + ",";
    msg += "} and q={";
    for (long long c : hits[1].q) msg += std::to_string(c) + ",";
    msg += "}";
    throw Fact2Violation(msg);
  }
  return hits[0];
}

std::optional<DangerHit> find_dangerous_impl(int s, const Interval& Bs,
                                             const CurveSpec& curve,
                                             const SystemMatrix& theta,
                                             const Weights& k,
                                             const GameConfig& cfg,
                                             const Precision& P,
                                             long long& budget, bool parallel) {
  validate_shapes(curve, theta, k);
  if (s < 0) throw ValidationError("find_dangerous: negative stage");
  long long qlo = 0, qhi = 0;
  stage_bounds(s, cfg.R_game, P, qlo, qhi);
  std::vector<IntVec> qs = annulus_points(theta.m, qlo, qhi);
  if (qs.empty()) return std::nullopt;

  budget -= static_cast<long long>(qs.size());
  if (budget < 0) throw BudgetError("find_dangerous: candidate budget exhausted");

  StageScan scan(Bs, curve, theta, k, cfg.epsilon, P);
  std::vector<DangerHit> hits;
  long long tried = 0;

  if (parallel) {
#pragma omp parallel
    {
      std::vector<DangerHit> local;
      long long local_tried = 0;
#pragma omp for schedule(static) nowait
      for (long long j = 0; j < static_cast<long long>(qs.size()); ++j)
        local_tried += scan.scan_q(qs[static_cast<std::size_t>(j)], P, local);
#pragma omp critical(wba_game_merge)
      {
        hits.insert(hits.end(), local.begin(), local.end());
        tried += local_tried;
      }
    }
  } else {
    for (const IntVec& q : qs) tried += scan.scan_q(q, P, hits);
  }

  budget -= tried;
  if (budget < 0) throw BudgetError("find_dangerous: candidate budget exhausted");
  return resolve_hits(hits);
}

}  // namespace

bool intervals_meet(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

bool intervals_overlap_open(const Interval& a, const Interval& b) {
  return a.lo < b.hi && b.lo < a.hi;
}

GameConfig make_game_config(const CurveSpec& curve, const Weights& k,
                            const Interval& B0, const Real& beta,
                            const Real& c_hom, long long cert_Q,
                            const std::optional<Real>& epsilon,
                            const Precision& P) {
  const long b = P.bits();
  const Real zero = Real::of(0, b);
  const Real one = Real::of(1, b);
  const Real tol = P.tolerance();

  for (int i = 0; i + 1 < k.n(); ++i) {
    if (k.k[static_cast<std::size_t>(i)] + tol < k.k[static_cast<std::size_t>(i + 1)])
      throw ValidationError("game config: weights must be sorted descending");
  }
  if (k.n() != curve.n)
    throw ValidationError("game config: weights do not match curve");
  if (!(beta > zero) || !(beta < one))
    throw ValidationError("game config: beta outside (0,1)");
  if (!(B0.lo < B0.hi)) throw ValidationError("game config: empty B0");
  if (B0.lo < curve.f1_min() - tol || B0.hi > curve.f1_max() + tol)
    throw ValidationError("game config: B0 outside f_1(I)");
  if (!(c_hom > zero)) throw ValidationError("game config: c_hom must be positive");
  if (cert_Q < 1) throw ValidationError("game config: certificate Q < 1");

  GameConfig cfg;
  cfg.beta = beta;
  cfg.B0 = B0;
  cfg.c_hom = c_hom;
  cfg.cert_Q = cert_Q;

  const Real blen = B0.hi - B0.lo;
  if (!(blen < c_hom / (2 * curve.kappa_curve)))
    throw ValidationError("game config: |B0| >= c_hom/(2 kappa)");

  const Real mk1 = Real::of(k.m, b) * k.k[0];
  cfg.R_game = pow(Real::of(4, b) / beta, one / mk1);

  const Real eps_cap = blen * beta / 16;
  cfg.epsilon = epsilon ? *epsilon : blen * beta / 32;
  if (!(cfg.epsilon > zero) || !(cfg.epsilon < eps_cap))
    throw ValidationError("game config: epsilon outside (0, |B0| beta/16)");
  return cfg;
}

std::optional<Interval> delta_interval(const CurveSpec& curve,
                                       const SystemMatrix& theta,
                                       const Weights& k, const Real& epsilon,
                                       const IntVec& p, const IntVec& q,
                                       const Precision& P) {
  validate_shapes(curve, theta, k);
  if (static_cast<int>(p.size()) != theta.n)
    throw ValidationError("delta_interval: p size != n");
  if (static_cast<int>(q.size()) != theta.m)
    throw ValidationError("delta_interval: q size != m");
  if (sup_norm(q) == 0) throw ValidationError("delta_interval: q = 0");
  if (!(epsilon > Real::of(0, P.bits())))
    throw ValidationError("delta_interval: epsilon <= 0");

  const int n = theta.n;
  const long long ql = sup_norm(q);
  const Real tol = P.tolerance();

  const Real rho1 = epsilon / q_power(ql, k.m, k.k[0]);
  const Real c1 = theta_row_apply(theta, 0, q) - Real::of(p[0], P.bits());
  Interval slab1{max(c1 - rho1, curve.f1_min()), min(c1 + rho1, curve.f1_max())};
  if (!(slab1.lo <= slab1.hi)) return std::nullopt;

  Real xa(P.bits()), xb(P.bits());
  x_window(curve, slab1, P, xa, xb);

  for (int i = 1; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const Real rho = epsilon / q_power(ql, k.m, k.k[ui]);
    const Real ci = theta_row_apply(theta, i, q) - Real::of(p[ui], P.bits());
    const Real slab_lo = ci - rho;
    const Real slab_hi = ci + rho;

    Real img_l(P.bits()), img_h(P.bits());
    poly_image_bounds(curve.f[ui], xa, xb, 32, img_l, img_h);
    if (img_h < slab_lo || img_l > slab_hi) return std::nullopt;

    // Shrink the window when f_i is provably monotone on it; the bisection
    // results are pushed back out by the tolerance so the hull stays a
    // superset of the true solution set.
    Real d_l(P.bits()), d_h(P.bits());
    poly_image_bounds(curve.fp[ui], xa, xb, 32, d_l, d_h);
    const bool inc = d_l > Real::of(0, P.bits());
    const bool dec = d_h < Real::of(0, P.bits());
    if (inc || dec) {
      const Poly& f = curve.f[ui];
      Real lo_x = poly_bisect(f, xa, xb, inc ? slab_lo : slab_hi, inc, tol);
      Real hi_x = poly_bisect(f, xa, xb, inc ? slab_hi : slab_lo, inc, tol);
      xa = max(xa, lo_x - tol);
      xb = min(xb, hi_x + tol);
      if (!(xa <= xb)) return std::nullopt;
    }
  }

  Real ya = curve.f1(xa);
  Real yb = curve.f1(xb);
  if (ya > yb) std::swap(ya, yb);
  Interval out{ya, yb};

  const Real margin =
      (deriv_sup_bound(curve.f[0], curve.a, curve.b) + Real::of(1, P.bits())) * tol * 4;
  if (out.length() > 2 * rho1 + margin)
    throw InvariantViolation("delta_interval: hull exceeds the first-slab bound");
  return out;
}

std::optional<DangerHit> find_dangerous(int s, const Interval& Bs,
                                        const CurveSpec& curve,
                                        const SystemMatrix& theta,
                                        const Weights& k, const GameConfig& cfg,
                                        const Precision& P, long long& budget) {
  return find_dangerous_impl(s, Bs, curve, theta, k, cfg, P, budget, true);
}

std::optional<DangerHit> find_dangerous_serial(int s, const Interval& Bs,
                                               const CurveSpec& curve,
                                               const SystemMatrix& theta,
                                               const Weights& k,
                                               const GameConfig& cfg,
                                               const Precision& P,
                                               long long& budget) {
  return find_dangerous_impl(s, Bs, curve, theta, k, cfg, P, budget, false);
}

Interval alice_move(const Interval& Bs, const std::optional<Interval>& danger,
                    const Precision&) {
  if (!(Bs.lo <= Bs.hi)) throw ValidationError("alice_move: empty interval");
  const Real quarter = Bs.length() / 4;

  if (!danger || danger->hi < Bs.lo || danger->lo > Bs.hi)
    return {Bs.lo, Bs.lo + quarter};

  Interval D{max(danger->lo, Bs.lo), min(danger->hi, Bs.hi)};
  if (D.length() > Bs.length() / 2)
    throw Fact1Violation("danger window fills more than half the stage interval");

  const Real left_gap = D.lo - Bs.lo;
  const Real right_gap = Bs.hi - D.hi;
  if (left_gap >= right_gap) return {Bs.lo, Bs.lo + quarter};
  return {D.hi, D.hi + quarter};
}

Interval bob_move(BobStrategy strategy, const Interval& As, int s,
                  const CurveSpec& curve, const SystemMatrix& theta,
                  const Weights& k, const GameConfig& cfg, const Precision& P,
                  SplitMix64& rng, long long& budget) {
  if (!(As.lo < As.hi)) throw ValidationError("bob_move: empty interval");
  const Real blen = cfg.beta * As.length();
  const Real play = As.length() - blen;

  switch (strategy) {
    case BobStrategy::center: {
      const Real off = play / 2;
      return {As.lo + off, As.lo + off + blen};
    }
    case BobStrategy::seeded_random: {
      const Real off = rng.unit_real(P) * play;
      return {As.lo + off, As.lo + off + blen};
    }
    case BobStrategy::adversary: {
      auto next = find_dangerous_serial(s + 1, As, curve, theta, k, cfg, P, budget);
      if (!next) {
        const Real off = play / 2;
        return {As.lo + off, As.lo + off + blen};
      }
      Real lo = next->delta.center() - blen / 2;
      lo = min(max(lo, As.lo), As.hi - blen);
      return {lo, lo + blen};
    }
  }
  throw ValidationError("bob_move: unknown strategy");
}

GameTranscript run_game(const CurveSpec& curve, const SystemMatrix& theta,
                        const Weights& k, const GameConfig& cfg,
                        BobStrategy strategy, int depth_S, std::uint64_t seed,
                        const Precision& P) {
  validate_shapes(curve, theta, k);
  if (depth_S < 0) throw ValidationError("run_game: negative depth");
  const long b = P.bits();
  const Real mk1 = Real::of(k.m, b) * k.k[0];
  if (pow(cfg.R_game, Real::of(depth_S * k.m, b)) >
      Real::of(cfg.candidate_budget, b))
    throw BudgetError("run_game: R^(S m) exceeds the candidate budget");

  GameTranscript tr;
  tr.certificate_Q = cfg.cert_Q;
  SplitMix64 rng(seed);
  long long budget = cfg.candidate_budget;
  Interval B = cfg.B0;
  const Real tol = P.tolerance();

  for (int s = 0; s < depth_S; ++s) {
    const Real expected =
        pow(cfg.R_game, -(Real::of(s, b) * mk1)) * cfg.B0.length();
    if (abs(B.length() - expected) > tol * max(Real::of(1, b), expected))
      throw InvariantViolation("run_game: stage interval length drifted");

    GameStage stage;
    stage.s = s;
    stage.B = B;
    try {
      stage.hit = find_dangerous(s, B, curve, theta, k, cfg, P, budget);
      stage.A = alice_move(
          B, stage.hit ? std::optional<Interval>(stage.hit->delta) : std::nullopt, P);

      // Independent serial re-scan of the chosen quarter: nothing dangerous
      // may reach its interior.
      auto recheck = find_dangerous_serial(s, stage.A, curve, theta, k, cfg, P, budget);
      if (recheck && intervals_overlap_open(recheck->delta, stage.A))
        throw InvariantViolation("run_game: Alice interval meets a danger window");

      stage.B_next =
          bob_move(strategy, stage.A, s, curve, theta, k, cfg, P, rng, budget);
    } catch (const BudgetError&) {
      tr.complete = false;
      break;
    }
    if (stage.B_next.lo < stage.A.lo - tol || stage.B_next.hi > stage.A.hi + tol)
      throw InvariantViolation("run_game: Bob interval escapes Alice's");

    B = stage.B_next;
    tr.stages.push_back(std::move(stage));
    tr.depth_reached = s + 1;
  }

  tr.B_final = B;
  tr.witness_x = f1_inverse(curve, B.center(), P);
  for (int i = 0; i < curve.n; ++i) tr.witness_point.push_back(curve.fi(i, tr.witness_x));

  Real qreal = floor(pow(cfg.R_game, Real::of(tr.depth_reached, b)));
  long long wq = 1;
  if (qreal >= Real::of(1, b)) wq = qreal.to_ll_floor();
  tr.witness_Q = wq;

  BadnessCertificate cert = lower_estimate(QualityKind::twisted, theta, k,
                                           tr.witness_point, wq, P);
  tr.witness_quality = cert.gamma;
  if (!(tr.witness_quality > Real::of(0, b)))
    throw InvariantViolation("run_game: witness quality vanished");
  return tr;
}

}  // namespace wba
