#include "wba/transference.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace wba {

namespace {

std::string q_str(const IntVec& q) {
  std::string s = "(";
  for (std::size_t j = 0; j < q.size(); ++j) s += (j ? "," : "") + std::to_string(q[j]);
  return s + ")";
}

// Largest q_norm whose threshold c_x/(2 m q) still clears psi_last.
long long admissible_range(const Real& c_x, int m, const Real& psi_last,
                           const Precision& P) {
  if (psi_last.sign() <= 0) throw ValidationError("psi values must be positive");
  Real bound = c_x / (Real::of(2 * m, P) * psi_last);
  const Real cap = Real::of(4000000000000000000LL, P);
  if (bound >= cap) return 4000000000000000000LL;
  long long q = ceil(bound).to_ll_floor() - 1;
  return q < 0 ? 0 : q;
}

struct Worst {
  bool has = false;
  Real val;
  IntVec q;
};

bool improves(const Real& v, const IntVec& q, const Worst& w) {
  if (!w.has) return true;
  if (v != w.val) return v < w.val;
  return q < w.q;
}

struct Failure {
  long long idx = -1;  // flat lexicographic position, -1 when none
  std::string msg;
};

void keep_earlier(Failure& into, const Failure& from) {
  if (from.idx >= 0 && (into.idx < 0 || from.idx < into.idx)) into = from;
}

struct Scan {
  int n = 0, m = 0;
  long long Q = 0;
  long long radix = 0, total = 0;
  Real c_x;
  Real tol_chain;
  Real tol_ident;
  std::vector<RChoice> choices;          // per sup norm 1..Q
  std::vector<std::vector<Real>> pw;     // pw[i][s] = s^(m k_i)
};

void decode(long long idx, const Scan& s, IntVec& q) {
  for (int c = s.m - 1; c >= 0; --c) {
    q[static_cast<std::size_t>(c)] = idx % s.radix - s.Q;
    idx /= s.radix;
  }
}

// One q: the twisted value for (c), and the identity and chain checks at
// the chosen r when the q is large enough to have one.
Real eval_q(const Scan& s, const IntVec& q, long long idx, const RealVec& x,
            const LambdaSequence& lam, const SystemMatrix& theta, RealVec& dists,
            Failure& fail) {
  long long qn = 0;
  for (long long c : q) qn = std::max(qn, c < 0 ? -c : c);
  for (int i = 0; i < s.n; ++i)
    dists[static_cast<std::size_t>(i)] =
        dist_nearest_int(theta_row_apply(theta, i, q) - x[static_cast<std::size_t>(i)]);
  Real value;
  for (int i = 0; i < s.n; ++i) {
    Real term = dists[static_cast<std::size_t>(i)] *
                s.pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(qn)];
    if (i == 0 || term > value) value = term;
  }

  const RChoice& rc = s.choices[static_cast<std::size_t>(qn - 1)];
  if (rc.r >= 1 && fail.idx < 0) {
    const LambdaEntry& e = lam.entries[static_cast<std::size_t>(rc.r - 1)];
    Real lhs = Real::of(0, e.psi.prec());
    for (int i = 0; i < s.n; ++i) lhs += x[static_cast<std::size_t>(i)] * e.w.u[i];
    Real rhs = Real::of(0, e.psi.prec());
    for (int j = 0; j < s.m; ++j)
      rhs += theta_dual_apply(theta, j, e.w.u) * q[static_cast<std::size_t>(j)];
    for (int i = 0; i < s.n; ++i)
      rhs -= (theta_row_apply(theta, i, q) - x[static_cast<std::size_t>(i)]) * e.w.u[i];
    if (abs(lhs - rhs) > s.tol_ident) {
      fail = {idx, "identity off by " + abs(lhs - rhs).str(12) + " at q = " + q_str(q) +
                       ", r = " + std::to_string(rc.r)};
      return value;
    }
    Real chain;
    for (int i = 0; i < s.n; ++i) {
      long long a = e.w.u[i] < 0 ? -e.w.u[i] : e.w.u[i];
      Real term = dists[static_cast<std::size_t>(i)] * a;
      if (i == 0 || term > chain) chain = term;
    }
    Real bound = e.psi * (s.m * qn) + chain * s.n;
    if (s.c_x > bound + s.tol_chain)
      fail = {idx, "chain bound " + bound.str(12) + " below c(x) = " + s.c_x.str(12) +
                       " at q = " + q_str(q) + ", r = " + std::to_string(rc.r)};
  }
  return value;
}

TransferenceReport run_verify(const RealVec& x, const LambdaSequence& lam,
                              const SystemMatrix& theta, const Weights& k, long long Q,
                              const Precision& P, bool parallel) {
  const int n = theta.n, m = theta.m;
  if (k.n() != n || k.m != m) throw ValidationError("weight shape does not match theta");
  if (static_cast<int>(x.size()) != n || lam.context.n != n)
    throw ValidationError("x and sequence must match the theta dimension");
  if (Q < 1) throw ValidationError("Q must be >= 1");
  psi_checks(lam, P);

  const Real c_x = n_lambda_membership(x, lam, P).c_x;
  if (c_x.sign() <= 0) throw ValidationError("c(x) vanishes; x meets the sequence");
  std::vector<Real> psi;
  for (const LambdaEntry& e : lam.entries) psi.push_back(e.psi);
  const long long q_adm = admissible_range(c_x, m, psi.back(), P);
  if (Q > q_adm)
    throw RangeExhausted("Q = " + std::to_string(Q) +
                             " beyond the range certified by this sequence; largest "
                             "admissible |q| is " +
                             std::to_string(q_adm),
                         q_adm);

  Scan s;
  s.n = n;
  s.m = m;
  s.Q = Q;
  s.c_x = c_x;
  s.tol_chain = P.tolerance();
  s.tol_ident = P.tolerance() * (n * m);
  s.radix = 2 * Q + 1;
  s.total = 1;
  for (int j = 0; j < m; ++j) {
    if (s.total > 4000000000000000000LL / s.radix)
      throw BudgetError("q box of width " + std::to_string(s.radix) + "^" +
                        std::to_string(m) + " overflows the flat index");
    s.total *= s.radix;
  }
  for (long long qn = 1; qn <= Q; ++qn) {
    Real thr = c_x / Real::of(2 * static_cast<long long>(m) * qn, P);
    if (thr > psi[0]) {
      s.choices.push_back({qn, 0, Real::of(0, P), Real::of(0, P)});
    } else {
      int r = choose_r(c_x, m, qn, psi, P);
      s.choices.push_back({qn, r, psi[static_cast<std::size_t>(r - 2)],
                           psi[static_cast<std::size_t>(r - 1)]});
    }
  }
  const Real mk = Real::of(m, P);
  s.pw.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.pw[static_cast<std::size_t>(i)].push_back(Real::of(0, P));
    for (long long v = 1; v <= Q; ++v)
      s.pw[static_cast<std::size_t>(i)].push_back(
          weighted_power(Real::of(v, P), mk * k.k[static_cast<std::size_t>(i)]));
  }

  Worst global;
  Failure gfail;
  if (parallel) {
#pragma omp parallel
    {
      Worst local;
      Failure lfail;
      IntVec q(static_cast<std::size_t>(m));
      RealVec dists(static_cast<std::size_t>(n));
#pragma omp for schedule(static) nowait
      for (long long idx = 0; idx < s.total; ++idx) {
        decode(idx, s, q);
        bool zero = true;
        for (long long c : q) zero = zero && c == 0;
        if (zero) continue;
        Real v = eval_q(s, q, idx, x, lam, theta, dists, lfail);
        if (improves(v, q, local)) {
          local.val = std::move(v);
          local.q = q;
          local.has = true;
        }
      }
#pragma omp critical(wba_transfer_merge)
      {
        if (local.has && improves(local.val, local.q, global)) {
          global.val = std::move(local.val);
          global.q = std::move(local.q);
          global.has = true;
        }
        keep_earlier(gfail, lfail);
      }
    }
  } else {
    IntVec q(static_cast<std::size_t>(m));
    RealVec dists(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < s.total; ++idx) {
      decode(idx, s, q);
      bool zero = true;
      for (long long c : q) zero = zero && c == 0;
      if (zero) continue;
      Real v = eval_q(s, q, idx, x, lam, theta, dists, gfail);
      if (improves(v, q, global)) {
        global.val = std::move(v);
        global.q = q;
        global.has = true;
      }
    }
  }

  TransferenceReport rep;
  rep.c_x = c_x;
  rep.kappa_transfer = kappa_bound(c_x, lam.context, lam.gamma, lam.R_lambda, k, P);
  rep.Q_checked = Q;
  rep.worst_q = global.q;
  rep.worst_value = global.val;
  rep.per_q_r_choices = std::move(s.choices);
  if (gfail.idx >= 0) {
    rep.passed = false;
    rep.failure = gfail.msg;
  } else if (rep.worst_value < rep.kappa_transfer) {
    rep.passed = false;
    rep.failure = "twisted value " + rep.worst_value.str(12) + " at q = " +
                  q_str(rep.worst_q) + " below kappa = " + rep.kappa_transfer.str(12);
  } else {
    rep.passed = true;
  }
  return rep;
}

}  // namespace

PsiCheckReport psi_checks(const LambdaSequence& lam, const Precision& P) {
  if (lam.entries.size() < 2)
    throw ValidationError("psi checks need at least two entries");
  const Real tol = P.tolerance();
  for (const LambdaEntry& e : lam.entries) {
    if (e.psi.sign() <= 0) throw ValidationError("psi values must be positive");
    if (e.psi > lam.gamma / e.T_r + tol)
      throw InvariantViolation("(2.2'') psi = " + e.psi.str(12) +
                               " above gamma/T at r = " + std::to_string(e.r));
  }
  PsiCheckReport rep;
  const Real R2 = lam.R_lambda * lam.R_lambda;
  for (std::size_t i = 1; i < lam.entries.size(); ++i) {
    const Real& prev = lam.entries[i - 1].psi;
    const Real& cur = lam.entries[i].psi;
    if (!(cur < prev))
      throw InvariantViolation("psi_r must decrease strictly at r = " +
                               std::to_string(lam.entries[i].r));
    Real ratio = prev / cur;
    if (ratio > R2 + tol)
      throw InvariantViolation("(jj) psi ratio " + ratio.str(12) + " above R^2 = " +
                               R2.str(12) + " at r = " + std::to_string(lam.entries[i].r));
    rep.ratio_slack.push_back(R2 / ratio);
  }
  return rep;
}

int choose_r(const Real& c_x, int m, long long q_norm, const std::vector<Real>& psi,
             const Precision& P) {
  if (c_x.sign() <= 0) throw ValidationError("c(x) must be positive");
  if (m < 1 || q_norm < 1) throw ValidationError("m and q_norm must be >= 1");
  if (psi.empty()) throw ValidationError("psi list is empty");
  for (std::size_t i = 1; i < psi.size(); ++i)
    if (!(psi[i] < psi[i - 1]))
      throw ValidationError("psi list must be strictly decreasing");

  const Real thr = c_x / Real::of(2 * static_cast<long long>(m) * q_norm, P);
  if (thr > psi[0])
    throw ValidationError("threshold " + thr.str(12) +
                          " above the first psi; no chain step for so small a q");
  // psi is strictly decreasing, so "psi[j] >= thr" is a prefix property;
  // binary search for the first j below the threshold.
  std::size_t lo = 0, hi = psi.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (psi[mid] >= thr)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == psi.size())
    throw RangeExhausted("threshold " + thr.str(12) +
                             " does not clear the last psi; q too large for this "
                             "sequence",
                         admissible_range(c_x, m, psi.back(), P));
  return static_cast<int>(lo) + 1;
}

Real kappa_bound(const Real& c_x, const SubspaceContext& ctx, const Real& gamma,
                 const Real& R_lambda, const Weights& k, const Precision& P) {
  if (c_x.sign() <= 0) throw ValidationError("c(x) must be positive");
  if (gamma.sign() <= 0 || R_lambda.sign() <= 0)
    throw ValidationError("gamma and R must be positive");
  if (k.n() != ctx.n) throw ValidationError("weight count does not match the context");
  const Real mR = Real::of(k.m, P);
  const Real base = c_x / (2 * mR * R_lambda * R_lambda);
  const Real lam_t = pow(ctx.lambda, Real::of(-ctx.t, P));
  Real best;
  for (int i = 0; i < ctx.n; ++i) {
    const Real& ki = k.k[static_cast<std::size_t>(i)];
    Real term = lam_t * pow(gamma, -mR * (ki - 1)) * weighted_power(base, mR * ki);
    if (i == 0 || term < best) best = term;
  }
  return c_x / (2 * ctx.n) * best;
}

TransferenceReport verify_fact_a(const RealVec& x, const LambdaSequence& lam,
                                 const SystemMatrix& theta, const Weights& k,
                                 long long Q, const Precision& P) {
  return run_verify(x, lam, theta, k, Q, P, true);
}

TransferenceReport verify_fact_a_serial(const RealVec& x, const LambdaSequence& lam,
                                        const SystemMatrix& theta, const Weights& k,
                                        long long Q, const Precision& P) {
  return run_verify(x, lam, theta, k, Q, P, false);
}

}  // namespace wba
