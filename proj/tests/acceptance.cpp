// Acceptance gate: seven end-to-end properties, one pass/fail line each.
// Criteria 1-6 write deterministic JSON artifacts under acceptance_work/.
// Criterion 7 reruns 1-6 at the same precision and compares artifact bytes,
// then repeats them at doubled precision and compares verdicts. Wall-clock
// limits apply only to the first run at base precision; artifacts carry no
// timings so reruns can be compared byte for byte.

#include <unistd.h>

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <gmp.h>

#include "wba/cli.hpp"
#include "wba/jsonio.hpp"
#include "wba/rng.hpp"
#include "wba/transference.hpp"

using namespace wba;

namespace {

const char* kWorkDir = "acceptance_work";
const int kBaseDigits = 50;
const int kDoubledDigits = 100;

// Pinned tolerances and budgets.
const char* kFibLo = "0.447";
const char* kFibHi = "0.448";
const char* kBruteTol = "1e-20";
const char* kIdentityTol = "1e-40";
const double kTimeLimit1 = 10.0;
const double kTimeLimit2 = 60.0;
const double kTimeLimit3 = 300.0;
const long long kQualityQ = 100000;
const long long kLadderBudget = 20000000000LL;

struct Outcome {
  bool pass = false;
  std::string artifact;
  std::string detail;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

SystemMatrix phi_matrix(const Precision& P) {
  return make_system_matrix({{"(1+1*sqrt(5))/2"}}, P);
}

SystemMatrix root23_matrix(const Precision& P) {
  return make_system_matrix({{"(0+1*sqrt(2))/1"}, {"(0+1*sqrt(3))/1"}}, P);
}

Weights thirds_weights(const Precision& P) {
  return make_weights({"(2+0*sqrt(0))/3", "(1+0*sqrt(0))/3"}, 1, P);
}

// Sends stdout of a nested command run into a log file so the acceptance
// output stays one line per criterion.
struct StdoutCapture {
  int saved;

  explicit StdoutCapture(const std::string& path) {
    std::fflush(stdout);
    saved = dup(fileno(stdout));
    if (!std::freopen(path.c_str(), "w", stdout)) std::perror("freopen");
  }

  ~StdoutCapture() {
    std::fflush(stdout);
    dup2(saved, fileno(stdout));
    close(saved);
  }
};

// 1. The golden ratio oracle: the Fibonacci-denominator minimum of
// q ||q phi|| over F_10..F_20 sits in the pinned window, and the exhaustive
// estimator agrees with an independently coded loop at Q = 10^5.
Outcome criterion1(int digits, bool timed) {
  Precision P(digits);
  SystemMatrix theta = phi_matrix(P);
  Weights k = make_weights({"1"}, 1, P);

  long long fib[21];
  fib[1] = 1;
  fib[2] = 1;
  for (int i = 3; i <= 20; ++i) fib[i] = fib[i - 1] + fib[i - 2];
  Real fib_min;
  long long fib_arg = 0;
  for (int i = 10; i <= 20; ++i) {
    Real v = homogeneous_quality(theta, k, IntVec{fib[i]});
    if (fib_arg == 0 || v < fib_min) {
      fib_min = v;
      fib_arg = fib[i];
    }
  }
  bool window = fib_min >= Real::from_decimal(kFibLo, P) &&
                fib_min <= Real::from_decimal(kFibHi, P);

  auto t0 = std::chrono::steady_clock::now();
  BadnessCertificate cert =
      lower_estimate(QualityKind::homogeneous, theta, k, std::nullopt, kQualityQ, P);
  double le_seconds = elapsed(t0);

  Real phi = (Real::of(1, P) + sqrt(Real::of(5, P))) / 2;
  Real brute;
  long long brute_arg = 0;
  for (long long q = 1; q <= kQualityQ; ++q) {
    Real v = Real::of(q, P) * dist_nearest_int(Real::of(q, P) * phi);
    if (brute_arg == 0 || v < brute) {
      brute = v;
      brute_arg = q;
    }
  }
  bool match = abs(cert.gamma - brute) <= Real::from_decimal(kBruteTol, P) &&
               cert.argmin_q == IntVec{brute_arg};
  bool time_ok = !timed || le_seconds < kTimeLimit1;

  Outcome out;
  out.pass = window && match && time_ok;
  out.artifact = canonical_dump(
      Json{{"criterion", 1},
           {"digits", digits},
           {"fibonacci_range", Json::array({fib[10], fib[20]})},
           {"fibonacci_min", json_real(fib_min)},
           {"fibonacci_argmin_q", fib_arg},
           {"window", Json::array({kFibLo, kFibHi})},
           {"lower_estimate", json_certificate(cert)},
           {"brute_force_gamma", json_real(brute)},
           {"brute_force_argmin_q", brute_arg},
           {"match_tolerance", kBruteTol}});
  out.detail = format(
      "Fibonacci min %s in [%s, %s]; estimate %s brute force at Q=%lld (%.1f s)",
      fib_min.str(8).c_str(), kFibLo, kFibHi, match ? "equals" : "DIFFERS FROM",
      kQualityQ, le_seconds);
  return out;
}

// 2. Minkowski property: the unit-beta weighted box has volume 2^(n+m), so
// every random system must yield a nonzero integer point at both scales.
Outcome criterion2(int digits, bool timed) {
  Precision P(digits);
  auto t0 = std::chrono::steady_clock::now();
  Weights k = thirds_weights(P);
  SplitMix64 rng(2026);
  const long long scales[2] = {10, 100};

  int hits = 0;
  std::string first_failure;
  Json instance0 = Json::array();
  for (int inst = 0; inst < 100; ++inst) {
    Real a = rng.unit_real(P);
    Real b = rng.unit_real(P);
    Real zero = Real::of(0, P);
    while (a == zero) a = rng.unit_real(P);
    while (b == zero) b = rng.unit_real(P);
    SystemMatrix theta = make_system_matrix({{a.str()}, {b.str()}}, P);
    for (long long T : scales) {
      RealVec betas{Real::of(1, P), Real::of(1, P), Real::of(1, P)};
      ParallelepipedSpec spec =
          make_parallelepiped(Real::of(T, P), betas, theta, k, P);
      std::vector<LatticePoint> pts = enumerate_pi(spec, P);
      if (!pts.empty()) {
        ++hits;
        if (inst == 0)
          instance0.push_back(Json{{"T", T},
                                   {"points", static_cast<long long>(pts.size())},
                                   {"first_u", json_int_vec(pts.front().u)},
                                   {"first_v", json_int_vec(pts.front().v)}});
      } else if (first_failure.empty()) {
        first_failure = format("instance %d at T=%lld", inst, T);
      }
    }
  }
  double seconds = elapsed(t0);
  bool time_ok = !timed || seconds < kTimeLimit2;

  Outcome out;
  out.pass = hits == 200 && time_ok;
  out.artifact = canonical_dump(
      Json{{"criterion", 2},
           {"digits", digits},
           {"instances", 100},
           {"scales", Json::array({scales[0], scales[1]})},
           {"boxes_with_nonzero_point", hits},
           {"first_failure", first_failure.empty() ? Json() : Json(first_failure)},
           {"instance0", instance0}});
  out.detail = format("nonzero point in %d/200 unit-volume boxes (%.1f s)", hits,
                      seconds);
  return out;
}

// 3. Game soundness on the weighted parabola: a depth-5 run must stay free
// of fact violations, keep dangerous intervals short and rare, and end on a
// witness whose twisted quality is positive over the certified range.
Outcome criterion3(int digits, bool timed) {
  Precision P(digits);
  auto t0 = std::chrono::steady_clock::now();
  SystemMatrix theta = root23_matrix(P);
  Weights k = make_weights({"0.9", "0.1"}, 1, P);
  CurveSpec curve = builtin_curve("parabola", Real::of(0, P), Real::of(1, P), P);
  BadnessCertificate cert =
      lower_estimate(QualityKind::homogeneous, theta, k, std::nullopt, 200, P);
  Interval B0{Real::from_decimal("0.3", P), Real::from_decimal("0.33", P)};
  GameConfig gc = make_game_config(curve, k, B0, Real::from_decimal("0.5", P),
                                   cert.gamma, 200, std::nullopt, P);
  bool r_window = gc.R_game > Real::from_decimal("10.0", P) &&
                  gc.R_game < Real::from_decimal("10.2", P);

  std::string violation;
  GameTranscript tr;
  try {
    tr = run_game(curve, theta, k, gc, BobStrategy::center, 5, 1, P);
  } catch (const InvariantViolation& e) {
    violation = e.what();
  }

  Outcome out;
  if (!violation.empty()) {
    out.artifact = canonical_dump(Json{{"criterion", 3},
                                       {"digits", digits},
                                       {"violation", violation}});
    out.detail = "fact violation: " + violation;
    return out;
  }

  int hit_count = 0;
  bool hits_short = true;
  for (const GameStage& st : tr.stages)
    if (st.hit) {
      ++hit_count;
      hits_short = hits_short &&
                   st.hit->delta.length() < st.B.length() / 2;
    }
  bool witness_ok = tr.witness_quality > Real::of(0, P) &&
                    tr.witness_Q >= kQualityQ;
  double seconds = elapsed(t0);
  bool time_ok = !timed || seconds < kTimeLimit3;

  out.pass = tr.complete && r_window && hits_short && witness_ok && time_ok;
  out.artifact = canonical_dump(Json{{"criterion", 3},
                                     {"digits", digits},
                                     {"certificate", json_certificate(cert)},
                                     {"game_config", json_game_config(gc)},
                                     {"dangerous_pairs", hit_count},
                                     {"transcript", json_transcript(tr)}});
  out.detail = format(
      "depth 5 clean, %d dangerous pairs, witness quality %s over |q| <= %lld (%.1f s)",
      hit_count, tr.witness_quality.str(6).c_str(), tr.witness_Q, seconds);
  return out;
}

// 4. Ladder invariants on the diagonal line: build at r_max = 3 if the
// budget allows, otherwise fall back to r_max = 2 and say so, then recheck
// every reported bound from the entries alone.
Outcome criterion4(int digits, bool) {
  Precision P(digits);
  auto t0 = std::chrono::steady_clock::now();
  SystemMatrix theta = root23_matrix(P);
  Weights k = thirds_weights(P);
  LinearSubspace L =
      make_subspace(2, {{Real::of(1, P), Real::of(1, P)}}, P);
  AffineSubspace A{L, {}};
  BadnessCertificate dual =
      lower_estimate(QualityKind::dual, theta, k, std::nullopt, 1000, P);

  bool fell_back = false;
  LambdaSequence lam;
  try {
    lam = build_lambda(theta, k, A, dual.gamma, 3, P, kLadderBudget);
  } catch (const BudgetError&) {
    fell_back = true;
    lam = build_lambda(theta, k, A, dual.gamma, 2, P, kLadderBudget);
  }
  std::string note = fell_back
      ? "r_max reduced from 3 to 2: the projected T_3 enumeration exceeds the budget"
      : "";

  PsiCheckReport psi = psi_checks(lam, P);
  const SubspaceContext& ctx = lam.context;
  bool ok = ctx.t == 1 && !ctx.omega_degenerate && dual.gamma > Real::of(0, P);

  // Recheck box membership, the slab bound, the angle cap and both growth
  // ratios directly from the entries (n = 2, t = 1, m = 1 shapes).
  Real target = lambda_ratio_target(ctx, P);
  Real two = Real::of(2, P);
  std::vector<Real> ut_norms;
  for (std::size_t i = 0; i < lam.entries.size(); ++i) {
    const LambdaEntry& e = lam.entries[i];
    RealVec ut;
    for (long long c : e.u_tilde) ut.push_back(Real::of(c, P));
    RealVec axis(ut.size(), Real::of(0, P));
    axis[0] = Real::of(1, P);
    ok = ok && angle_between_lines(ut, axis, P) <= ctx.sigma;
    ut_norms.push_back(euclid_norm(ut));

    Real big1 = ctx.lambda / lam.gamma * weighted_power(e.T_r, k.k[0]);
    Real big2 = weighted_power(e.T_r, k.k[1]) / ctx.lambda;
    ok = ok && abs(Real::of(e.w.u[0], P)) <= big1;
    ok = ok && abs(Real::of(e.w.u[1], P)) <= big2;
    ok = ok && e.psi <= lam.gamma / e.T_r;
    if (i > 0) {
      const LambdaEntry& prev = lam.entries[i - 1];
      ok = ok && e.psi < prev.psi;
      ok = ok && prev.psi / e.psi <= lam.R_lambda * lam.R_lambda;
      ok = ok && ut_norms[i] >= target * ut_norms[i - 1];
      ok = ok && e.u_proj_L_norm >= two * prev.u_proj_L_norm;
    }
  }
  ok = ok && lam.entries.size() >= 2;
  double seconds = elapsed(t0);

  Outcome out;
  out.pass = ok && (!fell_back || !note.empty());
  out.artifact = canonical_dump(
      Json{{"criterion", 4},
           {"digits", digits},
           {"dual_certificate", json_certificate(dual)},
           {"r_max_requested", 3},
           {"r_max_built", static_cast<long long>(lam.entries.size())},
           {"budget", kLadderBudget},
           {"fallback", fell_back},
           {"fallback_note", note.empty() ? Json() : Json(note)},
           {"psi_ratio_slack", json_real_vec(psi.ratio_slack)},
           {"lambda", json_lambda(lam, dual.Q)}});
  out.detail = format(
      "%zu rungs%s; box, slab, angle and growth bounds hold (%.1f s)",
      lam.entries.size(),
      fell_back ? " (reduced from 3: budget)" : "", seconds);
  return out;
}

// 5. The transference identity, exactly over the rationals and to the
// pinned residual on random real systems.
Outcome criterion5(int digits, bool) {
  Precision P(digits);
  SplitMix64 rng(4410);

  mpq_t th[3][3], xv[3], lhs, rhs, tmp, acc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mpq_init(th[i][j]);
  for (int i = 0; i < 3; ++i) mpq_init(xv[i]);
  mpq_init(lhs);
  mpq_init(rhs);
  mpq_init(tmp);
  mpq_init(acc);

  int rational_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    int m = 1 + static_cast<int>(rng.below(3));
    long long u[3], q[3];
    for (int i = 0; i < n; ++i) {
      mpq_set_si(xv[i], static_cast<long>(rng.below(19)) - 9,
                 static_cast<unsigned long>(rng.below(9)) + 1);
      mpq_canonicalize(xv[i]);
      u[i] = static_cast<long long>(rng.below(101)) - 50;
      for (int j = 0; j < m; ++j) {
        mpq_set_si(th[i][j], static_cast<long>(rng.below(19)) - 9,
                   static_cast<unsigned long>(rng.below(9)) + 1);
        mpq_canonicalize(th[i][j]);
      }
    }
    for (int j = 0; j < m; ++j)
      q[j] = static_cast<long long>(rng.below(101)) - 50;

    mpq_set_ui(lhs, 0, 1);
    for (int i = 0; i < n; ++i) {
      mpq_set_si(tmp, static_cast<long>(u[i]), 1);
      mpq_mul(tmp, tmp, xv[i]);
      mpq_add(lhs, lhs, tmp);
    }
    mpq_set_ui(rhs, 0, 1);
    for (int j = 0; j < m; ++j) {
      mpq_set_ui(acc, 0, 1);
      for (int i = 0; i < n; ++i) {
        mpq_set_si(tmp, static_cast<long>(u[i]), 1);
        mpq_mul(tmp, tmp, th[i][j]);
        mpq_add(acc, acc, tmp);
      }
      mpq_set_si(tmp, static_cast<long>(q[j]), 1);
      mpq_mul(acc, acc, tmp);
      mpq_add(rhs, rhs, acc);
    }
    for (int i = 0; i < n; ++i) {
      mpq_set_ui(acc, 0, 1);
      for (int j = 0; j < m; ++j) {
        mpq_set_si(tmp, static_cast<long>(q[j]), 1);
        mpq_mul(tmp, tmp, th[i][j]);
        mpq_add(acc, acc, tmp);
      }
      mpq_sub(acc, acc, xv[i]);
      mpq_set_si(tmp, static_cast<long>(u[i]), 1);
      mpq_mul(acc, acc, tmp);
      mpq_sub(rhs, rhs, acc);
    }
    if (!mpq_equal(lhs, rhs)) ++rational_failures;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mpq_clear(th[i][j]);
  for (int i = 0; i < 3; ++i) mpq_clear(xv[i]);
  mpq_clear(lhs);
  mpq_clear(rhs);
  mpq_clear(tmp);
  mpq_clear(acc);

  Real max_residual = Real::of(0, P);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(3));
    int m = 1 + static_cast<int>(rng.below(3));
    std::vector<std::vector<std::string>> rows(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) rows[i].push_back(rng.unit_real(P).str());
    SystemMatrix theta = make_system_matrix(rows, P);
    RealVec x;
    IntVec u, q;
    for (int i = 0; i < n; ++i) {
      x.push_back(rng.unit_real(P));
      u.push_back(static_cast<long long>(rng.below(101)) - 50);
    }
    for (int j = 0; j < m; ++j)
      q.push_back(static_cast<long long>(rng.below(101)) - 50);

    Real left = Real::of(0, P);
    for (int i = 0; i < n; ++i) left = left + Real::of(u[i], P) * x[i];
    Real right = Real::of(0, P);
    for (int j = 0; j < m; ++j)
      right = right + Real::of(q[j], P) * theta_dual_apply(theta, j, u);
    for (int i = 0; i < n; ++i)
      right = right - (theta_row_apply(theta, i, q) - x[i]) * Real::of(u[i], P);
    Real residual = abs(left - right);
    if (residual > max_residual) max_residual = residual;
  }
  bool real_ok = max_residual <= Real::from_decimal(kIdentityTol, P);

  Outcome out;
  out.pass = rational_failures == 0 && real_ok;
  out.artifact = canonical_dump(Json{{"criterion", 5},
                                     {"digits", digits},
                                     {"rational_trials", 1000},
                                     {"rational_failures", rational_failures},
                                     {"real_trials", 200},
                                     {"max_real_residual", json_real(max_residual)},
                                     {"residual_tolerance", kIdentityTol}});
  out.detail = format("identity exact on 1000 rational systems, residual <= %s on 200 real ones",
                      kIdentityTol);
  return out;
}

// 6. End to end: the pipeline command must certify a positive kappa with no
// counterexample, and planting x on the orbit of q0 must shrink the
// admissible range below q0.
Outcome criterion6(int digits, bool) {
  Precision P(digits);
  ExperimentConfig c;
  c.command = "pipeline";
  c.digits = digits;
  c.seed = 1;
  c.theta_rows = {{"phi"}};
  c.k_texts = {"1"};
  c.B0_lo = "0.55";
  c.B0_hi = "0.72";
  c.beta = "0.5";
  c.cert_Q = 4096;
  c.gamma_Q = 100;
  c.r_max = 3;
  c.depth = 5;
  c.Q = 0;
  c.out_dir = std::string(kWorkDir) + "/pipeline_d" + std::to_string(digits);

  int rc;
  {
    StdoutCapture capture(c.out_dir + ".log");
    std::filesystem::create_directories(c.out_dir);
    rc = cmd_pipeline(c);
  }
  Json report = read_json_file(c.out_dir + "/pipeline_report.json");
  Real kappa =
      Real::from_decimal(report["transfer"]["kappa_transfer"].get<std::string>(), P);
  bool positive_ok = rc == 0 && report["transfer"]["passed"] == true &&
                     kappa > Real::of(0, P) &&
                     report["transfer"]["Q_checked"].get<long long>() >= 1;

  SystemMatrix theta = phi_matrix(P);
  Weights k = make_weights({"1"}, 1, P);
  AffineSubspace full{make_subspace(1, {{Real::of(1, P)}}, P), {}};
  Real gamma = (Real::of(3, P) - sqrt(Real::of(5, P))) / 2;
  LambdaSequence lam = build_lambda(theta, k, full, gamma, 3, P);
  Real phi = (Real::of(1, P) + sqrt(Real::of(5, P))) / 2;
  const long long q0 = 2;
  RealVec x{phi * Real::of(q0, P) - Real::of(3, P)};  // Theta(q0) mod 1
  MembershipEstimate me = n_lambda_membership(x, lam, P);

  bool negative_ok = false;
  long long admissible = -1;
  try {
    verify_fact_a(x, lam, theta, k, q0, P);
  } catch (const RangeExhausted& e) {
    admissible = e.max_admissible_q;
    negative_ok = admissible < q0;
  }

  Outcome out;
  out.pass = positive_ok && negative_ok;
  out.artifact = canonical_dump(
      Json{{"criterion", 6},
           {"digits", digits},
           {"pipeline_exit", rc},
           {"pipeline_report", report},
           {"negative_control", Json{{"x", json_real_vec(x)},
                                     {"planted_q", q0},
                                     {"c_x", json_real(me.c_x)},
                                     {"max_admissible_q", admissible}}}});
  out.detail = format(
      "pipeline kappa %s with no counterexample; planted x admits only |q| <= %lld < %lld",
      kappa.str(6).c_str(), admissible, q0);
  return out;
}

using Runner = Outcome (*)(int, bool);

Outcome guarded(Runner fn, int digits, bool timed) {
  try {
    return fn(digits, timed);
  } catch (const std::exception& e) {
    Outcome out;
    out.artifact = canonical_dump(Json{{"error", e.what()}});
    out.detail = std::string("exception: ") + e.what();
    return out;
  }
}

}  // namespace

int main() {
  std::filesystem::create_directories(kWorkDir);
  Runner runners[6] = {criterion1, criterion2, criterion3,
                       criterion4, criterion5, criterion6};
  Outcome base[6];
  bool all_pass = true;
  for (int i = 0; i < 6; ++i) {
    base[i] = guarded(runners[i], kBaseDigits, true);
    write_text_file(std::string(kWorkDir) + "/crit" + std::to_string(i + 1) +
                        ".json",
                    base[i].artifact);
    std::printf("[%s] criterion %d: %s\n", base[i].pass ? "PASS" : "FAIL",
                i + 1, base[i].detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && base[i].pass;
  }

  bool bytes_ok = true, verdicts_ok = true;
  std::string mismatch;
  for (int i = 0; i < 6; ++i) {
    Outcome rerun = guarded(runners[i], kBaseDigits, false);
    if (rerun.artifact != base[i].artifact) {
      bytes_ok = false;
      write_text_file(std::string(kWorkDir) + "/crit" + std::to_string(i + 1) +
                          "_rerun.json",
                      rerun.artifact);
      if (mismatch.empty()) mismatch = format("criterion %d artifact differs", i + 1);
    }
  }
  Json verdicts50 = Json::array(), verdicts100 = Json::array();
  for (int i = 0; i < 6; ++i) {
    Outcome doubled = guarded(runners[i], kDoubledDigits, false);
    verdicts50.push_back(base[i].pass);
    verdicts100.push_back(doubled.pass);
    if (doubled.pass != base[i].pass) {
      verdicts_ok = false;
      if (mismatch.empty())
        mismatch = format("criterion %d verdict flips at %d digits", i + 1,
                          kDoubledDigits);
    }
  }
  bool pass7 = bytes_ok && verdicts_ok;
  write_text_file(std::string(kWorkDir) + "/crit7.json",
                  canonical_dump(Json{{"criterion", 7},
                                      {"base_digits", kBaseDigits},
                                      {"doubled_digits", kDoubledDigits},
                                      {"artifacts_byte_identical", bytes_ok},
                                      {"verdicts_base", verdicts50},
                                      {"verdicts_doubled", verdicts100}}));
  std::printf("[%s] criterion 7: %s\n", pass7 ? "PASS" : "FAIL",
              pass7 ? format("artifacts byte-identical on rerun; verdicts stable at %d digits",
                             kDoubledDigits)
                          .c_str()
                    : mismatch.c_str());
  all_pass = all_pass && pass7;
  return all_pass ? 0 : 1;
}
