#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wba/curve.hpp"
#include "wba/quality.hpp"
#include "wba/rng.hpp"

namespace wba {

struct Interval {
  Real lo;
  Real hi;

  Real length() const { return hi - lo; }
  Real center() const { return (lo + hi) / 2; }
  bool contains(const Real& x) const { return lo <= x && x <= hi; }
};

// Closed-interval overlap (touching counts).
bool intervals_meet(const Interval& a, const Interval& b);
// Interior overlap (touching endpoints does not count).
bool intervals_overlap_open(const Interval& a, const Interval& b);

// Alice plays alpha = 1/4 on f_1(I). c_hom is the homogeneous badness
// constant of Theta certified at cert_Q; every guarantee downstream is
// conditional on that certificate.
struct GameConfig {
  Real beta;
  Interval B0;
  Real c_hom;
  long long cert_Q = 0;
  Real epsilon;
  Real R_game;  // (4/beta)^(1/(m k_1))
  long long candidate_budget = 100000000;
};

// Validates |B0| < c_hom/(2 kappa), B0 inside f_1(I), and
// epsilon < |B0| beta/16 (the epsilon constraint with R^(m k_1) = 4/beta).
// Default epsilon is half the cap: |B0| beta/32.
GameConfig make_game_config(const CurveSpec& curve, const Weights& k,
                            const Interval& B0, const Real& beta,
                            const Real& c_hom, long long cert_Q,
                            const std::optional<Real>& epsilon,
                            const Precision& P);

struct DangerHit {
  IntVec p;
  IntVec q;
  Interval delta;
};

struct GameStage {
  int s = 0;
  Interval B;
  std::optional<DangerHit> hit;
  Interval A;
  Interval B_next;
};

struct GameTranscript {
  std::vector<GameStage> stages;
  Interval B_final;
  Real witness_x;
  RealVec witness_point;
  Real witness_quality;
  long long witness_Q = 0;
  long long certificate_Q = 0;
  bool complete = true;
  int depth_reached = 0;
};

// The danger window of (p, q) in the f_1 coordinate: the hull of
// {f_1(x) : max_i |q|^(m k_i) |theta_i(q) - f_i(x) - p_i| < epsilon}.
// Absent when the set is empty. The hull sits inside the i = 1 slab, so its
// length is at most 2 epsilon |q|^(-m k_1).
std::optional<Interval> delta_interval(const CurveSpec& curve,
                                       const SystemMatrix& theta,
                                       const Weights& k, const Real& epsilon,
                                       const IntVec& p, const IntVec& q,
                                       const Precision& P);

// Scans the stage-s annulus R^(s-1) < |q| <= R^s (0 < |q| <= 1 at s = 0,
// one of each +-q pair) for danger windows meeting Bs. At most one pair may
// hit; two distinct hits raise Fact2Violation. budget counts candidate
// (p, q) checks and goes negative-exhausted via BudgetError.
std::optional<DangerHit> find_dangerous(int s, const Interval& Bs,
                                        const CurveSpec& curve,
                                        const SystemMatrix& theta,
                                        const Weights& k, const GameConfig& cfg,
                                        const Precision& P, long long& budget);
std::optional<DangerHit> find_dangerous_serial(int s, const Interval& Bs,
                                               const CurveSpec& curve,
                                               const SystemMatrix& theta,
                                               const Weights& k,
                                               const GameConfig& cfg,
                                               const Precision& P,
                                               long long& budget);

// Quarter-length subinterval avoiding the danger window: leftmost quarter
// when nothing is dangerous, else the leftmost quarter of the larger
// complementary gap (left gap wins ties). Danger longer than |Bs|/2 raises
// Fact1Violation; exactly half still leaves a quarter-length gap.
Interval alice_move(const Interval& Bs, const std::optional<Interval>& danger,
                    const Precision& P);

enum class BobStrategy { center, seeded_random, adversary };

// Length beta |As|, inside As. adversary looks one stage ahead and centers
// on the danger window it finds there (center play when none).
Interval bob_move(BobStrategy strategy, const Interval& As, int s,
                  const CurveSpec& curve, const SystemMatrix& theta,
                  const Weights& k, const GameConfig& cfg, const Precision& P,
                  SplitMix64& rng, long long& budget);

// Plays S stages, re-verifies every Alice move with the serial scanner, and
// evaluates the witness (center of the final interval, mapped to the curve)
// with the twisted lower estimate over |q| <= floor(R^depth). Budget
// exhaustion yields a partial transcript (complete = false).
GameTranscript run_game(const CurveSpec& curve, const SystemMatrix& theta,
                        const Weights& k, const GameConfig& cfg,
                        BobStrategy strategy, int depth_S, std::uint64_t seed,
                        const Precision& P);

}  // namespace wba
