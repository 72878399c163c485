#pragma once

// Inhomogeneous transference verifier: from the avoidance margin
// c(x) = min_r ||u_r . x|| of a lacunary sequence derive the explicit
// twisted badness constant kappa and check the whole chain on every
// nonzero |q| <= Q.

#include <string>
#include <vector>

#include "wba/lattice.hpp"

namespace wba {

// ratio_slack[i] = R_lambda^2 / (psi_i / psi_{i+1}) >= 1, one per
// consecutive pair of entries.
struct PsiCheckReport {
  std::vector<Real> ratio_slack;
};

// Asserts psi_r strictly decreasing, psi_r <= gamma / T_r per entry and
// the ratio bound (jj) psi_{r-1}/psi_r <= R_lambda^2; a violation names
// the tag. Needs at least two entries.
PsiCheckReport psi_checks(const LambdaSequence& lam, const Precision& P);

// The unique 1-based entry index r with psi_{r-1} >= c_x/(2 m q_norm) > psi_r,
// the left inequality non-strict. psi holds the entry values psi_1.. in
// strictly decreasing order. A threshold above psi_1 is a precondition
// failure; a threshold not above the last entry raises RangeExhausted
// carrying the largest admissible q_norm.
int choose_r(const Real& c_x, int m, long long q_norm, const std::vector<Real>& psi,
             const Precision& P);

// kappa = (c_x/(2n)) min_i lambda^(-t) gamma^(-m(k_i-1)) (c_x/(2 m R^2))^(m k_i),
// the constant of the twisted lower bound assembled from the chain. For
// n = m = 1, k = (1), t = 0 it reduces to c_x^2/(4 R^2).
Real kappa_bound(const Real& c_x, const SubspaceContext& ctx, const Real& gamma,
                 const Real& R_lambda, const Weights& k, const Precision& P);

// r choice for sup norm q; r = 0 marks the small-q regime whose threshold
// sits above psi_1, verified directly without a chain step (psi fields 0).
struct RChoice {
  long long q = 0;
  int r = 0;
  Real psi_prev;
  Real psi_r;
};

struct TransferenceReport {
  Real c_x;
  Real kappa_transfer;
  long long Q_checked = 0;
  IntVec worst_q;
  Real worst_value;  // min over q of max_i ||Theta_i(q) - x_i|| |q|^(m k_i)
  std::vector<RChoice> per_q_r_choices;
  bool passed = false;
  std::string failure;  // empty when passed, else the first counterexample
};

// For every nonzero |q| <= Q checks (a) the algebraic identity
// u_r . x = sum_j q_j theta*_j(u_r) - sum_i (Theta_i(q) - x_i) u_{r,i},
// (b) the chain c_x <= m psi_r |q| + n max_i ||Theta_i(q) - x_i|| |u_{r,i}|
// at the r chosen per (2.9), and (c) the twisted value against kappa.
// A failed check is recorded as the counterexample (first in lexicographic
// q order) instead of thrown; passed reflects all three.
// Q beyond the largest q with c_x/(2 m q) > psi_last raises RangeExhausted:
// the finite sequence certifies only that prefix.
// The parallel version partitions the q box; reports are identical.
TransferenceReport verify_fact_a(const RealVec& x, const LambdaSequence& lam,
                                 const SystemMatrix& theta, const Weights& k,
                                 long long Q, const Precision& P);
TransferenceReport verify_fact_a_serial(const RealVec& x, const LambdaSequence& lam,
                                        const SystemMatrix& theta, const Weights& k,
                                        long long Q, const Precision& P);

}  // namespace wba
