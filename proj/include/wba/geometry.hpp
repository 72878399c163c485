#pragma once

#include "wba/real.hpp"

#include <vector>

namespace wba {

// d-dimensional linear subspace of R^n, stored as an orthonormal basis.
// raw_basis keeps the vectors as supplied; basis is the Gram-Schmidt
// orthonormalization (same span, same order of first appearance).
struct LinearSubspace {
  int ambient_dim = 0;
  std::vector<RealVec> basis;
  std::vector<RealVec> raw_basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Orthonormalizes and validates. Throws ValidationError on dependent or
// near-dependent input (residual norm below tolerance) or shape mismatch.
LinearSubspace make_subspace(int ambient_dim, const std::vector<RealVec>& raw,
                             const Precision& P);

// Gamma_i = {x : x_1 = ... = x_i = 0}, returned as span(e_{i+1}, ..., e_n).
LinearSubspace coordinate_gamma(int ambient_dim, int zero_prefix,
                                const Precision& P);

struct AffineSubspace {
  LinearSubspace direction;
  RealVec offset;
};

enum class SubspaceCase { Case1, Case2 };

// t: the last n-(t+1) coordinates carry L, the first n-t-1 are identically
// zero on L and the (n-t)-th is not. Case1 means L is the whole coordinate
// subspace it sits in (d = t+1); omega is then 0 by construction.
// omega_degenerate marks the sentinel sigma = pi/8 used when omega vanishes
// (always in Case1, and in Case2 when the coordinate line lies inside L).
struct SubspaceContext {
  int n = 0;
  int d = 0;
  int t = 0;
  SubspaceCase kind = SubspaceCase::Case2;
  bool omega_degenerate = false;
  Real omega;
  Real sigma;
  Real lambda;
  int digits = 0;
};

// Minimal t with L contained in Gamma_{n-(t+1)} but not in Gamma_{n-t}.
// Containment is decided coordinatewise on the orthonormal basis with
// comparison_tolerance; t is combinatorial, so callers should build L with
// exactly-zero coordinates where containment is intended.
int compute_t(const LinearSubspace& L, const Precision& P);

Real euclid_norm(const RealVec& x);
RealVec project_onto(const LinearSubspace& L, const RealVec& x);
Real project_norm(const LinearSubspace& L, const RealVec& x);

// Angle between two lines (spanned by a and b), in [0, pi/2].
Real angle_between_lines(const RealVec& a, const RealVec& b, const Precision& P);

// arccos |P_L l| for unit l; equals min over nonzero a in L of angle(a, l).
Real angle_line_to_subspace(const RealVec& l_unit, const LinearSubspace& L,
                            const Precision& P);

// Classifies L, computes omega = angle(ell_{n-t}, L) in Case2, and derives
// sigma = min(omega/2, pi/4 - omega/2) and lambda = sqrt(t)/tan(sigma).
// Sentinels: omega below tolerance -> sigma = pi/8 (flagged); t = 0 ->
// lambda = 1 (lambda-scaled box slots are absent downstream).
SubspaceContext make_context(const LinearSubspace& L, const Precision& P);

// Growth target for |u tilde|: 2 cos(omega - sigma)/cos(omega + sigma) in
// Case2, plain 2 in Case1. Always >= 2.
Real lambda_ratio_target(const SubspaceContext& ctx, const Precision& P);

// Scale ratio R with R^{m k_exp} = 2 sqrt(t+1) lambda^t gamma^{-m} *
// cos(omega - sigma)/cos(omega + sigma). Asserts
// R > gamma^{-1/k_exp} lambda^{t/(m k_exp)}.
Real lambda_scale_ratio_exp(const SubspaceContext& ctx, const Real& gamma,
                            int m, const Real& k_exp, const Precision& P);

// Same with k_exp = k_{n-t} taken from the weight vector, which must be
// sorted descending and have at least t+1 entries.
Real lambda_scale_ratio(const SubspaceContext& ctx, const Real& gamma,
                        const Weights& k, const Precision& P);

}  // namespace wba
