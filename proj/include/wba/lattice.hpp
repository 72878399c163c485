#pragma once

// Parallelepiped enumeration over the integer lattice and the lacunary
// sequence of dual approximation vectors built from it at geometrically
// growing scales.

#include <vector>

#include "wba/geometry.hpp"
#include "wba/quality.hpp"

namespace wba {

// Closed box in Z^(n+m): |u_i| <= beta_i T^(m k_i) for each coordinate i,
// and |theta*_j(u) - v_j| <= beta_{n+1} T^(-1) for each dual index j.
struct ParallelepipedSpec {
  Real T;
  RealVec betas;  // n+1 entries, all positive
  SystemMatrix theta;
  Weights k;
};

// Validates shapes, T >= 1 and positivity. Throws ValidationError.
ParallelepipedSpec make_parallelepiped(const Real& T, RealVec betas,
                                       SystemMatrix theta, Weights k,
                                       const Precision& P);

struct LatticePoint {
  IntVec u;
  IntVec v;
};

bool operator==(const LatticePoint& a, const LatticePoint& b);
bool operator!=(const LatticePoint& a, const LatticePoint& b);

// All nonzero integer points of the box, sorted lexicographically in (u, v).
// Every integer v_j inside the dual slab is emitted, not only the nearest
// one, so slabs wider than 1 produce several v per u. Throws BudgetError
// when the estimated point count exceeds budget.
//
// enumerate_pi splits the u-box into tasks scanned in parallel; narrow slabs
// are prescanned in wrapping 64-bit fixed point so only candidates within a
// padded threshold touch MPFR. Output is identical to the serial reference.
std::vector<LatticePoint> enumerate_pi(const ParallelepipedSpec& spec,
                                       const Precision& P,
                                       long long budget = 100000000);
std::vector<LatticePoint> enumerate_pi_serial(const ParallelepipedSpec& spec,
                                              const Precision& P,
                                              long long budget = 100000000);

// One scale step: verifies by enumeration that the small box
// (1,...,1, lambda^-1 x t, gamma) holds no nonzero point, then selects from
// the big box (1,...,1, gamma^-m lambda^t at slot n-t, lambda^-1 x t, gamma)
// the point with minimal |u_{n-t}| >= 1; ties by minimal psi = max_j
// |theta*_j(u) - v_j|, then positive u_{n-t}, then lexicographic.
// The returned point satisfies the box-membership inequalities (2.1''),
// (2uy), (2uz), the exclusion (2uu), the slab bound (2.2'') and the argmax
// property (P1); each is asserted with its tag.
// Throws GammaTooLarge with the witness point when the small box is
// inhabited; the caller halves gamma and retries.
LatticePoint select_w(const Real& T, const SystemMatrix& theta,
                      const Weights& k, const SubspaceContext& ctx,
                      const Real& gamma, const Precision& P,
                      long long budget = 100000000);

// Entry r of the sequence. u_tilde is the projection of w.u onto the last
// t+1 coordinates, kept in the internally sorted weight frame (w.u itself is
// reported in the caller's coordinate order).
struct LambdaEntry {
  int r = 0;
  Real T_r;
  LatticePoint w;
  Real psi;
  IntVec u_tilde;
  Real u_proj_L_norm;
};

struct LambdaSequence {
  SubspaceContext context;  // sorted weight frame
  Real gamma;               // after any halvings
  Real R_lambda;
  std::vector<LambdaEntry> entries;
};

// Builds entries for r = 1..r_max at scales T_r = R_lambda^r, halving gamma
// and restarting whenever a small box turns out inhabited (at most 40
// halvings). Weights, theta rows and subspace coordinates are permuted to
// descending-weight order internally and un-permuted on output. Per entry
// the lower bound (P2), the projected membership (ou), the angle bound
// against sigma, the norm bracket for |u_tilde| and the growth ratios
// (lasa) and (1) are verified; a failure names the violated tag.
// budget caps each single enumeration; the top scale is prechecked.
LambdaSequence build_lambda(const SystemMatrix& theta, const Weights& k,
                            const AffineSubspace& A, const Real& gamma,
                            int r_max, const Precision& P,
                            long long budget = 100000000);

struct MembershipEstimate {
  Real c_x;
  int r = 0;  // entry index attaining the minimum (first on ties)
};

// min over entries of dist_nearest_int(x . u_r), a finite-range proxy for
// membership of x in the avoided set generated by the sequence.
MembershipEstimate n_lambda_membership(const RealVec& x,
                                       const LambdaSequence& lam,
                                       const Precision& P);

}  // namespace wba
