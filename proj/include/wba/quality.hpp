#pragma once

// Weighted approximation-quality functionals and exhaustive lower-bound
// estimators over bounded integer ranges.

#include <optional>
#include <string>
#include <vector>

#include "wba/real.hpp"

namespace wba {

// n x m real matrix. Entries keep their source literals so the whole system
// can be re-evaluated at a different precision.
struct SystemMatrix {
  int n = 0, m = 0;
  std::vector<ScalarSpec> spec;  // row-major, n*m entries
  RealVec entries;               // cached values of spec
  int digits = 0;

  const Real& at(int i, int j) const;  // zero-based
  SystemMatrix reparsed(const Precision& P) const;
};

SystemMatrix make_system_matrix(const std::vector<std::vector<std::string>>& rows,
                                const Precision& P);
SystemMatrix make_system_matrix_from_specs(std::vector<std::vector<ScalarSpec>> rows,
                                           const Precision& P);

// Row form: sum_j q_j * theta[i][j], q integer m-vector, i zero-based.
Real theta_row_apply(const SystemMatrix& theta, int i, const IntVec& q);

// Column (transposed) form: sum_i u_i * theta[i][j], u integer n-vector.
Real theta_dual_apply(const SystemMatrix& theta, int j, const IntVec& u);

enum class QualityKind { homogeneous, dual, twisted };

std::string kind_name(QualityKind k);
QualityKind kind_from_name(const std::string& s);

// max_i |q|^(m k_i) ||theta_i(q)||, q in Z^m nonzero.
Real homogeneous_quality(const SystemMatrix& theta, const Weights& k, const IntVec& q);

// max_i |q_i|^(1/(m k_i)) * max_j ||theta*_j(q)||, q in Z^n nonzero;
// zero coordinates contribute 0 to the first factor.
Real dual_quality(const SystemMatrix& theta, const Weights& k, const IntVec& q);

// max_i |q|^(m k_i) ||theta_i(q) - x_i||, q in Z^m nonzero.
Real twisted_quality(const SystemMatrix& theta, const Weights& k, const RealVec& x,
                     const IntVec& q);

struct BadnessCertificate {
  QualityKind kind = QualityKind::homogeneous;
  Real gamma;
  long long Q = 0;
  IntVec argmin_q;
  int precision_digits = 0;
};

// Exhaustive minimum of the chosen quality over nonzero |q| <= Q (sup norm).
// x is required exactly for the twisted kind. The argmin is the
// lexicographically smallest vector attaining the minimum within the scanned
// half-space (full box for twisted). The parallel version partitions the box;
// its result is identical to the serial reference.
BadnessCertificate lower_estimate(QualityKind kind, const SystemMatrix& theta,
                                  const Weights& k, const std::optional<RealVec>& x,
                                  long long Q, const Precision& P);
BadnessCertificate lower_estimate_serial(QualityKind kind, const SystemMatrix& theta,
                                         const Weights& k,
                                         const std::optional<RealVec>& x, long long Q,
                                         const Precision& P);

}  // namespace wba
