#include "wba/quality.hpp"

#include <algorithm>
#include <cstdlib>

namespace wba {

const Real& SystemMatrix::at(int i, int j) const {
  if (i < 0 || i >= n || j < 0 || j >= m)
    throw ValidationError("matrix index out of range");
  return entries[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)];
}

SystemMatrix make_system_matrix_from_specs(std::vector<std::vector<ScalarSpec>> rows,
                                           const Precision& P) {
  if (rows.empty() || rows[0].empty())
    throw ValidationError("matrix: need at least one row and one column");
  SystemMatrix S;
  S.n = static_cast<int>(rows.size());
  S.m = static_cast<int>(rows[0].size());
  S.digits = P.digits;
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != S.m) throw ValidationError("matrix: ragged rows");
    for (auto& e : row) {
      Real v = e.value(P);
      if (!v.is_finite()) throw ValidationError("matrix: non-finite entry");
      S.entries.push_back(std::move(v));
      S.spec.push_back(std::move(e));
    }
  }
  return S;
}

SystemMatrix make_system_matrix(const std::vector<std::vector<std::string>>& rows,
                                const Precision& P) {
  std::vector<std::vector<ScalarSpec>> specs;
  specs.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<ScalarSpec> r;
    r.reserve(row.size());
    for (const auto& cell : row) r.push_back(parse_scalar(cell));
    specs.push_back(std::move(r));
  }
  return make_system_matrix_from_specs(std::move(specs), P);
}

SystemMatrix SystemMatrix::reparsed(const Precision& P) const {
  std::vector<std::vector<ScalarSpec>> rows(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      rows[static_cast<size_t>(i)].push_back(
          spec[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)]);
  return make_system_matrix_from_specs(std::move(rows), P);
}

Real theta_row_apply(const SystemMatrix& theta, int i, const IntVec& q) {
  if (i < 0 || i >= theta.n) throw ValidationError("row index out of range");
  if (static_cast<int>(q.size()) != theta.m)
    throw ValidationError("q has wrong dimension for row application");
  Real acc(theta.at(i, 0).prec());
  mpfr_set_zero(acc.raw(), 1);
  for (int j = 0; j < theta.m; ++j) acc += theta.at(i, j) * q[static_cast<size_t>(j)];
  return acc;
}

Real theta_dual_apply(const SystemMatrix& theta, int j, const IntVec& u) {
  if (j < 0 || j >= theta.m) throw ValidationError("column index out of range");
  if (static_cast<int>(u.size()) != theta.n)
    throw ValidationError("u has wrong dimension for column application");
  Real acc(theta.at(0, j).prec());
  mpfr_set_zero(acc.raw(), 1);
  for (int i = 0; i < theta.n; ++i) acc += theta.at(i, j) * u[static_cast<size_t>(i)];
  return acc;
}

std::string kind_name(QualityKind k) {
  switch (k) {
    case QualityKind::homogeneous: return "homogeneous";
    case QualityKind::dual: return "dual";
    case QualityKind::twisted: return "twisted";
  }
  throw ValidationError("unknown quality kind");
}

QualityKind kind_from_name(const std::string& s) {
  if (s == "homogeneous") return QualityKind::homogeneous;
  if (s == "dual") return QualityKind::dual;
  if (s == "twisted") return QualityKind::twisted;
  throw ValidationError("unknown quality kind: '" + s + "'");
}

namespace {

void check_shapes(const SystemMatrix& theta, const Weights& k) {
  if (k.n() != theta.n || k.m != theta.m)
    throw ValidationError("weights and matrix dimensions disagree");
}

void check_nonzero(const IntVec& q) {
  for (long long v : q)
    if (v != 0) return;
  throw ValidationError("q must be nonzero");
}

}  // namespace

Real homogeneous_quality(const SystemMatrix& theta, const Weights& k, const IntVec& q) {
  check_shapes(theta, k);
  if (static_cast<int>(q.size()) != theta.m) throw ValidationError("q has wrong dimension");
  check_nonzero(q);
  Real s = Real::of(sup_norm(q), theta.entries[0].prec());
  Real best;
  for (int i = 0; i < theta.n; ++i) {
    Real term = weighted_power(s, k.k[static_cast<size_t>(i)] * k.m) *
                dist_nearest_int(theta_row_apply(theta, i, q));
    if (i == 0 || term > best) best = term;
  }
  return best;
}

Real dual_quality(const SystemMatrix& theta, const Weights& k, const IntVec& q) {
  check_shapes(theta, k);
  if (static_cast<int>(q.size()) != theta.n) throw ValidationError("q has wrong dimension");
  check_nonzero(q);
  mpfr_prec_t bits = theta.entries[0].prec();
  Real fa = Real::of(0, bits);
  Real one = Real::of(1, bits);
  for (int i = 0; i < theta.n; ++i) {
    long long a = std::abs(q[static_cast<size_t>(i)]);
    if (a == 0) continue;
    Real term = weighted_power(Real::of(a, bits), one / (k.k[static_cast<size_t>(i)] * k.m));
    if (term > fa) fa = term;
  }
  Real fb;
  for (int j = 0; j < theta.m; ++j) {
    Real d = dist_nearest_int(theta_dual_apply(theta, j, q));
    if (j == 0 || d > fb) fb = d;
  }
  return fa * fb;
}

Real twisted_quality(const SystemMatrix& theta, const Weights& k, const RealVec& x,
                     const IntVec& q) {
  check_shapes(theta, k);
  if (static_cast<int>(x.size()) != theta.n) throw ValidationError("x has wrong dimension");
  if (static_cast<int>(q.size()) != theta.m) throw ValidationError("q has wrong dimension");
  check_nonzero(q);
  Real s = Real::of(sup_norm(q), theta.entries[0].prec());
  Real best;
  for (int i = 0; i < theta.n; ++i) {
    Real term = weighted_power(s, k.k[static_cast<size_t>(i)] * k.m) *
                dist_nearest_int(theta_row_apply(theta, i, q) - x[static_cast<size_t>(i)]);
    if (i == 0 || term > best) best = term;
  }
  return best;
}

namespace {

struct Best {
  bool has = false;
  Real val;
  IntVec q;
};

// Total order on candidates: smaller value wins, ties go to the
// lexicographically smaller vector. Makes any partition order-independent.
bool better(const Real& v, const IntVec& q, const Best& b) {
  if (!b.has) return true;
  if (v < b.val) return true;
  if (b.val < v) return false;
  return std::lexicographical_compare(q.begin(), q.end(), b.q.begin(), b.q.end());
}

struct ScanSetup {
  int d = 0;               // coordinates enumerated
  bool halved = false;     // quality even in q: skip negated duplicates
  long long radix = 0;
  long long total = 0;
  std::vector<RealVec> pw;  // per i: power factors indexed by magnitude
};

ScanSetup prepare(QualityKind kind, const SystemMatrix& theta, const Weights& k,
                  const std::optional<RealVec>& x, long long Q, const Precision& P) {
  check_shapes(theta, k);
  if (Q < 1) throw ValidationError("lower_estimate: Q must be >= 1");
  if (kind == QualityKind::twisted) {
    if (!x) throw ValidationError("lower_estimate: twisted kind needs a target x");
    if (static_cast<int>(x->size()) != theta.n)
      throw ValidationError("target x has wrong dimension");
  } else if (x) {
    throw ValidationError("lower_estimate: x is only meaningful for the twisted kind");
  }

  ScanSetup s;
  s.d = kind == QualityKind::dual ? theta.n : theta.m;
  s.halved = kind != QualityKind::twisted;
  s.radix = 2 * Q + 1;
  s.total = 1;
  for (int c = 0; c < s.d; ++c) {
    if (s.total > 2000000000LL / s.radix + 1)
      throw BudgetError("lower_estimate: enumeration box exceeds the 2e9 budget");
    s.total *= s.radix;
  }
  if (s.total > 2000000000LL)
    throw BudgetError("lower_estimate: enumeration box exceeds the 2e9 budget");

  Real one = Real::of(1, P);
  for (int i = 0; i < theta.n; ++i) {
    Real e = kind == QualityKind::dual ? one / (k.k[static_cast<size_t>(i)] * k.m)
                                       : k.k[static_cast<size_t>(i)] * k.m;
    RealVec row;
    row.reserve(static_cast<size_t>(Q) + 1);
    row.push_back(Real::of(0, P));
    for (long long v = 1; v <= Q; ++v) row.push_back(weighted_power(Real::of(v, P), e));
    s.pw.push_back(std::move(row));
  }
  return s;
}

Real eval_candidate(QualityKind kind, const SystemMatrix& theta, const ScanSetup& s,
                    const std::optional<RealVec>& x, const IntVec& q) {
  Real best;
  if (kind == QualityKind::dual) {
    Real fa = s.pw[0][0];
    for (int i = 0; i < theta.n; ++i) {
      long long a = std::abs(q[static_cast<size_t>(i)]);
      if (a == 0) continue;
      const Real& term = s.pw[static_cast<size_t>(i)][static_cast<size_t>(a)];
      if (term > fa) fa = term;
    }
    Real fb;
    for (int j = 0; j < theta.m; ++j) {
      Real d = dist_nearest_int(theta_dual_apply(theta, j, q));
      if (j == 0 || d > fb) fb = d;
    }
    return fa * fb;
  }
  long long sn = sup_norm(q);
  for (int i = 0; i < theta.n; ++i) {
    Real v = theta_row_apply(theta, i, q);
    if (kind == QualityKind::twisted) v -= (*x)[static_cast<size_t>(i)];
    Real term = s.pw[static_cast<size_t>(i)][static_cast<size_t>(sn)] * dist_nearest_int(v);
    if (i == 0 || term > best) best = term;
  }
  return best;
}

// Decodes most-significant-first, so ascending flat index is ascending
// lexicographic order of the decoded vector.
void decode(long long idx, int d, long long radix, long long Q, IntVec& q) {
  for (int c = d - 1; c >= 0; --c) {
    q[static_cast<size_t>(c)] = idx % radix - Q;
    idx /= radix;
  }
}

bool admissible(const IntVec& q, bool halved) {
  for (long long v : q) {
    if (v > 0) return true;
    if (v < 0) return !halved;
  }
  return false;  // zero vector
}

}  // namespace

BadnessCertificate lower_estimate(QualityKind kind, const SystemMatrix& theta,
                                  const Weights& k, const std::optional<RealVec>& x,
                                  long long Q, const Precision& P) {
  ScanSetup s = prepare(kind, theta, k, x, Q, P);
  Best global;
#pragma omp parallel
  {
    Best local;
    IntVec q(static_cast<size_t>(s.d));
#pragma omp for schedule(static)
    for (long long idx = 0; idx < s.total; ++idx) {
      decode(idx, s.d, s.radix, Q, q);
      if (!admissible(q, s.halved)) continue;
      Real v = eval_candidate(kind, theta, s, x, q);
      if (better(v, q, local)) {
        local.val = std::move(v);
        local.q = q;
        local.has = true;
      }
    }
#pragma omp critical
    {
      if (local.has && better(local.val, local.q, global)) {
        global.val = std::move(local.val);
        global.q = std::move(local.q);
        global.has = true;
      }
    }
  }
  return BadnessCertificate{kind, global.val, Q, global.q, P.digits};
}

BadnessCertificate lower_estimate_serial(QualityKind kind, const SystemMatrix& theta,
                                         const Weights& k,
                                         const std::optional<RealVec>& x, long long Q,
                                         const Precision& P) {
  ScanSetup s = prepare(kind, theta, k, x, Q, P);
  Best best;
  IntVec q(static_cast<size_t>(s.d), -Q);
  // Plain odometer over the box, visiting vectors in lexicographic order.
  while (true) {
    if (admissible(q, s.halved)) {
      Real v = eval_candidate(kind, theta, s, x, q);
      if (better(v, q, best)) {
        best.val = std::move(v);
        best.q = q;
        best.has = true;
      }
    }
    int c = s.d - 1;
    while (c >= 0 && q[static_cast<size_t>(c)] == Q) q[static_cast<size_t>(c--)] = -Q;
    if (c < 0) break;
    ++q[static_cast<size_t>(c)];
  }
  return BadnessCertificate{kind, best.val, Q, best.q, P.digits};
}

}  // namespace wba
