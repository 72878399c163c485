// Paired serial/parallel timings for the four enumeration kernels. The
// parallel variants split their candidate boxes across OpenMP threads, so
// the interesting number is the ratio between each pair at a given size.

#include <benchmark/benchmark.h>

#include <optional>

#include "wba/game.hpp"
#include "wba/transference.hpp"

using namespace wba;

namespace {

const Precision& P() {
  static Precision p(50);
  return p;
}

const SystemMatrix& phi_matrix() {
  static SystemMatrix m = make_system_matrix({{"(1+1*sqrt(5))/2"}}, P());
  return m;
}

const Weights& unit_weight() {
  static Weights k = make_weights({"1"}, 1, P());
  return k;
}

const SystemMatrix& root23_matrix() {
  static SystemMatrix m =
      make_system_matrix({{"(0+1*sqrt(2))/1"}, {"(0+1*sqrt(3))/1"}}, P());
  return m;
}

const Weights& thirds_weights() {
  static Weights k =
      make_weights({"(2+0*sqrt(0))/3", "(1+0*sqrt(0))/3"}, 1, P());
  return k;
}

const Weights& parabola_weights() {
  static Weights k = make_weights({"0.9", "0.1"}, 1, P());
  return k;
}

const CurveSpec& parabola() {
  static CurveSpec c =
      builtin_curve("parabola", Real::of(0, P()), Real::of(1, P()), P());
  return c;
}

const GameConfig& parabola_config() {
  static GameConfig gc = [] {
    BadnessCertificate cert =
        lower_estimate(QualityKind::homogeneous, root23_matrix(),
                       parabola_weights(), std::nullopt, 200, P());
    Interval B0{Real::from_decimal("0.3", P()), Real::from_decimal("0.33", P())};
    return make_game_config(parabola(), parabola_weights(), B0,
                            Real::from_decimal("0.5", P()), cert.gamma, 200,
                            std::nullopt, P());
  }();
  return gc;
}

// Stage-3 interval of the center-play run; scanning it is a full pass over
// the (R^2, R^3] annulus with no early exit.
Interval stage3_interval() {
  return Interval{Real::from_decimal("3.02138671875e-1", P()),
                  Real::from_decimal("3.02197265625e-1", P())};
}

const LambdaSequence& phi_ladder() {
  static LambdaSequence lam = [] {
    AffineSubspace full{make_subspace(1, {{Real::of(1, P())}}, P()), {}};
    Real gamma = (Real::of(3, P()) - sqrt(Real::of(5, P()))) / 2;
    return build_lambda(phi_matrix(), unit_weight(), full, gamma, 3, P());
  }();
  return lam;
}

void BM_lower_estimate(benchmark::State& state) {
  for (auto _ : state) {
    BadnessCertificate cert =
        lower_estimate(QualityKind::homogeneous, phi_matrix(), unit_weight(),
                       std::nullopt, state.range(0), P());
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_lower_estimate)->Arg(4000)->Arg(40000);

void BM_lower_estimate_serial(benchmark::State& state) {
  for (auto _ : state) {
    BadnessCertificate cert =
        lower_estimate_serial(QualityKind::homogeneous, phi_matrix(),
                              unit_weight(), std::nullopt, state.range(0), P());
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_lower_estimate_serial)->Arg(4000)->Arg(40000);

void BM_enumerate_pi(benchmark::State& state) {
  RealVec betas{Real::of(1, P()), Real::of(1, P()), Real::of(1, P())};
  ParallelepipedSpec spec =
      make_parallelepiped(Real::of(state.range(0), P()), betas, root23_matrix(),
                          thirds_weights(), P());
  for (auto _ : state) {
    std::vector<LatticePoint> pts = enumerate_pi(spec, P());
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(BM_enumerate_pi)->Arg(10000)->Arg(1000000);

void BM_enumerate_pi_serial(benchmark::State& state) {
  RealVec betas{Real::of(1, P()), Real::of(1, P()), Real::of(1, P())};
  ParallelepipedSpec spec =
      make_parallelepiped(Real::of(state.range(0), P()), betas, root23_matrix(),
                          thirds_weights(), P());
  for (auto _ : state) {
    std::vector<LatticePoint> pts = enumerate_pi_serial(spec, P());
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(BM_enumerate_pi_serial)->Arg(10000)->Arg(1000000);

void BM_find_dangerous(benchmark::State& state) {
  Interval B = stage3_interval();
  for (auto _ : state) {
    long long budget = 100000000;
    std::optional<DangerHit> hit =
        find_dangerous(3, B, parabola(), root23_matrix(), parabola_weights(),
                       parabola_config(), P(), budget);
    benchmark::DoNotOptimize(hit);
  }
}
BENCHMARK(BM_find_dangerous);

void BM_find_dangerous_serial(benchmark::State& state) {
  Interval B = stage3_interval();
  for (auto _ : state) {
    long long budget = 100000000;
    std::optional<DangerHit> hit = find_dangerous_serial(
        3, B, parabola(), root23_matrix(), parabola_weights(),
        parabola_config(), P(), budget);
    benchmark::DoNotOptimize(hit);
  }
}
BENCHMARK(BM_find_dangerous_serial);

void BM_verify_fact_a(benchmark::State& state) {
  RealVec x{Real::of(1, P()) / 3};
  for (auto _ : state) {
    TransferenceReport rep =
        verify_fact_a(x, phi_ladder(), phi_matrix(), unit_weight(), 86, P());
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_verify_fact_a);

void BM_verify_fact_a_serial(benchmark::State& state) {
  RealVec x{Real::of(1, P()) / 3};
  for (auto _ : state) {
    TransferenceReport rep = verify_fact_a_serial(x, phi_ladder(), phi_matrix(),
                                                  unit_weight(), 86, P());
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_verify_fact_a_serial);

}  // namespace

BENCHMARK_MAIN();
