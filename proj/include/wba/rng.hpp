#pragma once

#include <cstdint>

#include "wba/real.hpp"

namespace wba {

// Deterministic 64-bit generator (splitmix64). Same seed gives the same
// stream on every platform, which keeps randomized fixtures reproducible.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); the modulo bias is below n / 2^64, irrelevant at the
  // fixture sizes used here.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform in [0, 1) with 128 random bits. Exact at any precision >= 128.
  Real unit_real(mpfr_prec_t bits) {
    Real hi(bits);
    mpfr_set_uj(hi.raw(), next(), MPFR_RNDN);
    mpfr_mul_2si(hi.raw(), hi.raw(), -64, MPFR_RNDN);
    Real lo(bits);
    mpfr_set_uj(lo.raw(), next(), MPFR_RNDN);
    mpfr_mul_2si(lo.raw(), lo.raw(), -128, MPFR_RNDN);
    mpfr_add(hi.raw(), hi.raw(), lo.raw(), MPFR_RNDN);
    return hi;
  }

  Real unit_real(const Precision& P) { return unit_real(P.bits()); }
};

}  // namespace wba
