#pragma once

// Counter-based random number generation (Philox4x32-10).
//
// Every Gaussian increment of a simulation is a pure function of
// (seed, step index, component index). This gives bitwise replayability of
// any trajectory from its seed alone and lets Monte Carlo replications use
// seed offsets without coordinating stream state between workers.

#include <cmath>
#include <cstdint>

namespace lanlab {

namespace detail {

struct Philox4x32State {
  uint32_t c0, c1, c2, c3;
};

// One keyed block of Philox4x32 with 10 rounds (the standard round count).
inline Philox4x32State philox4x32(uint64_t counter_lo, uint32_t counter_hi,
                                  uint64_t key) {
  constexpr uint32_t kMul0 = 0xD2511F53u;
  constexpr uint32_t kMul1 = 0xCD9E8D57u;
  constexpr uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr uint32_t kWeyl1 = 0xBB67AE85u;

  uint32_t c0 = static_cast<uint32_t>(counter_lo);
  uint32_t c1 = static_cast<uint32_t>(counter_lo >> 32);
  uint32_t c2 = counter_hi;
  uint32_t c3 = 0;
  uint32_t k0 = static_cast<uint32_t>(key);
  uint32_t k1 = static_cast<uint32_t>(key >> 32);

  for (int round = 0; round < 10; ++round) {
    const uint64_t p0 = static_cast<uint64_t>(kMul0) * c0;
    const uint64_t p1 = static_cast<uint64_t>(kMul1) * c2;
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
    const uint32_t lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
    const uint32_t lo1 = static_cast<uint32_t>(p1);
    const uint32_t n0 = hi1 ^ c1 ^ k0;
    const uint32_t n1 = lo1;
    const uint32_t n2 = hi0 ^ c3 ^ k1;
    const uint32_t n3 = lo0;
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return {c0, c1, c2, c3};
}

// Map a 64-bit word to the open interval (0,1); never returns 0 or 1, so it
// is safe inside log().
inline double to_unit_interval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace detail

/// Standard Gaussian variate addressed by (seed, step index, component).
/// Distinct triples give independent draws; identical triples give identical
/// bits on every platform with IEEE doubles.
inline double gaussian_at(uint64_t seed, uint64_t step, uint32_t component) {
  const detail::Philox4x32State s = detail::philox4x32(step, component, seed);
  const uint64_t a = (static_cast<uint64_t>(s.c0) << 32) | s.c1;
  const uint64_t b = (static_cast<uint64_t>(s.c2) << 32) | s.c3;
  const double u1 = detail::to_unit_interval(a);
  const double u2 = detail::to_unit_interval(b);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Uniform variate on (0,1) for the same addressing scheme (used by tests
/// and diagnostics; simulations only consume Gaussians).
inline double uniform_at(uint64_t seed, uint64_t step, uint32_t component) {
  const detail::Philox4x32State s = detail::philox4x32(step, component, seed);
  const uint64_t a = (static_cast<uint64_t>(s.c0) << 32) | s.c1;
  return detail::to_unit_interval(a);
}

}  // namespace lanlab
