#pragma once

#include <cstdint>
#include <random>

namespace cnsb {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-run seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable seed for one (query, run, stream) cell. Worker count and execution
// order never enter the derivation.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t query,
                                 std::uint64_t run, std::uint64_t stream) {
  std::uint64_t s = mix64(master_seed);
  s = mix64(s ^ mix64(query + 0x1000));
  s = mix64(s ^ mix64(run + 0x2000));
  s = mix64(s ^ mix64(stream + 0x3000));
  return s;
}

inline bool bernoulli(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace cnsb
