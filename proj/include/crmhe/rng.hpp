#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace crmhe {

// SplitMix64 finalizer; used to turn (seed, stream path) into an engine seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream identified by a master seed and a path of
/// stream indices (e.g. {cell, replication}). Two streams with the same seed
/// and path produce identical sequences on every platform: the engine is
/// std::mt19937_64 and the conversions to doubles and indices are done here
/// instead of through the implementation-defined standard distributions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed,
                     std::initializer_list<std::uint64_t> path = {})
      : engine_(derive(master_seed, path)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1), 53 bits.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  static std::uint64_t derive(std::uint64_t master_seed,
                              std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(master_seed);
    for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    return s;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crmhe
