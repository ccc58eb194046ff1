#pragma once

// Seeded random streams. Every Monte Carlo replication draws from its own
// stream (seed, stream index), so results do not depend on how replications
// are scheduled across threads. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the variate transforms below are our
// own so that draws are identical across standard libraries.

#include <cstdint>
#include <random>

namespace stein {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);
  /// Beta(a, b) from two gamma variates.
  double beta(double a, double b);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace stein
