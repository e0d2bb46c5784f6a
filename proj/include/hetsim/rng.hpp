#pragma once

#include <array>
#include <cstdint>

namespace hetsim {

/// Counter-based random generator: Philox4x64-10 (Salmon et al., SC'11).
///
/// The 128-bit key is (seed, stream); the 256-bit counter starts at zero and
/// is bumped before each block, which makes the raw output sequence for a
/// given key identical to numpy.random.Philox with counter=0 and the same
/// key. Distinct (seed, stream) pairs give statistically independent
/// sequences, so one seed provides 2^64 parallel substreams.
///
/// All distribution draws consume the uniform stream in a fixed documented
/// order; for one (seed, stream) the produced values are bit-identical
/// across platforms with the same libm.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform on the open interval (0, 1); safe under log().
  double uniform_open();
  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

  bool bernoulli(double p);

  /// Unit-mean exponential (Rayleigh fading power).
  double exponential();

  /// Standard normal; Box-Muller, two uniforms per pair.
  double normal();
  void normal_pair(double& z0, double& z1);

  /// Poisson count with the given mean. Knuth's product method below
  /// mean 10, Hormann's transformed rejection (PTRD) above.
  std::uint64_t poisson(double mean);

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 4> block_;
  unsigned index_;
};

/// Fixed derivation of a substream id from (experiment tag, purpose,
/// replication index). Purposes separate the independent random inputs of
/// one replication (one per tier, MAC marks, fading, ...). Replication
/// indices above 2^48 - 1 are rejected.
std::uint64_t substream(std::uint32_t experiment, std::uint32_t purpose,
                        std::uint64_t replication);

}  // namespace hetsim
