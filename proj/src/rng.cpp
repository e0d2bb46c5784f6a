#include "hetsim/rng.hpp"

#include <cmath>
#include <limits>

#include "hetsim/errors.hpp"

namespace hetsim {

namespace {

// Philox4x64 round constants (multipliers and Weyl key increments).
constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

inline void philox_round(std::array<std::uint64_t, 4>& c, const std::array<std::uint64_t, 2>& k) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::array<std::uint64_t, 4> philox10(std::array<std::uint64_t, 4> counter,
                                             std::array<std::uint64_t, 2> key) {
  philox_round(counter, key);
  for (int round = 1; round < 10; ++round) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    philox_round(counter, key);
  }
  return counter;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_{seed, stream}, counter_{0, 0, 0, 0}, block_{}, index_(4) {}

void Rng::refill() {
  // Bump-then-generate, matching numpy.random.Philox block order.
  if (++counter_[0] == 0)
    if (++counter_[1] == 0)
      if (++counter_[2] == 0) ++counter_[3];
  block_ = philox10(counter_, key_);
  index_ = 0;
}

std::uint64_t Rng::next_u64() {
  if (index_ >= 4) refill();
  return block_[index_++];
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw ParamError("uniform_below requires n >= 1");
  // Multiply-shift map of the full 64-bit range onto [0, n); the bias is
  // below n / 2^64 and irrelevant at the scales used here.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

bool Rng::bernoulli(double p) { return uniform() < p; }

double Rng::exponential() { return -std::log(uniform_open()); }

void Rng::normal_pair(double& z0, double& z1) {
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 6.283185307179586477 * uniform();
  z0 = radius * std::cos(angle);
  z1 = radius * std::sin(angle);
}

double Rng::normal() {
  double z0, z1;
  normal_pair(z0, z1);
  return z0;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw ParamError("poisson mean must be >= 0");
  if (mean == 0.0) return 0;

  if (mean < 10.0) {
    // Knuth: count uniforms until their product drops below exp(-mean).
    const double threshold = std::exp(-mean);
    std::uint64_t count = 0;
    double product = uniform_open();
    while (product > threshold) {
      ++count;
      product *= uniform_open();
    }
    return count;
  }

  // Hormann's transformed rejection with squeeze (PTRD). Exact for
  // mean >= 10; expected uniforms per draw is about 2.2.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);

  while (true) {
    double u = uniform() - 0.5;
    const double v = uniform_open();
    const double u_abs = 0.5 - std::fabs(u);
    const double k_real = std::floor((2.0 * a / u_abs + b) * u + mean + 0.43);
    if (k_real < 0.0) continue;

    if (u_abs >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k_real);
    if (u_abs < 0.013 && v > u_abs) continue;

    const double k = k_real;
    const double lhs = std::log(v * inv_alpha / (a / (u_abs * u_abs) + b));
    const double rhs = -mean + k * log_mean - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k_real);
  }
}

std::uint64_t substream(std::uint32_t experiment, std::uint32_t purpose,
                        std::uint64_t replication) {
  if (experiment > 0xFF) throw ParamError("experiment tag must fit 8 bits");
  if (purpose > 0xFF) throw ParamError("stream purpose must fit 8 bits");
  if (replication >= (1ull << 48)) throw ParamError("replication index must be below 2^48");
  return (static_cast<std::uint64_t>(experiment) << 56) |
         (static_cast<std::uint64_t>(purpose) << 48) | replication;
}

}  // namespace hetsim
