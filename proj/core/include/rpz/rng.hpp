#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace rpz {

// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator with labeled substreams.
//
// A stream is identified by a key derived from (seed, label, label, ...);
// output i of a stream is mix64(key ^ i * phi). Substreams for distinct
// labels can be drawn in any order, on any thread, and always produce the
// same values, which is what makes batch sampling order-independent.
// Gaussians come from Box-Muller on explicit uniforms so the byte stream
// does not depend on the standard library's distribution internals.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed)
      : key_(mix64(seed ^ 0x243f6a8885a308d3ull)) {}

  [[nodiscard]] StreamRng substream(std::uint64_t label) const {
    StreamRng r(*this);
    r.key_ = mix64(r.key_ ^ mix64(label ^ 0x452821e638d01377ull));
    r.counter_ = 0;
    r.have_spare_ = false;
    return r;
  }

  std::uint64_t next_u64() {
    return mix64(key_ ^ (0x9e3779b97f4a7c15ull * ++counter_));
  }

  // Uniform in (0, 1]; never returns 0 so log() is safe.
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard real normal, variance 1.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  // Standard complex normal with E|z|^2 = 1 (density e^{-|z|^2}/pi).
  std::complex<double> next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rpz
