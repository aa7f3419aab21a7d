#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace sscoord {

// Counter-based deterministic generator. Every draw is a pure function of
// (seed, stream, counter), so derived streams can be handed to independent
// units of work and the aggregate result does not depend on scheduling.
namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Stateless mix of up to three 64-bit words into one uniform word.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = detail::splitmix64(a);
  h = detail::splitmix64(h ^ (b + 0x9e3779b97f4a7c15ULL));
  h = detail::splitmix64(h ^ (c + 0xd1b54a32d192ed03ULL));
  return h;
}

// Maps a uniform 64-bit word onto [0, n) with negligible (< n/2^64) bias.
inline std::uint64_t bounded(std::uint64_t word, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(word) * static_cast<unsigned __int128>(n)) >> 64);
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {}

  std::uint64_t next_u64() { return mix64(seed_, stream_, counter_++); }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t next_below(std::uint64_t n) { return bounded(next_u64(), n); }

  // Samples an index from (possibly unnormalized) nonnegative weights.
  int sample_weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_unit() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  // Dirichlet(1,...,1) draw: a uniformly random point on the simplex.
  std::vector<double> dirichlet(int k) {
    std::vector<double> v(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& x : v) {
      double u = next_unit();
      if (u < 1e-300) u = 1e-300;
      x = -std::log(u);
      total += x;
    }
    for (auto& x : v) x /= total;
    return v;
  }

  RngStream derive(std::uint64_t tag) const { return RngStream(mix64(seed_, stream_, tag), tag); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_;
};

}  // namespace sscoord
