#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "smaa/types.hpp"

//! Deterministic random streams.
//!
//! Every stochastic stage draws from its own stream derived from
//! (master seed, run id, stage tag), so runs are reproducible bit for bit and
//! independent of scheduling.  Transforms are written out explicitly instead
//! of relying on std distribution objects, whose output is not pinned by the
//! standard.
namespace smaa {

//! SplitMix64 step; used both as a mixer and to key the engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : base_(seed), engine_(splitmix64(seed)) {}

  //! Independent stream for a named stage of a computation.
  RngStream substream(std::uint64_t tag) const { return RngStream(mix_seed(base_, tag)); }

  //! Uniform in [0, 1).
  double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

  //! Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Uniform integer in {lo, ..., hi}, exact (rejection sampling).
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  //! Standard normal via Marsaglia polar.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  //! Uniform point on the n-simplex (normalized exponential spacings).
  Vector simplex_point(Index n) {
    Vector w(n);
    for (Index i = 0; i < n; ++i) {
      double u;
      do {
        u = uniform();
      } while (u == 0.0);
      w[i] = -std::log(u);
    }
    w /= w.sum();
    return w;
  }

  //! Direction uniform on the unit sphere in R^n.
  Vector sphere_direction(Index n) {
    Vector d(n);
    double norm2 = 0.0;
    do {
      for (Index i = 0; i < n; ++i) d[i] = gaussian();
      norm2 = d.squaredNorm();
    } while (norm2 == 0.0);
    return d / std::sqrt(norm2);
  }

 private:
  std::uint64_t base_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace smaa
