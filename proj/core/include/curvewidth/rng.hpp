#pragma once

#include <cmath>
#include <cstdint>

#include "curvewidth/vec.hpp"

namespace curvewidth {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}
}  // namespace detail

// Counter-based generator (splitmix-style output function over a keyed
// counter). Output i of a stream depends only on (seed, stream path, i), so
// runs are bit-reproducible across platforms and worker counts as long as
// each worker owns its own substream.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : key_(detail::mix64(seed ^ 0x7c15d3f0a9b4e681ULL)) {}

    // Derived stream: deterministic function of the parent key and the child
    // index, independent of how much the parent has been consumed.
    CounterRng substream(std::uint64_t child) const {
        CounterRng r(0);
        r.key_ = detail::mix64(key_ ^ detail::mix64(0x9e3779b97f4a7c15ULL * (child + 1)));
        r.ctr_ = 0;
        return r;
    }

    std::uint64_t next_u64() { return detail::mix64(key_ + (ctr_++) * 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller; one value per call, pair cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Uniform direction on the unit sphere of R^k.
    Vec unit_vector(int k) {
        while (true) {
            Vec v(k);
            for (int i = 0; i < k; ++i) v[i] = normal();
            double nrm = norm(v);
            if (nrm > 1e-8) return v * (1.0 / nrm);
        }
    }

    std::uint64_t state_digest() const { return detail::mix64(key_ ^ ctr_); }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t ctr_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace curvewidth
