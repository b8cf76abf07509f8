#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace slrep {

// Self-contained counter-free generator (splitmix64 core) so that streams are
// bit-reproducible across standard libraries and platforms. Seed derivation
// for sub-streams goes through derive(), never through raw arithmetic at call
// sites.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in (0,1]; never returns 0 so that log() below is safe.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one value per call, cached partner.
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Stated sub-stream rule: mix the label into the seed with one splitmix
    // round. Used by the harness to give every suite/trial its own stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (label + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace slrep
