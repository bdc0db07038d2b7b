#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lopt {

/// (master seed, trial) pair identifying one deterministic random stream.
struct RandomSeed {
    std::uint64_t master = 0;
    std::uint64_t trial = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Per-trial stream seed: splitmix-style mix so sector-parallel scans
/// stay reproducible when ranges change.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t trial) {
    std::uint64_t s = detail::splitmix64(master);
    s = detail::splitmix64(s ^ (a * 0xd6e8feb86659fd93ULL));
    s = detail::splitmix64(s ^ (b * 0xa5a5a5a5a5a5a5a5ULL));
    s = detail::splitmix64(s ^ trial);
    return s;
}

inline std::uint64_t derive_seed(const RandomSeed& seed) {
    return derive_seed(seed.master, 0, 0, seed.trial);
}

/// Counter-free xoshiro-style generator built on splitmix64 state updates.
/// std::normal_distribution is implementation-defined, so the Gaussian is
/// built by hand (Box-Muller) to keep streams identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x853c49e6748fea9bULL) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Uniform in (0, 1]; never returns 0 so log() below is safe.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    /// Standard normal via Box-Muller.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = next_unit();
        const double v = next_unit();
        const double rad = std::sqrt(-2.0 * std::log(u));
        const double ang = 2.0 * std::numbers::pi * v;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lopt
