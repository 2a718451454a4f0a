#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>

namespace ucmec::rng {

// Counter-based sub-seeding: every consumer derives its own stream from
// (master seed, slot, purpose, ...), so adding slots or reordering consumers
// never perturbs the draws of other streams.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t p : path) h = splitmix64(h ^ (p + 0x9e3779b97f4a7c15ULL));
    return h;
}

// Stream purposes used by the harness.
enum Purpose : std::uint64_t {
    kTopology = 1,
    kChannel = 2,
    kServiceRequest = 3,
    kTaskData = 4,
    kTaskWork = 5,
    kGibbs = 6,
    kInstance = 7,
};

// xoshiro-free minimal generator: splitmix64 iterated. Deterministic across
// platforms, unlike std distributions.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(splitmix64(seed ^ 0x2545f4914f6cdd1dULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(u01() * static_cast<double>(n)) % n; }

    // standard normal via Box-Muller, one spare cached
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = u01(), u2 = u01();
        while (u1 <= 1e-300) u1 = u01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ucmec::rng
