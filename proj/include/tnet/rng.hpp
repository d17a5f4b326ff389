#pragma once

#include <cstdint>

namespace tnet {

// Counter-based generator: every draw is a pure function of (seed, key words).
// Streams are split by purpose so that, e.g., the arrival sequence of a run is
// unaffected by how many policy or link draws other code consumes (common
// random numbers across compared policies). The mixer is splitmix64, which is
// platform-independent and has no state to carry around.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    enum Stream : std::uint64_t {
        kArrival = 1,
        kPolicy = 2,
        kLink = 3,
        kRoute = 4,
    };

    std::uint64_t word(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        std::uint64_t z = mix(seed_ + kGolden);
        z = mix(z + a);
        z = mix(z + b);
        return mix(z + c);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return static_cast<double>(word(a, b, c) >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

} // namespace tnet
