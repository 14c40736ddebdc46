#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skewmet {

// Thrown when a configured search/enumeration budget is exhausted.
// The CLI maps this to its own exit code, distinct from bad input.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// SplitMix64 (Steele, Lea, Flood 2014). Fixed algorithm so that seeded runs
// are reproducible across platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

private:
    uint64_t state_;
};

// Stable derivation of per-task seeds from a campaign seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    SplitMix64 g(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
    return g.next();
}

}  // namespace skewmet
