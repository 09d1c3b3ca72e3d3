#pragma once

#include <cstdint>

namespace dhmono {

// Deterministic splitmix64 stream; identical output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

private:
    std::uint64_t state_;
};

// Stable derived stream, so independent subtasks get decoupled seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    Rng r(seed ^ (0x5851f42d4c957f2dull * (tag + 1)));
    r.next();
    return r.next();
}

} // namespace dhmono
