#pragma once

#include <cstdint>
#include <random>

#include "acirc/rational.hpp"

namespace acirc {

// Deterministic generator threaded through everything that samples. A fixed
// seed reproduces an entire run byte for byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t entropy_seed() {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1u; }

    // Non-negative integer of bit length at most `bits`.
    Integer bits(unsigned bits) {
        Integer v = 0;
        unsigned got = 0;
        while (got < bits) {
            unsigned take = bits - got >= 64 ? 64 : bits - got;
            std::uint64_t chunk = next();
            if (take < 64) chunk &= (1ULL << take) - 1;
            v <<= take;
            v += Integer(static_cast<unsigned long>(chunk));
            got += take;
        }
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace acirc
