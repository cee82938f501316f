#pragma once
// Basic grid types and a portable seeded RNG shared by all modules.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>

namespace alpha {

// Grid coordinate, x = column, y = row, origin at the top-left corner.
struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord& a, const Coord& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Coord& a, const Coord& b) { return !(a == b); }
    // Lexicographic (y, x): matches the deterministic orderings used throughout.
    friend bool operator<(const Coord& a, const Coord& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

struct CoordHash {
    size_t operator()(const Coord& c) const {
        return std::hash<int64_t>{}((int64_t(c.y) << 32) ^ uint32_t(c.x));
    }
};

// Seeded RNG with hand-rolled range helpers. std::mt19937_64 output is
// specified by the standard, but the <random> distributions are not, so
// ranges are derived here to keep generated artifacts identical across
// platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling, unbiased.
    int uniform_int(int lo, int hi) {
        if (lo >= hi) return lo;
        const uint64_t span = uint64_t(hi) - uint64_t(lo) + 1;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return lo + int(v % span);
    }

    // Uniform double in [0, 1).
    double uniform_real() { return double(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace alpha
