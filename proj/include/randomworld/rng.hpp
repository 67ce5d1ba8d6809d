#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace randomworld {

// splitmix64 step, used to derive stream seeds from a master seed.
inline uint64_t mix_seed(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    return mix_seed(master ^ mix_seed(stream));
}

// Deterministic RNG handle. All sampling in the pipeline goes through this
// wrapper so that draws are reproducible bit-for-bit for a given seed,
// independent of standard-library distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
    uint64_t uniform_u64(uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_u64: n == 0");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        return lo + static_cast<int64_t>(uniform_u64(static_cast<uint64_t>(hi - lo) + 1));
    }

    // Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform_real(0.0, 1.0) < p;
    }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        if (xs.empty()) throw std::invalid_argument("pick: empty vector");
        return xs[uniform_u64(xs.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (size_t i = xs.size(); i > 1; --i) {
            size_t j = uniform_u64(i);
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace randomworld
