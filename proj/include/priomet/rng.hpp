#ifndef PRIOMET_RNG_HPP
#define PRIOMET_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "priomet/math.hpp"

namespace priomet {

/*
 * Seeded random stream. Every randomized construction takes one of these, so a build is a pure
 * function of (input, seed). The distributions are implemented here rather than taken from
 * <random> so the streams are identical across standard library implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t k = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[k]);
        }
    }

    // Independent stream for sub-build `stream` of the build seeded with `seed`.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace priomet

#endif
