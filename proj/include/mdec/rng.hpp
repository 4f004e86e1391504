#pragma once

#include <cstdint>
#include <random>

namespace mdec {

// Seeded random stream. The engine is std::mt19937_64 (output fully specified by
// the standard); the conversions to real and integer draws are implemented here
// rather than with <random> distributions, whose outputs are implementation-defined.
// Streams are therefore bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();

    // Uniform integer on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    // Uniform integer on [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Standard normal (Box-Muller, one value per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

// Child seed for stream `index` of `master`. Counter-based (splitmix64 finalizer),
// so every child can be derived independently of the others.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace mdec
