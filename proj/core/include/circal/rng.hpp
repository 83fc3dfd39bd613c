#pragma once

#include <cstdint>
#include <random>

namespace circal {

// splitmix64 finalizer; used to decorrelate seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-replication seed: hash of (seed, rep_index) so replications are
// order-independent and can run concurrently.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep_index) {
    return mix64(mix64(seed) ^ mix64(rep_index + 0x5851f42d4c957f2dULL));
}

// mt19937_64 with explicit bit-to-double conversion. The engine's output is
// fully specified by the standard, and converting (x >> 11) * 2^-53 here
// keeps draws identical across standard libraries (std distributions are
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform draw in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    int bernoulli(double p) { return uniform() < p ? 1 : 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace circal
