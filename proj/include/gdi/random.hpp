#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gdi/interaction.hpp"

namespace gdi {

// SplitMix64 (Steele, Lea and Flood). Used wherever results must reproduce
// bit-for-bit across platforms: standard library distributions are not
// portable, so uniforms are built directly from the generator's top 53 bits.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1].
    double uniform_open_closed() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// One SplitMix64 finalization step; a cheap stateless mixer for deriving seeds.
std::uint64_t mix64(std::uint64_t x);

// Folds `values` into `seed` with mix64; order-sensitive.
std::uint64_t hash_sequence(std::uint64_t seed, std::span<const int> values);

// Symmetric Dirichlet(1) draw of dimension `size` (normalized Exp(1) variates).
std::vector<double> sample_dirichlet(SplitMix64& rng, std::size_t size);

// Random policies whose conditional at each history is an independent
// Dirichlet(1) draw keyed by (seed, history), so they are pure functions.
Agent random_agent(Interface iface, std::uint64_t seed);
Environment random_env(Interface iface, std::uint64_t seed);

// Row-stochastic matrix: channel[y][z] = P(Z = z | Y = y), rows Dirichlet(1).
using Channel = std::vector<std::vector<double>>;
Channel random_channel(int inputs, int outputs, std::uint64_t seed);

}  // namespace gdi
