#include "gdi/random.hpp"

#include <cmath>

namespace gdi {

std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x)(); }

std::uint64_t hash_sequence(std::uint64_t seed, std::span<const int> values) {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    for (int v : values) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)));
    return mix64(h ^ values.size());
}

std::vector<double> sample_dirichlet(SplitMix64& rng, std::size_t size) {
    std::vector<double> out(size);
    double total = 0.0;
    for (double& x : out) {
        x = -std::log(rng.uniform_open_closed());
        total += x;
    }
    // All draws can be 0 only if every uniform hit exactly 1.
    if (total <= 0.0) {
        for (double& x : out) x = 1.0 / static_cast<double>(size);
        return out;
    }
    for (double& x : out) x /= total;
    return out;
}

namespace {

std::uint64_t history_key(std::uint64_t seed, const History& h, std::uint64_t tag) {
    std::vector<int> symbols;
    symbols.reserve(h.size());
    const auto acts = h.actions();
    const auto obs = h.observations();
    for (std::size_t i = 0; i < acts.size(); ++i) {
        symbols.push_back(acts[i]);
        if (i < obs.size()) symbols.push_back(obs[i]);
    }
    return hash_sequence(seed ^ tag, symbols);
}

}  // namespace

Agent random_agent(Interface iface, std::uint64_t seed) {
    const auto na = static_cast<std::size_t>(iface.num_actions());
    return Agent(
        iface,
        [seed, na](const History& h) {
            SplitMix64 rng(history_key(seed, h, 0xa6e47ULL));
            return sample_dirichlet(rng, na);
        },
        "random-agent");
}

Environment random_env(Interface iface, std::uint64_t seed) {
    const auto no = static_cast<std::size_t>(iface.num_observations());
    return Environment(
        iface,
        [seed, no](const History& h) {
            SplitMix64 rng(history_key(seed, h, 0xe5f1ULL));
            return sample_dirichlet(rng, no);
        },
        "random-env");
}

Channel random_channel(int inputs, int outputs, std::uint64_t seed) {
    SplitMix64 rng(mix64(seed ^ 0xc4a77e1ULL));
    Channel c;
    for (int y = 0; y < inputs; ++y) c.push_back(sample_dirichlet(rng, static_cast<std::size_t>(outputs)));
    return c;
}

}  // namespace gdi
