#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gdi/joint.hpp"
#include "gdi/measures.hpp"

namespace gdi {

// Rollouts use std::mt19937_64 (its output sequence is fixed by the standard);
// every uniform double is built from the top 53 bits so results are portable.
inline constexpr const char* kSampleGenerator = "mt19937_64";

struct SampleSet {
    Interface iface;
    int horizon = 0;
    std::vector<Trajectory> trajectories;
    // Empty means every trajectory has weight 1.
    std::vector<double> weights;
    std::uint64_t seed = 0;
    std::string generator = kSampleGenerator;

    std::size_t size() const { return trajectories.size(); }
};

SampleSet sample_trajectories(const Agent& agent, const Environment& env, int horizon, std::size_t count,
                              std::uint64_t seed);

// Every trajectory of `dist` with its exact probability as weight.
SampleSet weighted_support(const JointDist& dist);

// Empirical (weighted) joint of the samples.
JointDist empirical_joint(const SampleSet& samples);

// Plug-in estimate: exact gdi applied to the empirical joint. No bias correction.
double estimate_gdi(const SampleSet& samples, const MeasureQuery& query);

inline constexpr int kMinReplicates = 100;

struct BootstrapConfig {
    int replicates = 1000;
    double level = 0.95;
};

struct EstimateReport {
    double estimate_bits = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_samples = 0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

// Percentile bootstrap: resample trajectories with replacement, re-estimate,
// and take the (1-level)/2 and (1+level)/2 quantiles of the replicates
// (linear interpolation between order statistics). Replicate r draws from its
// own SplitMix64 stream keyed by (samples.seed, r). Unweighted samples only.
EstimateReport bootstrap_ci(const SampleSet& samples, const MeasureQuery& query, const BootstrapConfig& config = {});

void write_estimate_csv_header(std::ostream& out);
void write_estimate_csv_row(std::ostream& out, const EstimateReport& report);

}  // namespace gdi
