#include "gdi/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "gdi/random.hpp"

namespace gdi {
namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int draw(const Distribution& d, double u) {
    double acc = 0.0;
    int last = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] <= 0.0) continue;
        last = static_cast<int>(k);
        acc += d[k];
        if (u < acc) return last;
    }
    return last;  // u landed in the rounding gap above the cumulative sum
}

// Policies are pure, so each history is evaluated once.
template <Role R>
class Memo {
public:
    explicit Memo(const Policy<R>& policy) : policy_(policy) {}

    const Distribution& operator()(const History& h, const std::vector<int>& key) {
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, policy_.checked(h)).first;
        return it->second;
    }

private:
    const Policy<R>& policy_;
    std::map<std::vector<int>, Distribution> cache_;
};

// Modulo bias is below n / 2^64, negligible for any realistic sample count.
std::uint64_t bounded(SplitMix64& rng, std::uint64_t n) { return rng() % n; }

double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

JointDist joint_from_counts(const Interface& iface, int horizon, std::vector<double> mass) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) throw ArgumentError("sample set has no mass");
    for (double& m : mass) m /= total;
    return JointDist(iface, horizon, std::move(mass));
}

// Same layout as JointDist::cell_of.
std::size_t cell_index(const SampleSet& samples, const Trajectory& t) {
    if (t.horizon() != samples.horizon || t.observations.size() != t.actions.size()) {
        throw ArgumentError("trajectory horizon does not match the sample set");
    }
    const int na = samples.iface.num_actions();
    const int no = samples.iface.num_observations();
    std::size_t cell = 0;
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        if (t.actions[i] < 0 || t.actions[i] >= na || t.observations[i] < 0 || t.observations[i] >= no) {
            throw IndexError("sampled symbol out of range");
        }
        cell = (cell * static_cast<std::size_t>(na) + static_cast<std::size_t>(t.actions[i])) *
                   static_cast<std::size_t>(no) + static_cast<std::size_t>(t.observations[i]);
    }
    return cell;
}

}  // namespace

SampleSet sample_trajectories(const Agent& agent, const Environment& env, int horizon, std::size_t count,
                              std::uint64_t seed) {
    if (count < 1) throw ArgumentError("sample count must be >= 1");
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    if (!(agent.interface() == env.interface())) throw ArgumentError("agent and environment do not share an interface");
    if (agent.ordering() != Ordering::ActionsFirst || env.ordering() != Ordering::ActionsFirst) {
        throw ArgumentError("sampling runs the actions-first process only");
    }

    SampleSet out{agent.interface(), horizon, {}, {}, seed, kSampleGenerator};
    out.trajectories.reserve(count);
    std::mt19937_64 rng(seed);
    Memo<Role::Action> agent_memo(agent);
    Memo<Role::Observation> env_memo(env);
    std::vector<int> key;
    for (std::size_t s = 0; s < count; ++s) {
        History h(agent.interface());
        Trajectory t;
        key.clear();
        for (int i = 0; i < horizon; ++i) {
            const int a = draw(agent_memo(h, key), unit(rng));
            h.push(a);
            key.push_back(a);
            const int o = draw(env_memo(h, key), unit(rng));
            h.push(o);
            key.push_back(o);
            t.actions.push_back(a);
            t.observations.push_back(o);
        }
        out.trajectories.push_back(std::move(t));
    }
    return out;
}

SampleSet weighted_support(const JointDist& dist) {
    SampleSet out{dist.interface(), dist.horizon(), {}, {}, 0, "exact"};
    const auto probs = dist.probabilities();
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
        if (probs[cell] == 0.0) continue;
        out.trajectories.push_back(dist.trajectory_of(cell));
        out.weights.push_back(probs[cell]);
    }
    return out;
}

JointDist empirical_joint(const SampleSet& samples) {
    if (samples.trajectories.empty()) throw ArgumentError("empty sample set");
    if (!samples.weights.empty() && samples.weights.size() != samples.size()) {
        throw ArgumentError("sample weights do not match the trajectory count");
    }
    const auto na = static_cast<std::size_t>(samples.iface.num_actions());
    const auto no = static_cast<std::size_t>(samples.iface.num_observations());
    std::size_t cells = 1;
    for (int i = 0; i < samples.horizon; ++i) cells *= na * no;
    std::vector<double> mass(cells, 0.0);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const double w = samples.weights.empty() ? 1.0 : samples.weights[s];
        if (!(w >= 0.0)) throw ArgumentError("negative sample weight");
        mass[cell_index(samples, samples.trajectories[s])] += w;
    }
    return joint_from_counts(samples.iface, samples.horizon, std::move(mass));
}

double estimate_gdi(const SampleSet& samples, const MeasureQuery& query) {
    return gdi(empirical_joint(samples), query).value;
}

EstimateReport bootstrap_ci(const SampleSet& samples, const MeasureQuery& query, const BootstrapConfig& config) {
    if (config.replicates < kMinReplicates) {
        throw ArgumentError("bootstrap needs at least " + std::to_string(kMinReplicates) + " replicates");
    }
    if (!(config.level > 0.0 && config.level < 1.0)) throw ArgumentError("bootstrap level must lie in (0,1)");
    if (!samples.weights.empty()) throw ArgumentError("bootstrap resamples unweighted sample sets only");

    const JointDist point = empirical_joint(samples);
    std::vector<std::size_t> cells;
    cells.reserve(samples.size());
    for (const auto& t : samples.trajectories) cells.push_back(cell_index(samples, t));

    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(config.replicates));
    std::vector<double> counts(point.num_cells());
    const std::uint64_t n = samples.size();
    for (int r = 0; r < config.replicates; ++r) {
        const int key[] = {r};
        SplitMix64 rng(hash_sequence(samples.seed, key));
        std::fill(counts.begin(), counts.end(), 0.0);
        for (std::uint64_t k = 0; k < n; ++k) counts[cells[bounded(rng, n)]] += 1.0;
        estimates.push_back(gdi(joint_from_counts(samples.iface, samples.horizon, counts), query).value);
    }
    std::sort(estimates.begin(), estimates.end());

    EstimateReport out;
    out.estimate_bits = gdi(point, query).value;
    out.ci_low = quantile(estimates, (1.0 - config.level) / 2.0);
    out.ci_high = quantile(estimates, (1.0 + config.level) / 2.0);
    out.n_samples = samples.size();
    out.replicates = config.replicates;
    out.seed = samples.seed;
    return out;
}

void write_estimate_csv_header(std::ostream& out) { out << "estimate_bits,ci_low,ci_high,n_samples,replicates,seed\n"; }

void write_estimate_csv_row(std::ostream& out, const EstimateReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu,%d,%llu\n", r.estimate_bits, r.ci_low, r.ci_high,
                  r.n_samples, r.replicates, static_cast<unsigned long long>(r.seed));
    out << buf;
}

}  // namespace gdi
