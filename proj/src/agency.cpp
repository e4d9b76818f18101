#include "gdi/agency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gdi/zoo.hpp"

namespace gdi {

int AgencyQuery::horizon() const { return std::max(action_interval.hi(), observation_interval.hi()); }

MeasureQuery AgencyQuery::plasticity_query() const {
    return {Role::Observation, observation_interval, Role::Action, action_interval, plasticity_arrow};
}

MeasureQuery AgencyQuery::empowerment_query() const {
    return {Role::Action, action_interval, Role::Observation, observation_interval, Arrow::Forward};
}

double plasticity(const JointDist& dist, const AgencyQuery& query) {
    return gdi(dist, query.plasticity_query()).value;
}

double empowerment(const JointDist& dist, const AgencyQuery& query) {
    return gdi(dist, query.empowerment_query()).value;
}

Extremum plasticity(const Agent& agent, std::span<const Environment> envs, const AgencyQuery& query,
                    const EnumerationConfig& config) {
    if (envs.empty()) throw ArgumentError("plasticity needs a nonempty environment set");
    Extremum best{-1.0, 0};
    for (std::size_t k = 0; k < envs.size(); ++k) {
        const double v = plasticity(enumerate_joint(agent, envs[k], query.horizon(), config), query);
        if (v > best.bits) best = {v, k};
    }
    return best;
}

Extremum empowerment(std::span<const Agent> agents, const Environment& env, const AgencyQuery& query,
                     const EnumerationConfig& config) {
    if (agents.empty()) throw ArgumentError("empowerment needs a nonempty agent set");
    Extremum best{-1.0, 0};
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const double v = empowerment(enumerate_joint(agents[k], env, query.horizon(), config), query);
        if (v > best.bits) best = {v, k};
    }
    return best;
}

std::optional<int> positive_plasticity_witness(const JointDist& dist, const AgencyQuery& query) {
    const auto& t = dist.table();
    const Interval obs = query.observation_interval;
    const Interval act = query.action_interval;
    sequences::validate_interval(t, obs);
    sequences::validate_interval(t, act);
    const int os = JointDist::sequence_of(Role::Observation);
    const int as = JointDist::sequence_of(Role::Action);
    const int lag = query.plasticity_arrow == Arrow::Forward ? 0 : 1;

    std::optional<int> witness;
    for (int i = std::max(obs.lo(), act.lo()); i <= act.hi() && !witness; ++i) {
        const VariableSet ai = t.block(as, i, i);
        const VariableSet base = t.block(os, 1, obs.lo() - 1) | t.block(as, 1, i - 1);
        const VariableSet more = base | t.block(os, obs.lo(), std::min(obs.hi(), i - lag));
        const double gap = (t.entropy(ai | base) - t.entropy(base)) - (t.entropy(ai | more) - t.entropy(more));
        if (gap > kZeroGap) witness = i;
    }

    const double value = plasticity(dist, query);
    if (witness.has_value() != (value > kZeroGap)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "positivity witness (%s) disagrees with plasticity %.17g",
                      witness ? "present" : "absent", value);
        throw NumericalIntegrityError(buf);
    }
    return witness;
}

std::optional<int> positive_plasticity_witness(const Agent& agent, const Environment& env,
                                               const AgencyQuery& query) {
    return positive_plasticity_witness(enumerate_joint(agent, env, query.horizon()), query);
}

double tension_bound(const Interface& iface, const AgencyQuery& query) {
    return std::min(query.observation_interval.length() * std::log2(iface.num_observations()),
                    query.action_interval.length() * std::log2(iface.num_actions()));
}

TensionReport check_tension(const JointDist& dist, const AgencyQuery& query) {
    AgencyQuery paired = query;
    paired.plasticity_arrow = Arrow::Delayed;
    const auto& t = dist.table();
    const int as = JointDist::sequence_of(Role::Action);
    const int os = JointDist::sequence_of(Role::Observation);
    const Interval act = query.action_interval;
    const Interval obs = query.observation_interval;

    TensionReport r{};
    r.plasticity_bits = plasticity(dist, paired);
    r.empowerment_bits = empowerment(dist, paired);
    r.bound_bits = tension_bound(dist.interface(), query);
    r.slack_bits = r.bound_bits - r.plasticity_bits - r.empowerment_bits;
    r.conserved_bits = sequences::cmi(t, t.block(as, act.lo(), act.hi()), t.block(os, obs.lo(), obs.hi()),
                                      t.block(as, 1, act.lo() - 1) | t.block(os, 1, obs.lo() - 1));
    return r;
}

TensionReport check_tension(const Agent& agent, const Environment& env, const AgencyQuery& query) {
    return check_tension(enumerate_joint(agent, env, query.horizon()), query);
}

void write_tension_csv_header(std::ostream& out) { out << "plasticity_bits,empowerment_bits,bound_bits,slack_bits\n"; }

void write_tension_csv_row(std::ostream& out, const TensionReport& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.plasticity_bits, r.empowerment_bits,
                  r.bound_bits, r.slack_bits);
    out << buf;
}

MirrorReport mirror_check(const Agent& agent, const Environment& env, const AgencyQuery& query) {
    const int n = query.horizon();
    const JointDist original = enumerate_joint(agent, env, n);
    // In the swapped process the original environment is the agent, so its
    // actions are the original observations.
    const JointDist mirrored = enumerate_joint(swap_roles(env), swap_roles(agent), n);
    const Interval act = query.action_interval;
    const Interval obs = query.observation_interval;

    const double e = empowerment(original, query);
    const double swapped_p = gdi(mirrored, {Role::Observation, act, Role::Action, obs, Arrow::Forward}).value;
    const double p = plasticity(original, query);
    const double swapped_e = gdi(mirrored, {Role::Action, obs, Role::Observation, act, query.plasticity_arrow}).value;
    return {std::abs(e - swapped_p), std::abs(p - swapped_e)};
}

std::pair<Agent, Environment> build_extremal_pair(const Interface& iface, const AgencyQuery& query,
                                                  ExtremalKind kind) {
    const Interval act = query.action_interval;
    const Interval obs = query.observation_interval;
    const int na = iface.num_actions();
    const int no = iface.num_observations();

    if (kind == ExtremalKind::PlasticityMax) {
        if (na > no) throw UnsupportedConfigurationError("plasticity-max needs |A| <= |O|");
        if (obs.length() < act.length()) {
            throw UnsupportedConfigurationError("plasticity-max needs the observation interval to be at least as "
                                                "long as the action interval");
        }
        if (obs.lo() >= act.lo()) {
            throw UnsupportedConfigurationError("plasticity-max needs the observation interval to start before the "
                                                "action interval");
        }
        // a_i copies o_{i-lag}, which is uniform over the first |A| symbols.
        return {zoo::mirror_agent(iface, act.lo(), act.lo() - obs.lo()), zoo::staged_uniform_env(iface, obs.lo(), na)};
    }

    if (no > na) throw UnsupportedConfigurationError("empowerment-max needs |O| <= |A|");
    if (act.length() < obs.length()) {
        throw UnsupportedConfigurationError("empowerment-max needs the action interval to be at least as long as "
                                            "the observation interval");
    }
    if (act.lo() > obs.lo()) {
        throw UnsupportedConfigurationError("empowerment-max needs the action interval to start no later than the "
                                            "observation interval");
    }
    return {zoo::staged_uniform_agent(iface, act.lo(), no), zoo::mirror_env(iface, obs.lo(), obs.lo() - act.lo())};
}

}  // namespace gdi
