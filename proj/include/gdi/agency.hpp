#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <utility>

#include "gdi/joint.hpp"
#include "gdi/measures.hpp"

namespace gdi {

struct AgencyQuery {
    Interval action_interval;
    Interval observation_interval;
    // Empowerment always uses the forward arrow.
    Arrow plasticity_arrow = Arrow::Delayed;

    int horizon() const;
    MeasureQuery plasticity_query() const;   // O[obs] -> A[act]
    MeasureQuery empowerment_query() const;  // A[act] -> O[obs], forward
};

struct Extremum {
    double bits = 0.0;
    std::size_t index = 0;  // position of the maximizer in the input set
};

// Max over the set; ties go to the lowest index. Empty set -> ArgumentError.
Extremum plasticity(const Agent& agent, std::span<const Environment> envs, const AgencyQuery& query,
                    const EnumerationConfig& config = {});
Extremum empowerment(std::span<const Agent> agents, const Environment& env, const AgencyQuery& query,
                     const EnumerationConfig& config = {});

double plasticity(const JointDist& dist, const AgencyQuery& query);
double empowerment(const JointDist& dist, const AgencyQuery& query);

// Least step i whose entropy gap
//   H(A_i | O_{1:a-1}, A_{1:i-1}) - H(A_i | O_{a:min(b,i')}, O_{1:a-1}, A_{1:i-1})
// exceeds kZeroGap, with i' = i (forward) or i - 1 (delayed). Raises
// NumericalIntegrityError if the answer disagrees with plasticity > kZeroGap.
inline constexpr double kZeroGap = 1e-12;
std::optional<int> positive_plasticity_witness(const Agent& agent, const Environment& env,
                                               const AgencyQuery& query);
std::optional<int> positive_plasticity_witness(const JointDist& dist, const AgencyQuery& query);

// min(|obs| log2|O|, |act| log2|A|): each interval length paired with its own alphabet.
double tension_bound(const Interface& iface, const AgencyQuery& query);

struct TensionReport {
    double plasticity_bits;
    double empowerment_bits;
    double bound_bits;
    double slack_bits;
    // cmi(A[act]; O[obs] | A before act, O before obs); equals plasticity + empowerment.
    double conserved_bits;
};

// Delayed plasticity and forward empowerment whatever query.plasticity_arrow says.
TensionReport check_tension(const Agent& agent, const Environment& env, const AgencyQuery& query);
TensionReport check_tension(const JointDist& dist, const AgencyQuery& query);

void write_tension_csv_header(std::ostream& out);
void write_tension_csv_row(std::ostream& out, const TensionReport& report);

struct MirrorReport {
    // |empowerment(agent, env) - plasticity of swap(env) against swap(agent)|
    double empowerment_residual;
    // |plasticity(agent, env) - empowerment of swap(agent) facing swap(env)|
    double plasticity_residual;
};
MirrorReport mirror_check(const Agent& agent, const Environment& env, const AgencyQuery& query);

enum class ExtremalKind { PlasticityMax, EmpowermentMax };

// PlasticityMax: needs |A| <= |O|, |obs| >= |act| and obs.lo < act.lo.
// EmpowermentMax: needs |O| <= |A|, |act| >= |obs| and act.lo <= obs.lo.
// Anything else raises UnsupportedConfigurationError.
std::pair<Agent, Environment> build_extremal_pair(const Interface& iface, const AgencyQuery& query,
                                                  ExtremalKind kind);

}  // namespace gdi
