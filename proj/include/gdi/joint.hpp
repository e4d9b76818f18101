#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gdi/interaction.hpp"
#include "gdi/table.hpp"

namespace gdi {

// Total-mass tolerance of an enumerated or parsed joint.
inline constexpr double kJointTolerance = 1e-10;

struct EnumerationConfig {
    // Upper bound on (|A|*|O|)^n.
    std::uint64_t max_cells = std::uint64_t{1} << 24;
};

// A (role, timestep) coordinate of the interaction process; timesteps are 1-based.
struct Coordinate {
    Role role;
    int step;
    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Exact probability table over all trajectories of a finite horizon. Stored
// densely with sequence 0 = actions and sequence 1 = observations.
class JointDist {
public:
    JointDist(Interface iface, int horizon, std::vector<double> probabilities,
              Ordering ordering = Ordering::ActionsFirst);

    const Interface& interface() const { return iface_; }
    int horizon() const { return table_.horizon(); }
    Ordering ordering() const { return ordering_; }
    const SequenceTable& table() const { return table_; }
    std::size_t num_cells() const { return table_.num_cells(); }
    std::span<const double> probabilities() const { return table_.probabilities(); }

    std::size_t cell_of(const Trajectory& t) const;
    Trajectory trajectory_of(std::size_t cell) const;
    double probability(const Trajectory& t) const;

    int variable(Coordinate c) const { return table_.variable(sequence_of(c.role), c.step); }
    VariableSet variables(std::span<const Coordinate> coords) const;
    // Coordinates (role, lo..hi); empty when hi < lo.
    VariableSet block(Role role, int lo, int hi) const {
        return table_.block(sequence_of(role), lo, hi);
    }

    // The same process with action and observation coordinates exchanged.
    JointDist swapped() const;

    static constexpr int sequence_of(Role r) { return r == Role::Action ? 0 : 1; }

private:
    Interface iface_;
    Ordering ordering_;
    SequenceTable table_;
};

// Probability of every trajectory, as the telescoping product of agent and
// environment conditionals. Both policies must share interface and ordering.
JointDist enumerate_joint(const Agent& agent, const Environment& env, int horizon,
                          const EnumerationConfig& config = {});

// Marginal table over `coords`, indexed mixed-radix with coords[0] most significant.
struct Marginal {
    std::vector<Coordinate> coords;
    std::vector<int> radices;
    std::vector<double> probabilities;

    double at(std::span<const int> symbols) const;
};

Marginal marginal(const JointDist& dist, std::span<const Coordinate> coords);

// Text form: header "gdi-joint v1 |A|=<k> |O|=<m> n=<n>", then one line per
// nonzero trajectory "a1 o1 ... an on : p" with 17 significant digits.
void write_joint(std::ostream& out, const JointDist& dist);
JointDist read_joint(std::istream& in);

}  // namespace gdi
