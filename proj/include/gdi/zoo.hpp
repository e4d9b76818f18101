#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gdi/interaction.hpp"

// Reference agents and environments. Every constructor returns a pure,
// reentrant policy: outputs depend only on the history argument.
namespace gdi::zoo {

// --- agents that ignore observations --------------------------------------

Agent constant_agent(Interface iface, Distribution dist);

// `sequence_probs` is a distribution over action sequences of length `horizon`,
// indexed mixed-radix with a_1 most significant. Step i samples from
// p(a_i | a_1..a_{i-1}); unreachable prefixes and steps past `horizon` get the uniform.
Agent open_loop_agent(Interface iface, int horizon, std::vector<double> sequence_probs);

// `by_step[k]` is played at step k+1; the last entry repeats afterwards.
Agent length_agent(Interface iface, std::vector<Distribution> by_step);

// Memory-one past-action agent: `initial` on the first step, then
// `by_last_action[a]` after playing a.
Agent past_action_agent(Interface iface, Distribution initial, std::vector<Distribution> by_last_action);

// --- learning and mirroring agents ----------------------------------------

struct QLearnerSpec {
    double epsilon = 0.0;
    double q_init = 0.0;
    double alpha = 0.1;
    // reward[o] for observation o; empty means reward = observation index.
    std::vector<double> reward;
};

// Epsilon-greedy tabular Q-learning, replayed from the history on every call:
// Q[a] starts at q_init, Q[a_i] += alpha * (reward(o_i) - Q[a_i]) per completed
// step, and the output is epsilon*uniform + (1-epsilon)*uniform(argmax Q).
// Values within kQTieTolerance of the maximum count as tied.
inline constexpr double kQTieTolerance = 1e-12;
Agent q_learning_agent(Interface iface, const QLearnerSpec& spec);

// Plays a_0 before step `start`; from then on plays the action whose index is
// the observation `lag` steps back (a_0 if that index is not an action).
Agent mirror_agent(Interface iface, int start, int lag = 1);

// a_0 before step `start`, uniform over the first `support` actions afterwards.
Agent staged_uniform_agent(Interface iface, int start, int support);

// --- environments ------------------------------------------------------------

// Two observations (0 / 1); observation 1 with probability p[last action].
Environment bernoulli_bandit(Interface iface, std::vector<double> p);

Environment uniform_env(Interface iface);
Environment deterministic_env(Interface iface, std::function<int(const History&)> next);
// Point mass on the last action's index; needs |O| >= |A|.
Environment copy_env(Interface iface);
// `by_step[k]` is emitted at step k+1 whatever the actions; last entry repeats.
Environment ignore_env(Interface iface, std::vector<Distribution> by_step);

// Role-swapped counterparts of mirror_agent / staged_uniform_agent: o_0 before
// `start`, then the observation indexed by the action `lag` steps back
// (lag 0 = the current action).
Environment mirror_env(Interface iface, int start, int lag = 0);
Environment staged_uniform_env(Interface iface, int start, int support);

// Deterministic environment table read from text lines "a1 o1 ... ak : o";
// histories missing from the file emit observation 0.
Environment deterministic_env_from_file(Interface iface, const std::string& path);

// --- corridor ----------------------------------------------------------------

inline constexpr int kLeft = 0;
inline constexpr int kRight = 1;
inline constexpr int kPull = 2;
inline constexpr int kLightOff = 0;
inline constexpr int kLightOn = 1;

struct CorridorSpec {
    int rooms = 5;
    double theta = 0.5;
    int start_room = 0;

    int last_room() const { return rooms - 1; }
};

Interface corridor_interface();

// Position after replaying `actions` from spec.start_room, clamped at both ends.
int corridor_position(const CorridorSpec& spec, std::span<const int> actions);

// Rooms 0..n with one light each (initially off). Observation i is the light of
// the room occupied after action i. A pull in room r flips that light with
// probability r/n + (1 - r/n) * theta; after a move the entered room's light
// flips with probability theta. Unoccupied lights do not evolve.
Environment corridor_env(const CorridorSpec& spec);

// Reactive agent anchored at `room`: walks back toward it when displaced, and
// in the room pulls with probability `pull_if_off` / `pull_if_on` given the last
// light (`pull_first` on the first step). The alternative to pulling is a move
// toward the nearest wall (left in room 0, right otherwise), a no-op at the ends.
struct StayPolicy {
    double pull_first = 0.5;
    double pull_if_off = 0.9;
    double pull_if_on = 0.1;
};
Agent corridor_stay_agent(const CorridorSpec& spec, int room, const StayPolicy& policy = {});

// --- registry ----------------------------------------------------------------

// Parses "name" or "name(key=value,...)". Agent names: constant, open-loop,
// length, past-action, qlearn, mirror, stay. Environment names: bandit, uniform,
// copy, ignore, det, corridor. Unknown names or keys raise ArgumentError.
Agent make_agent(const std::string& spec, Interface iface, int horizon);
Environment make_env(const std::string& spec, Interface iface, int horizon);

// Interface implied by a zoo spec (corridor and bandit fix their alphabets),
// or `fallback` when neither string constrains it.
Interface implied_interface(const std::string& agent_spec, const std::string& env_spec, Interface fallback);

}  // namespace gdi::zoo
