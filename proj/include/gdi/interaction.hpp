#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdi/errors.hpp"

namespace gdi {

enum class Role : std::uint8_t { Action = 0, Observation = 1 };

constexpr Role opposite(Role r) {
    return r == Role::Action ? Role::Observation : Role::Action;
}

const char* to_string(Role r);

// Which party emits the first symbol of every step. The toolkit's canonical
// process is actions-first (A1 O1 A2 O2 ...); observations-first only arises
// from role-swapping a policy, where it is the relabeled view of the same process.
enum class Ordering : std::uint8_t { ActionsFirst, ObservationsFirst };

constexpr Ordering flipped(Ordering o) {
    return o == Ordering::ActionsFirst ? Ordering::ObservationsFirst : Ordering::ActionsFirst;
}

constexpr Role leading_role(Ordering o) {
    return o == Ordering::ActionsFirst ? Role::Action : Role::Observation;
}

// The pair of finite alphabets shared by an agent and an environment.
class Interface {
public:
    Interface(int num_actions, int num_observations);

    int num_actions() const { return num_actions_; }
    int num_observations() const { return num_observations_; }
    int alphabet(Role r) const { return r == Role::Action ? num_actions_ : num_observations_; }
    Interface swapped() const { return {num_observations_, num_actions_}; }

    friend bool operator==(const Interface&, const Interface&) = default;

private:
    int num_actions_;
    int num_observations_;
};

enum class Parity : std::uint8_t { Empty, EndsInAction, EndsInObservation };

// A finite alternating action/observation sequence starting with the leading
// role of its ordering.
class History {
public:
    explicit History(Interface iface, Ordering ordering = Ordering::ActionsFirst);
    History(Interface iface, std::vector<int> actions, std::vector<int> observations,
            Ordering ordering = Ordering::ActionsFirst);

    const Interface& interface() const { return iface_; }
    Ordering ordering() const { return ordering_; }
    std::span<const int> actions() const { return actions_; }
    std::span<const int> observations() const { return observations_; }
    std::span<const int> symbols(Role r) const {
        return r == Role::Action ? actions() : observations();
    }

    std::size_t size() const { return actions_.size() + observations_.size(); }
    bool empty() const { return size() == 0; }
    Parity parity() const;
    Role next_role() const;

    // Appends the next symbol; its role is implied by the alternation.
    void push(int symbol);
    void pop();
    History extended(int symbol) const;

    // Same sequence viewed with actions and observations exchanged.
    History swapped() const;

    // Interleaved in emission order, e.g. "a0 o1 a1".
    std::string to_string() const;

    friend bool operator==(const History&, const History&) = default;

private:
    Interface iface_;
    Ordering ordering_;
    std::vector<int> actions_;
    std::vector<int> observations_;
};

using Distribution = std::vector<double>;
using PolicyFunction = std::function<Distribution(const History&)>;

// Normalization tolerance of a single policy output.
inline constexpr double kPolicyTolerance = 1e-12;

// Throws ContractViolation unless `dist` is a length-`size` probability vector.
void validate_distribution(std::span<const double> dist, int size, const History& where,
                           const std::string& who);

// A stochastic history-to-symbol map emitting symbols of role R: an agent
// (R = Action) or an environment (R = Observation). Policies must be pure
// functions of the history.
template <Role R>
class Policy {
public:
    Policy(Interface iface, PolicyFunction fn, std::string name = {},
           Ordering ordering = Ordering::ActionsFirst)
        : iface_(iface), ordering_(ordering), fn_(std::move(fn)), name_(std::move(name)) {}

    static constexpr Role emits = R;

    const Interface& interface() const { return iface_; }
    Ordering ordering() const { return ordering_; }
    const std::string& name() const { return name_; }
    int alphabet() const { return iface_.alphabet(R); }

    // Evaluates the policy without validating its output.
    Distribution operator()(const History& h) const { return fn_(h); }

    // Evaluates and validates; throws ContractViolation on malformed output.
    Distribution checked(const History& h) const {
        Distribution d = fn_(h);
        validate_distribution(d, alphabet(), h, name_.empty() ? role_label() : name_);
        return d;
    }

private:
    static const char* role_label() { return R == Role::Action ? "agent" : "environment"; }

    Interface iface_;
    Ordering ordering_;
    PolicyFunction fn_;
    std::string name_;
};

using Agent = Policy<Role::Action>;
using Environment = Policy<Role::Observation>;

// Relabels actions as observations (and vice versa): an environment becomes an
// agent over the swapped interface and the opposite ordering. Outputs are
// bit-identical on corresponding histories; swapping twice is the identity.
Agent swap_roles(const Environment& env);
Environment swap_roles(const Agent& agent);

// One full interleaved sequence of horizon n.
struct Trajectory {
    std::vector<int> actions;
    std::vector<int> observations;

    int horizon() const { return static_cast<int>(actions.size()); }
    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

}  // namespace gdi
