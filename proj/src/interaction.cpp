#include "gdi/interaction.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace gdi {

const char* to_string(Role r) { return r == Role::Action ? "action" : "observation"; }

Interface::Interface(int num_actions, int num_observations)
    : num_actions_(num_actions), num_observations_(num_observations) {
    if (num_actions < 2 || num_observations < 2) {
        throw ArgumentError("interface alphabets need at least 2 symbols each (got |A|=" +
                            std::to_string(num_actions) +
                            ", |O|=" + std::to_string(num_observations) + ")");
    }
}

History::History(Interface iface, Ordering ordering) : iface_(iface), ordering_(ordering) {}

History::History(Interface iface, std::vector<int> actions, std::vector<int> observations,
                 Ordering ordering)
    : iface_(iface), ordering_(ordering) {
    const Role lead = leading_role(ordering);
    const auto& leading = lead == Role::Action ? actions : observations;
    const auto& trailing = lead == Role::Action ? observations : actions;
    if (leading.size() != trailing.size() && leading.size() != trailing.size() + 1) {
        throw ArgumentError("history symbols do not alternate starting with the " +
                            std::string(gdi::to_string(lead)));
    }
    // Push in emission order so range checks run through one path.
    for (std::size_t i = 0; i < leading.size(); ++i) {
        push(leading[i]);
        if (i < trailing.size()) push(trailing[i]);
    }
}

Parity History::parity() const {
    if (empty()) return Parity::Empty;
    const Role last = opposite(next_role());
    return last == Role::Action ? Parity::EndsInAction : Parity::EndsInObservation;
}

Role History::next_role() const {
    const Role lead = leading_role(ordering_);
    return size() % 2 == 0 ? lead : opposite(lead);
}

void History::push(int symbol) {
    const Role r = next_role();
    if (symbol < 0 || symbol >= iface_.alphabet(r)) {
        throw IndexError(std::string(gdi::to_string(r)) + " index " + std::to_string(symbol) +
                         " out of range [0, " + std::to_string(iface_.alphabet(r)) + ")");
    }
    (r == Role::Action ? actions_ : observations_).push_back(symbol);
}

void History::pop() {
    if (empty()) throw IndexError("pop from empty history");
    (opposite(next_role()) == Role::Action ? actions_ : observations_).pop_back();
}

History History::extended(int symbol) const {
    History h = *this;
    h.push(symbol);
    return h;
}

History History::swapped() const {
    History h(iface_.swapped(), flipped(ordering_));
    h.actions_ = observations_;
    h.observations_ = actions_;
    return h;
}

std::string History::to_string() const {
    if (empty()) return "<empty>";
    std::string out;
    const Role lead = leading_role(ordering_);
    const auto& leading = symbols(lead);
    const auto& trailing = symbols(opposite(lead));
    const char lc = lead == Role::Action ? 'a' : 'o';
    const char tc = lead == Role::Action ? 'o' : 'a';
    for (std::size_t i = 0; i < leading.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += lc + std::to_string(leading[i]);
        if (i < trailing.size()) out += std::string(" ") + tc + std::to_string(trailing[i]);
    }
    return out;
}

void validate_distribution(std::span<const double> dist, int size, const History& where,
                           const std::string& who) {
    if (static_cast<int>(dist.size()) != size) {
        throw ContractViolation(who + " returned " + std::to_string(dist.size()) +
                                " entries (expected " + std::to_string(size) +
                                ") at history [" + where.to_string() + "]");
    }
    double total = 0.0;
    for (double p : dist) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ContractViolation(who + " returned a negative or non-finite probability at history [" +
                                    where.to_string() + "]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kPolicyTolerance) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", total);
        throw ContractViolation(who + " returned a distribution summing to " + buf +
                                " at history [" + where.to_string() + "]");
    }
}

Agent swap_roles(const Environment& env) {
    return Agent(
        env.interface().swapped(),
        [env](const History& h) { return env(h.swapped()); },
        env.name().empty() ? std::string{} : "swap(" + env.name() + ")",
        flipped(env.ordering()));
}

Environment swap_roles(const Agent& agent) {
    return Environment(
        agent.interface().swapped(),
        [agent](const History& h) { return agent(h.swapped()); },
        agent.name().empty() ? std::string{} : "swap(" + agent.name() + ")",
        flipped(agent.ordering()));
}

}  // namespace gdi
