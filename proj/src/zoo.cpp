#include "gdi/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "gdi/random.hpp"

namespace gdi::zoo {
namespace {

void require_distribution(const Distribution& d, int size, const std::string& what) {
    if (static_cast<int>(d.size()) != size) {
        throw ArgumentError(what + ": expected " + std::to_string(size) + " probabilities, got " +
                            std::to_string(d.size()));
    }
    double total = 0.0;
    for (double p : d) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ArgumentError(what + ": negative or non-finite probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kPolicyTolerance) throw ArgumentError(what + ": probabilities do not sum to 1");
}

Distribution point_mass(int size, int index) {
    Distribution d(static_cast<std::size_t>(size), 0.0);
    d[static_cast<std::size_t>(index)] = 1.0;
    return d;
}

Distribution uniform(int size) {
    return Distribution(static_cast<std::size_t>(size), 1.0 / size);
}

Distribution uniform_prefix(int size, int support) {
    Distribution d(static_cast<std::size_t>(size), 0.0);
    for (int k = 0; k < support; ++k) d[static_cast<std::size_t>(k)] = 1.0 / support;
    return d;
}

// Number of completed steps before the symbol the policy is about to emit.
int step_of(const History& h, Role emitting) { return static_cast<int>(h.symbols(emitting).size()) + 1; }

}  // namespace

Agent constant_agent(Interface iface, Distribution dist) {
    require_distribution(dist, iface.num_actions(), "constant_agent");
    return Agent(iface, [dist = std::move(dist)](const History&) { return dist; }, "constant");
}

Agent open_loop_agent(Interface iface, int horizon, std::vector<double> sequence_probs) {
    if (horizon < 1) throw ArgumentError("open_loop_agent: horizon must be >= 1");
    const int na = iface.num_actions();
    std::size_t count = 1;
    for (int i = 0; i < horizon; ++i) count *= static_cast<std::size_t>(na);
    require_distribution(sequence_probs, static_cast<int>(count), "open_loop_agent");

    // prefix[k][code] = P(a_1..a_k = code); prefix[horizon] is the input itself.
    auto prefix = std::make_shared<std::vector<std::vector<double>>>(static_cast<std::size_t>(horizon) + 1);
    (*prefix)[static_cast<std::size_t>(horizon)] = std::move(sequence_probs);
    for (int k = horizon - 1; k >= 0; --k) {
        const auto& next = (*prefix)[static_cast<std::size_t>(k) + 1];
        auto& cur = (*prefix)[static_cast<std::size_t>(k)];
        cur.assign(next.size() / static_cast<std::size_t>(na), 0.0);
        for (std::size_t code = 0; code < next.size(); ++code) cur[code / static_cast<std::size_t>(na)] += next[code];
    }

    return Agent(
        iface,
        [prefix, horizon, na](const History& h) {
            const auto acts = h.actions();
            const int k = static_cast<int>(acts.size());
            if (k >= horizon) return uniform(na);
            std::size_t code = 0;
            for (int a : acts) code = code * static_cast<std::size_t>(na) + static_cast<std::size_t>(a);
            const double denom = (*prefix)[static_cast<std::size_t>(k)][code];
            if (denom <= 0.0) return uniform(na);
            Distribution d(static_cast<std::size_t>(na));
            double total = 0.0;
            for (int a = 0; a < na; ++a) {
                d[static_cast<std::size_t>(a)] =
                    (*prefix)[static_cast<std::size_t>(k) + 1][code * static_cast<std::size_t>(na) + static_cast<std::size_t>(a)];
                total += d[static_cast<std::size_t>(a)];
            }
            for (double& p : d) p /= total;
            return d;
        },
        "open-loop");
}

Agent length_agent(Interface iface, std::vector<Distribution> by_step) {
    if (by_step.empty()) throw ArgumentError("length_agent: need at least one distribution");
    for (const auto& d : by_step) require_distribution(d, iface.num_actions(), "length_agent");
    return Agent(
        iface,
        [by_step = std::move(by_step)](const History& h) {
            const std::size_t k = std::min(h.actions().size(), by_step.size() - 1);
            return by_step[k];
        },
        "length");
}

Agent past_action_agent(Interface iface, Distribution initial, std::vector<Distribution> by_last_action) {
    require_distribution(initial, iface.num_actions(), "past_action_agent");
    if (static_cast<int>(by_last_action.size()) != iface.num_actions()) {
        throw ArgumentError("past_action_agent: need one distribution per action");
    }
    for (const auto& d : by_last_action) require_distribution(d, iface.num_actions(), "past_action_agent");
    return Agent(
        iface,
        [initial = std::move(initial), table = std::move(by_last_action)](const History& h) {
            const auto acts = h.actions();
            return acts.empty() ? initial : table[static_cast<std::size_t>(acts.back())];
        },
        "past-action");
}

Agent q_learning_agent(Interface iface, const QLearnerSpec& spec) {
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) throw ArgumentError("qlearn: epsilon must lie in [0,1]");
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) throw ArgumentError("qlearn: alpha must lie in (0,1]");
    std::vector<double> reward = spec.reward;
    if (reward.empty()) {
        for (int o = 0; o < iface.num_observations(); ++o) reward.push_back(o);
    }
    if (static_cast<int>(reward.size()) != iface.num_observations()) {
        throw ArgumentError("qlearn: reward map needs one entry per observation");
    }
    const int na = iface.num_actions();
    return Agent(
        iface,
        [spec, reward = std::move(reward), na](const History& h) {
            std::vector<double> q(static_cast<std::size_t>(na), spec.q_init);
            const auto acts = h.actions();
            const auto obs = h.observations();
            for (std::size_t i = 0; i < obs.size(); ++i) {
                double& qa = q[static_cast<std::size_t>(acts[i])];
                qa += spec.alpha * (reward[static_cast<std::size_t>(obs[i])] - qa);
            }
            const double best = *std::max_element(q.begin(), q.end());
            int tied = 0;
            for (double v : q) tied += v >= best - kQTieTolerance ? 1 : 0;
            Distribution d(static_cast<std::size_t>(na), spec.epsilon / na);
            for (int a = 0; a < na; ++a) {
                if (q[static_cast<std::size_t>(a)] >= best - kQTieTolerance) {
                    d[static_cast<std::size_t>(a)] += (1.0 - spec.epsilon) / tied;
                }
            }
            return d;
        },
        "qlearn");
}

Agent mirror_agent(Interface iface, int start, int lag) {
    if (iface.num_actions() > iface.num_observations()) {
        throw ArgumentError("mirror_agent needs |A| <= |O|");
    }
    if (lag < 1) throw ArgumentError("mirror_agent: lag must be >= 1");
    const int na = iface.num_actions();
    return Agent(
        iface,
        [start, lag, na](const History& h) {
            const int step = step_of(h, Role::Action);
            const int source = step - lag;
            if (step < start || source < 1) return point_mass(na, 0);
            const int o = h.observations()[static_cast<std::size_t>(source - 1)];
            return point_mass(na, o < na ? o : 0);
        },
        "mirror");
}

Agent staged_uniform_agent(Interface iface, int start, int support) {
    if (support < 1 || support > iface.num_actions()) throw ArgumentError("staged_uniform_agent: bad support");
    const int na = iface.num_actions();
    return Agent(
        iface,
        [start, support, na](const History& h) {
            return step_of(h, Role::Action) < start ? point_mass(na, 0) : uniform_prefix(na, support);
        },
        "staged-uniform");
}

Environment bernoulli_bandit(Interface iface, std::vector<double> p) {
    if (iface.num_observations() != 2) throw ArgumentError("bandit needs exactly two observations");
    if (static_cast<int>(p.size()) != iface.num_actions()) {
        throw ArgumentError("bandit needs one success probability per action (got " + std::to_string(p.size()) +
                            " for " + std::to_string(iface.num_actions()) + " actions)");
    }
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("bandit probabilities must lie in [0,1]");
    }
    return Environment(
        iface,
        [p = std::move(p)](const History& h) {
            const double s = p[static_cast<std::size_t>(h.actions().back())];
            return Distribution{1.0 - s, s};
        },
        "bandit");
}

Environment uniform_env(Interface iface) {
    const int no = iface.num_observations();
    return Environment(iface, [no](const History&) { return uniform(no); }, "uniform");
}

Environment deterministic_env(Interface iface, std::function<int(const History&)> next) {
    const int no = iface.num_observations();
    return Environment(
        iface,
        [next = std::move(next), no](const History& h) {
            const int o = next(h);
            if (o < 0 || o >= no) {
                throw ContractViolation("deterministic environment produced observation " + std::to_string(o) +
                                        " at history [" + h.to_string() + "]");
            }
            return point_mass(no, o);
        },
        "det");
}

Environment copy_env(Interface iface) {
    if (iface.num_observations() < iface.num_actions()) throw ArgumentError("copy_env needs |O| >= |A|");
    const int no = iface.num_observations();
    return Environment(iface, [no](const History& h) { return point_mass(no, h.actions().back()); }, "copy");
}

Environment ignore_env(Interface iface, std::vector<Distribution> by_step) {
    if (by_step.empty()) throw ArgumentError("ignore_env: need at least one distribution");
    for (const auto& d : by_step) require_distribution(d, iface.num_observations(), "ignore_env");
    return Environment(
        iface,
        [by_step = std::move(by_step)](const History& h) {
            const std::size_t k = std::min(h.observations().size(), by_step.size() - 1);
            return by_step[k];
        },
        "ignore");
}

Environment mirror_env(Interface iface, int start, int lag) {
    if (iface.num_observations() > iface.num_actions()) throw ArgumentError("mirror_env needs |O| <= |A|");
    if (lag < 0) throw ArgumentError("mirror_env: lag must be >= 0");
    const int no = iface.num_observations();
    return Environment(
        iface,
        [start, lag, no](const History& h) {
            const int step = step_of(h, Role::Observation);
            const int source = step - lag;
            if (step < start || source < 1) return point_mass(no, 0);
            const int a = h.actions()[static_cast<std::size_t>(source - 1)];
            return point_mass(no, a < no ? a : 0);
        },
        "mirror-env");
}

Environment staged_uniform_env(Interface iface, int start, int support) {
    if (support < 1 || support > iface.num_observations()) throw ArgumentError("staged_uniform_env: bad support");
    const int no = iface.num_observations();
    return Environment(
        iface,
        [start, support, no](const History& h) {
            return step_of(h, Role::Observation) < start ? point_mass(no, 0) : uniform_prefix(no, support);
        },
        "staged-uniform");
}

Environment deterministic_env_from_file(Interface iface, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("det: cannot open " + path);
    auto table = std::make_shared<std::map<std::string, int>>();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(path + ":" + std::to_string(line_no) + ": missing ':'");
        std::istringstream syms(line.substr(0, colon));
        History h(iface);
        int s = 0;
        while (syms >> s) h.push(s);
        if (h.parity() != Parity::EndsInAction) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": history must end in an action");
        }
        int o = 0;
        if (!(std::istringstream(line.substr(colon + 1)) >> o) || o < 0 || o >= iface.num_observations()) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad observation");
        }
        (*table)[h.to_string()] = o;
    }
    return deterministic_env(iface, [table](const History& h) {
        const auto it = table->find(h.to_string());
        return it == table->end() ? 0 : it->second;
    });
}

Interface corridor_interface() { return Interface(3, 2); }

int corridor_position(const CorridorSpec& spec, std::span<const int> actions) {
    int pos = spec.start_room;
    for (int a : actions) {
        if (a == kLeft) pos = std::max(0, pos - 1);
        if (a == kRight) pos = std::min(spec.last_room(), pos + 1);
    }
    return pos;
}

namespace {

void validate_corridor(const CorridorSpec& spec) {
    if (spec.rooms < 2) throw ArgumentError("corridor needs at least 2 rooms");
    if (!(spec.theta >= 0.0 && spec.theta <= 1.0)) throw ArgumentError("corridor theta must lie in [0,1]");
    if (spec.start_room < 0 || spec.start_room > spec.last_room()) {
        throw ArgumentError("corridor start room out of range");
    }
}

}  // namespace

Environment corridor_env(const CorridorSpec& spec) {
    validate_corridor(spec);
    return Environment(
        corridor_interface(),
        [spec](const History& h) {
            const auto acts = h.actions();
            const auto obs = h.observations();
            std::vector<int> lights(static_cast<std::size_t>(spec.rooms), kLightOff);
            int pos = spec.start_room;
            for (std::size_t i = 0; i < acts.size(); ++i) {
                pos = corridor_position(CorridorSpec{spec.rooms, spec.theta, pos}, acts.subspan(i, 1));
                if (i < obs.size()) lights[static_cast<std::size_t>(pos)] = obs[i];
            }
            const double control = static_cast<double>(pos) / spec.last_room();
            const double flip = acts.back() == kPull ? control + (1.0 - control) * spec.theta : spec.theta;
            const double on = lights[static_cast<std::size_t>(pos)] == kLightOff ? flip : 1.0 - flip;
            return Distribution{1.0 - on, on};
        },
        "corridor");
}

Agent corridor_stay_agent(const CorridorSpec& spec, int room, const StayPolicy& policy) {
    validate_corridor(spec);
    if (room < 0 || room > spec.last_room()) throw ArgumentError("stay agent room out of range");
    for (double p : {policy.pull_first, policy.pull_if_off, policy.pull_if_on}) {
        if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("stay agent probabilities must lie in [0,1]");
    }
    const int idle = room == 0 ? kLeft : kRight;
    return Agent(
        corridor_interface(),
        [spec, room, policy, idle](const History& h) {
            const int pos = corridor_position(spec, h.actions());
            Distribution d(3, 0.0);
            if (pos < room) {
                d[kRight] = 1.0;
            } else if (pos > room) {
                d[kLeft] = 1.0;
            } else {
                const auto obs = h.observations();
                const double pull = obs.empty() ? policy.pull_first
                                    : obs.back() == kLightOff ? policy.pull_if_off
                                                              : policy.pull_if_on;
                d[kPull] = pull;
                d[static_cast<std::size_t>(idle)] += 1.0 - pull;
            }
            return d;
        },
        "stay");
}

// --- registry ----------------------------------------------------------------

namespace {

struct ParsedSpec {
    std::string name;
    std::map<std::string, std::string> params;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

ParsedSpec parse_spec(const std::string& text) {
    ParsedSpec out;
    const auto open = text.find('(');
    if (open == std::string::npos) {
        out.name = trim(text);
        return out;
    }
    if (text.back() != ')') throw ArgumentError("malformed zoo spec '" + text + "'");
    out.name = trim(text.substr(0, open));
    std::stringstream body(text.substr(open + 1, text.size() - open - 2));
    std::string item;
    while (std::getline(body, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ArgumentError("zoo parameter '" + item + "' is not key=value");
        out.params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return out;
}

class Params {
public:
    explicit Params(ParsedSpec spec) : spec_(std::move(spec)) {}

    double number(const std::string& key, double fallback) {
        used_.push_back(key);
        const auto it = spec_.params.find(key);
        if (it == spec_.params.end()) return fallback;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ArgumentError("zoo parameter " + key + "=" + it->second + " is not a number");
        }
    }

    int integer(const std::string& key, int fallback) {
        const double v = number(key, fallback);
        if (v != std::floor(v)) throw ArgumentError("zoo parameter " + key + " must be an integer");
        return static_cast<int>(v);
    }

    std::string text(const std::string& key, const std::string& fallback) {
        used_.push_back(key);
        const auto it = spec_.params.find(key);
        return it == spec_.params.end() ? fallback : it->second;
    }

    // Rejects keys the constructor did not ask for.
    void finish() const {
        for (const auto& [key, value] : spec_.params) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
                throw ArgumentError("unknown parameter '" + key + "' for zoo entry '" + spec_.name + "'");
            }
        }
    }

private:
    ParsedSpec spec_;
    std::vector<std::string> used_;
};

CorridorSpec corridor_params(Params& p) {
    CorridorSpec spec;
    spec.rooms = p.integer("rooms", spec.rooms);
    spec.theta = p.number("theta", spec.theta);
    spec.start_room = p.integer("start", spec.start_room);
    return spec;
}

}  // namespace

Agent make_agent(const std::string& text, Interface iface, int horizon) {
    const ParsedSpec parsed = parse_spec(text);
    Params p(parsed);
    const int na = iface.num_actions();
    Agent agent = [&]() -> Agent {
        if (parsed.name == "constant") {
            const int a = p.integer("a", -1);
            if (a >= na) throw ArgumentError("constant: action index out of range");
            return constant_agent(iface, a < 0 ? uniform(na) : point_mass(na, a));
        }
        if (parsed.name == "open-loop") {
            const auto seed = static_cast<std::uint64_t>(p.integer("seed", 7));
            std::size_t count = 1;
            for (int i = 0; i < horizon; ++i) count *= static_cast<std::size_t>(na);
            SplitMix64 rng(seed);
            return open_loop_agent(iface, horizon, sample_dirichlet(rng, count));
        }
        if (parsed.name == "length") {
            const double bias = p.number("bias", 0.7);
            std::vector<Distribution> by_step;
            for (int k = 0; k < std::max(horizon, 1); ++k) {
                Distribution d(static_cast<std::size_t>(na), (1.0 - bias) / (na - 1));
                d[static_cast<std::size_t>(k % na)] = bias;
                by_step.push_back(d);
            }
            return length_agent(iface, std::move(by_step));
        }
        if (parsed.name == "past-action") {
            const double stay = p.number("stay", 0.8);
            std::vector<Distribution> table;
            for (int a = 0; a < na; ++a) {
                Distribution d(static_cast<std::size_t>(na), (1.0 - stay) / (na - 1));
                d[static_cast<std::size_t>(a)] = stay;
                table.push_back(d);
            }
            return past_action_agent(iface, uniform(na), std::move(table));
        }
        if (parsed.name == "qlearn") {
            QLearnerSpec spec;
            spec.epsilon = p.number("eps", spec.epsilon);
            spec.q_init = p.number("q0", spec.q_init);
            spec.alpha = p.number("alpha", spec.alpha);
            return q_learning_agent(iface, spec);
        }
        if (parsed.name == "mirror") {
            const int start = p.integer("start", 2);
            const int lag = p.integer("lag", 1);
            return mirror_agent(iface, start, lag);
        }
        if (parsed.name == "stay") {
            CorridorSpec spec = corridor_params(p);
            const int room = p.integer("room", spec.start_room);
            spec.start_room = p.integer("start", room);
            return corridor_stay_agent(spec, room);
        }
        throw ArgumentError("unknown zoo agent '" + parsed.name + "'");
    }();
    p.finish();
    return agent;
}

Environment make_env(const std::string& text, Interface iface, int horizon) {
    const ParsedSpec parsed = parse_spec(text);
    Params p(parsed);
    const int no = iface.num_observations();
    Environment env = [&]() -> Environment {
        if (parsed.name == "bandit") {
            std::vector<double> probs;
            const double defaults[] = {0.4, 0.7};
            for (int a = 0; a < iface.num_actions(); ++a) {
                probs.push_back(p.number("p" + std::to_string(a), a < 2 ? defaults[a] : 0.5));
            }
            return bernoulli_bandit(iface, std::move(probs));
        }
        if (parsed.name == "uniform") return uniform_env(iface);
        if (parsed.name == "copy") return copy_env(iface);
        if (parsed.name == "ignore") {
            const double bias = p.number("bias", 0.7);
            std::vector<Distribution> by_step;
            for (int k = 0; k < std::max(horizon, 1); ++k) {
                Distribution d(static_cast<std::size_t>(no), (1.0 - bias) / (no - 1));
                d[static_cast<std::size_t>(k % no)] = bias;
                by_step.push_back(d);
            }
            return ignore_env(iface, std::move(by_step));
        }
        if (parsed.name == "det") {
            const std::string file = p.text("file", "");
            if (file.empty()) throw ArgumentError("det requires file=<path>");
            return deterministic_env_from_file(iface, file);
        }
        if (parsed.name == "corridor") {
            if (!(iface == corridor_interface())) throw ArgumentError("corridor needs |A|=3, |O|=2");
            return corridor_env(corridor_params(p));
        }
        throw ArgumentError("unknown zoo environment '" + parsed.name + "'");
    }();
    p.finish();
    return env;
}

Interface implied_interface(const std::string& agent_spec, const std::string& env_spec, Interface fallback) {
    const auto a = parse_spec(agent_spec).name;
    const auto e = parse_spec(env_spec).name;
    if (e == "corridor" || a == "stay") return corridor_interface();
    if (e == "bandit") return Interface(fallback.num_actions(), 2);
    return fallback;
}

}  // namespace gdi::zoo
