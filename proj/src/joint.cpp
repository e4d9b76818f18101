#include "gdi/joint.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace gdi {
namespace {

std::uint64_t checked_cells(const Interface& iface, int horizon, std::uint64_t cap) {
    const std::uint64_t per_step =
        static_cast<std::uint64_t>(iface.num_actions()) * static_cast<std::uint64_t>(iface.num_observations());
    std::uint64_t cells = 1;
    for (int i = 0; i < horizon; ++i) {
        if (cells > cap / per_step) {
            throw SizeError("horizon " + std::to_string(horizon) + " with |A|=" +
                            std::to_string(iface.num_actions()) + ", |O|=" +
                            std::to_string(iface.num_observations()) +
                            " exceeds the enumeration cap of " + std::to_string(cap) + " cells");
        }
        cells *= per_step;
    }
    return cells;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Enumerator {
public:
    Enumerator(const Agent& agent, const Environment& env, int horizon, std::vector<double>& out)
        : agent_(agent), env_(env), horizon_(horizon), out_(out),
          history_(agent.interface(), agent.ordering()) {}

    void run() { visit(0, 1.0, 0); }

private:
    void visit(int step, double mass, std::size_t cell) {
        if (step == horizon_) {
            out_[cell] = mass;
            return;
        }
        const std::size_t na = static_cast<std::size_t>(agent_.interface().num_actions());
        const std::size_t no = static_cast<std::size_t>(agent_.interface().num_observations());

        if (agent_.ordering() == Ordering::ActionsFirst) {
            const Distribution pa = agent_.checked(history_);
            for (std::size_t a = 0; a < na; ++a) {
                if (pa[a] <= 0.0) continue;
                history_.push(static_cast<int>(a));
                const Distribution po = env_.checked(history_);
                for (std::size_t o = 0; o < no; ++o) {
                    if (po[o] <= 0.0) continue;
                    history_.push(static_cast<int>(o));
                    visit(step + 1, mass * pa[a] * po[o], (cell * na + a) * no + o);
                    history_.pop();
                }
                history_.pop();
            }
        } else {
            const Distribution po = env_.checked(history_);
            for (std::size_t o = 0; o < no; ++o) {
                if (po[o] <= 0.0) continue;
                history_.push(static_cast<int>(o));
                const Distribution pa = agent_.checked(history_);
                for (std::size_t a = 0; a < na; ++a) {
                    if (pa[a] <= 0.0) continue;
                    history_.push(static_cast<int>(a));
                    visit(step + 1, mass * po[o] * pa[a], (cell * na + a) * no + o);
                    history_.pop();
                }
                history_.pop();
            }
        }
    }

    const Agent& agent_;
    const Environment& env_;
    int horizon_;
    std::vector<double>& out_;
    History history_;
};

}  // namespace

JointDist::JointDist(Interface iface, int horizon, std::vector<double> probabilities,
                     Ordering ordering)
    : iface_(iface),
      ordering_(ordering),
      table_({iface.num_actions(), iface.num_observations()}, horizon, std::move(probabilities)) {
    double total = 0.0;
    for (double p : table_.probabilities()) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ArgumentError("joint contains a negative or non-finite cell");
        total += p;
    }
    if (std::abs(total - 1.0) > kJointTolerance) {
        throw ArgumentError("joint mass " + format_double(total) + " is not 1 within 1e-10");
    }
}

std::size_t JointDist::cell_of(const Trajectory& t) const {
    if (t.horizon() != horizon() || t.observations.size() != t.actions.size()) {
        throw ArgumentError("trajectory horizon does not match the joint");
    }
    const std::size_t na = static_cast<std::size_t>(iface_.num_actions());
    const std::size_t no = static_cast<std::size_t>(iface_.num_observations());
    std::size_t cell = 0;
    for (int i = 0; i < horizon(); ++i) {
        const int a = t.actions[static_cast<std::size_t>(i)];
        const int o = t.observations[static_cast<std::size_t>(i)];
        if (a < 0 || static_cast<std::size_t>(a) >= na || o < 0 || static_cast<std::size_t>(o) >= no) {
            throw IndexError("trajectory symbol out of range at step " + std::to_string(i + 1));
        }
        cell = (cell * na + static_cast<std::size_t>(a)) * no + static_cast<std::size_t>(o);
    }
    return cell;
}

Trajectory JointDist::trajectory_of(std::size_t cell) const {
    if (cell >= num_cells()) throw IndexError("cell index out of range");
    Trajectory t;
    t.actions.resize(static_cast<std::size_t>(horizon()));
    t.observations.resize(static_cast<std::size_t>(horizon()));
    for (int i = 1; i <= horizon(); ++i) {
        t.actions[static_cast<std::size_t>(i - 1)] = table_.digit(cell, table_.variable(0, i));
        t.observations[static_cast<std::size_t>(i - 1)] = table_.digit(cell, table_.variable(1, i));
    }
    return t;
}

double JointDist::probability(const Trajectory& t) const { return probabilities()[cell_of(t)]; }

VariableSet JointDist::variables(std::span<const Coordinate> coords) const {
    VariableSet set = 0;
    for (const auto& c : coords) set |= VariableSet{1} << variable(c);
    return set;
}

JointDist JointDist::swapped() const {
    const Interface sw = iface_.swapped();
    std::vector<double> out(num_cells(), 0.0);
    const std::size_t na = static_cast<std::size_t>(sw.num_actions());
    const std::size_t no = static_cast<std::size_t>(sw.num_observations());
    const auto probs = probabilities();
    for (std::size_t cell = 0; cell < num_cells(); ++cell) {
        const Trajectory t = trajectory_of(cell);
        std::size_t target = 0;
        for (int i = 0; i < horizon(); ++i) {
            target = (target * na + static_cast<std::size_t>(t.observations[static_cast<std::size_t>(i)])) * no +
                     static_cast<std::size_t>(t.actions[static_cast<std::size_t>(i)]);
        }
        out[target] = probs[cell];
    }
    return JointDist(sw, horizon(), std::move(out), flipped(ordering_));
}

JointDist enumerate_joint(const Agent& agent, const Environment& env, int horizon,
                          const EnumerationConfig& config) {
    if (!(agent.interface() == env.interface())) {
        throw ArgumentError("agent and environment do not share an interface");
    }
    if (agent.ordering() != env.ordering()) {
        throw ArgumentError("agent and environment disagree on which role moves first");
    }
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    const std::uint64_t cells = checked_cells(agent.interface(), horizon, config.max_cells);

    std::vector<double> probs(static_cast<std::size_t>(cells), 0.0);
    Enumerator(agent, env, horizon, probs).run();
    return JointDist(agent.interface(), horizon, std::move(probs), agent.ordering());
}

double Marginal::at(std::span<const int> symbols) const {
    if (symbols.size() != radices.size()) throw ArgumentError("marginal lookup arity mismatch");
    std::size_t key = 0;
    for (std::size_t k = 0; k < radices.size(); ++k) {
        if (symbols[k] < 0 || symbols[k] >= radices[k]) throw IndexError("marginal symbol out of range");
        key = key * static_cast<std::size_t>(radices[k]) + static_cast<std::size_t>(symbols[k]);
    }
    return probabilities[key];
}

Marginal marginal(const JointDist& dist, std::span<const Coordinate> coords) {
    Marginal m;
    m.coords.assign(coords.begin(), coords.end());
    std::vector<int> vars;
    std::size_t size = 1;
    VariableSet seen = 0;
    for (const auto& c : coords) {
        const int v = dist.variable(c);
        if ((seen >> v) & 1U) throw ArgumentError("duplicate coordinate in marginal");
        seen |= VariableSet{1} << v;
        vars.push_back(v);
        m.radices.push_back(dist.table().radix(v));
        size *= static_cast<std::size_t>(m.radices.back());
    }
    m.probabilities.assign(size, 0.0);
    const auto probs = dist.probabilities();
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
        std::size_t key = 0;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            key = key * static_cast<std::size_t>(m.radices[k]) +
                  static_cast<std::size_t>(dist.table().digit(cell, vars[k]));
        }
        m.probabilities[key] += probs[cell];
    }
    return m;
}

void write_joint(std::ostream& out, const JointDist& dist) {
    out << "gdi-joint v1 |A|=" << dist.interface().num_actions()
        << " |O|=" << dist.interface().num_observations() << " n=" << dist.horizon() << '\n';
    const auto probs = dist.probabilities();
    for (std::size_t cell = 0; cell < probs.size(); ++cell) {
        if (probs[cell] == 0.0) continue;
        const Trajectory t = dist.trajectory_of(cell);
        for (int i = 0; i < t.horizon(); ++i) {
            if (i > 0) out << ' ';
            out << t.actions[static_cast<std::size_t>(i)] << ' ' << t.observations[static_cast<std::size_t>(i)];
        }
        out << " : " << format_double(probs[cell]) << '\n';
    }
}

JointDist read_joint(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing gdi-joint header");
    int na = 0, no = 0, n = 0;
    if (std::sscanf(header.c_str(), "gdi-joint v1 |A|=%d |O|=%d n=%d", &na, &no, &n) != 3) {
        throw ParseError("malformed header: " + header);
    }
    const Interface iface(na, no);
    if (n < 1) throw ParseError("header horizon must be >= 1");
    const std::uint64_t cells = checked_cells(iface, n, EnumerationConfig{}.max_cells);
    std::vector<double> probs(static_cast<std::size_t>(cells), 0.0);

    // Only the layout matters here; the probabilities are validated at the end.
    const JointDist layout(iface, n, [&] {
        std::vector<double> v(static_cast<std::size_t>(cells), 0.0);
        v[0] = 1.0;
        return v;
    }());

    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": missing ':'");
        std::istringstream syms(line.substr(0, colon));
        Trajectory t;
        int a = 0, o = 0;
        while (syms >> a) {
            if (!(syms >> o)) throw ParseError("line " + std::to_string(line_no) + ": odd symbol count");
            t.actions.push_back(a);
            t.observations.push_back(o);
        }
        if (t.horizon() != n) throw ParseError("line " + std::to_string(line_no) + ": wrong trajectory length");
        double p = 0.0;
        try {
            std::size_t used = 0;
            const std::string rest = line.substr(colon + 1);
            p = std::stod(rest, &used);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": bad probability");
        }
        probs[layout.cell_of(t)] = p;
    }
    return JointDist(iface, n, std::move(probs));
}

}  // namespace gdi
