#include "gdi/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "gdi/agency.hpp"
#include "gdi/laws.hpp"
#include "gdi/mc.hpp"
#include "gdi/random.hpp"
#include "gdi/zoo.hpp"

namespace gdi::cli {
namespace {

const char* const kCommands[] = {"laws", "measure", "sweep-epsilon", "sweep-qinit", "corridor"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError("cannot parse " + what + " '" + s + "'");
}

std::vector<double> grid(double lo, double hi, int points) {
    if (points == 1) return {lo};
    std::vector<double> out;
    for (int k = 0; k < points; ++k) out.push_back(lo + (hi - lo) * k / (points - 1));
    return out;
}

AgencyQuery query_of(const RunConfig& c, Arrow arrow) {
    return {Interval(*c.c, *c.d), Interval(*c.a, *c.b), arrow};
}

Arrow arrow_of(const std::string& name) { return name == "forward" ? Arrow::Forward : Arrow::Delayed; }

std::uint64_t row_seed(std::uint64_t seed, int row) {
    const int key[] = {row};
    return hash_sequence(seed, key);
}

struct Value {
    double bits;
    double ci_low;
    double ci_high;
};

// Exact value, or the plug-in estimate with its bootstrap interval.
Value evaluate(const RunConfig& c, const Agent& agent, const Environment& env, const MeasureQuery& q, int horizon,
               std::uint64_t seed) {
    if (c.method == "exact") {
        const double v = gdi(enumerate_joint(agent, env, horizon, EnumerationConfig{c.max_cells}), q).value;
        return {v, v, v};
    }
    const SampleSet samples = sample_trajectories(agent, env, horizon, c.samples, seed);
    const EstimateReport r = bootstrap_ci(samples, q, BootstrapConfig{c.replicates, c.level});
    return {r.estimate_bits, r.ci_low, r.ci_high};
}

zoo::QLearnerSpec learner(const RunConfig& c) {
    zoo::QLearnerSpec s;
    s.epsilon = c.epsilon;
    s.q_init = c.q_init;
    s.alpha = c.alpha;
    return s;
}

void run_laws(const RunConfig& c, std::ostream& out) {
    LawSuiteConfig suite;
    for (int k = 0; k < c.instances; ++k) suite.seeds.push_back(c.seed + static_cast<std::uint64_t>(k));
    for (const auto& h : split(c.horizons, ',')) suite.horizons.push_back(parse_int(h, "horizon"));
    for (const auto& s : split(c.sizes, ',')) {
        const auto parts = split(s, 'x');
        if (parts.size() != 2) throw ArgumentError("size '" + s + "' is not of the form <|A|>x<|O|>");
        suite.sizes.emplace_back(parse_int(parts[0], "size"), parse_int(parts[1], "size"));
        Interface(suite.sizes.back().first, suite.sizes.back().second);  // validates
    }
    if (c.laws != "all") {
        suite.laws.clear();
        for (const auto& name : split(c.laws, ',')) {
            const auto law = parse_law(name);
            if (!law) throw ArgumentError("unknown law '" + name + "'");
            suite.laws.push_back(*law);
        }
    }
    write_law_csv_header(out);
    for (const auto& row : run_law_suite(suite)) write_law_csv_row(out, row);
}

void run_measure(const RunConfig& c, std::ostream& out) {
    const Interface iface = zoo::implied_interface(c.agent, c.env, Interface(c.actions, c.observations));
    const AgencyQuery q = query_of(c, arrow_of(*c.arrow));
    const int n = q.horizon();
    const Agent agent = zoo::make_agent(c.agent, iface, n);
    const Environment env = zoo::make_env(c.env, iface, n);

    if (!c.joint_out.empty()) {
        std::ofstream joint(c.joint_out);
        if (!joint) throw ArgumentError("cannot write " + c.joint_out);
        write_joint(joint, enumerate_joint(agent, env, n, EnumerationConfig{c.max_cells}));
    }

    TensionReport r{};
    const Value p = evaluate(c, agent, env, q.plasticity_query(), n, row_seed(c.seed, 0));
    const Value e = evaluate(c, agent, env, q.empowerment_query(), n, row_seed(c.seed, 1));
    r.plasticity_bits = p.bits;
    r.empowerment_bits = e.bits;
    r.bound_bits = tension_bound(iface, q);
    r.slack_bits = r.bound_bits - r.plasticity_bits - r.empowerment_bits;
    write_tension_csv_header(out);
    write_tension_csv_row(out, r);
}

void run_sweep_epsilon(const RunConfig& c, std::ostream& out) {
    const Interface iface(c.actions, c.observations);
    std::vector<Arrow> arrows;
    if (*c.arrow == "both" || *c.arrow == "delayed") arrows.push_back(Arrow::Delayed);
    if (*c.arrow == "both" || *c.arrow == "forward") arrows.push_back(Arrow::Forward);

    out << "epsilon,arrow,plasticity_bits,ci_low,ci_high,method,seed\n";
    int row = 0;
    for (double eps : grid(0.0, 1.0, c.grid_points)) {
        RunConfig point = c;
        point.epsilon = eps;
        const Agent agent = zoo::q_learning_agent(iface, learner(point));
        for (Arrow arrow : arrows) {
            const AgencyQuery q = query_of(c, arrow);
            const Environment env = zoo::make_env(c.env, iface, q.horizon());
            const Value v = evaluate(c, agent, env, q.plasticity_query(), q.horizon(), row_seed(c.seed, row++));
            out << fmt(eps) << ',' << to_string(arrow) << ',' << fmt(v.bits) << ',' << fmt(v.ci_low) << ','
                << fmt(v.ci_high) << ',' << c.method << ',' << c.seed << '\n';
        }
    }
}

void run_sweep_qinit(const RunConfig& c, std::ostream& out) {
    const Interface iface(c.actions, c.observations);
    const AgencyQuery q = query_of(c, arrow_of(*c.arrow));
    const Environment env = zoo::make_env(c.env, iface, q.horizon());
    const double bound = tension_bound(iface, q);

    out << "q_init,plasticity_bits,empowerment_bits,sum_bits,bound_bits,method,seed\n";
    int row = 0;
    for (double q0 : grid(-1.0, 1.0, c.grid_points)) {
        RunConfig point = c;
        point.q_init = q0;
        const Agent agent = zoo::q_learning_agent(iface, learner(point));
        const double p = evaluate(c, agent, env, q.plasticity_query(), q.horizon(), row_seed(c.seed, row++)).bits;
        const double e = evaluate(c, agent, env, q.empowerment_query(), q.horizon(), row_seed(c.seed, row++)).bits;
        out << fmt(q0) << ',' << fmt(p) << ',' << fmt(e) << ',' << fmt(p + e) << ',' << fmt(bound) << ','
            << c.method << ',' << c.seed << '\n';
    }
}

void run_corridor(const RunConfig& c, std::ostream& out) {
    const AgencyQuery q = query_of(c, arrow_of(*c.arrow));
    out << "room,plasticity_bits,empowerment_bits\n";
    int row = 0;
    for (int room = 0; room < c.rooms; ++room) {
        const zoo::CorridorSpec spec{c.rooms, c.theta, room};
        const Agent agent = zoo::corridor_stay_agent(spec, room);
        const Environment env = zoo::corridor_env(spec);
        const double p = evaluate(c, agent, env, q.plasticity_query(), q.horizon(), row_seed(c.seed, row++)).bits;
        const double e = evaluate(c, agent, env, q.empowerment_query(), q.horizon(), row_seed(c.seed, row++)).bits;
        out << room << ',' << fmt(p) << ',' << fmt(e) << '\n';
    }
}

}  // namespace

RunConfig resolve(RunConfig c) {
    bool known = false;
    for (const char* name : kCommands) known = known || c.command == name;
    if (!known) throw ArgumentError("unknown command '" + c.command + "'");

    const bool corridor = c.command == "corridor";
    if (!c.a) c.a = 1;
    if (!c.b) c.b = corridor ? 4 : 3;
    if (!c.c) c.c = corridor ? 1 : 2;
    if (!c.d) c.d = corridor ? 4 : 5;
    if (!c.arrow) c.arrow = c.command == "sweep-epsilon" ? "both" : "delayed";
    if (c.command == "sweep-epsilon" || c.command == "sweep-qinit") {
        if (c.agent != "constant" && c.agent != "qlearn") {
            throw ArgumentError("sweeps always run the Q-learner; configure it with --epsilon, --q-init and --alpha");
        }
        c.agent = "qlearn";
        if (c.env == "uniform") c.env = "bandit";
    }
    if (c.command == "corridor") {
        c.agent = "stay";
        c.env = "corridor";
    }

    if (*c.arrow != "forward" && *c.arrow != "delayed" && *c.arrow != "both") {
        throw ArgumentError("arrow must be forward, delayed or both");
    }
    if (*c.arrow == "both" && c.command != "sweep-epsilon") {
        throw ArgumentError("arrow 'both' is only meaningful for sweep-epsilon");
    }
    if (c.method != "exact" && c.method != "mc") throw ArgumentError("method must be exact or mc");
    Interval(*c.a, *c.b);
    Interval(*c.c, *c.d);
    if (c.grid_points < 1) throw ArgumentError("grid-points must be >= 1");
    if (c.samples < 1) throw ArgumentError("samples must be >= 1");
    if (c.instances < 0) throw ArgumentError("instances must be >= 0");
    if (c.method == "mc") {
        if (c.replicates < kMinReplicates) {
            throw ArgumentError("replicates must be >= " + std::to_string(kMinReplicates));
        }
        if (!(c.level > 0.0 && c.level < 1.0)) throw ArgumentError("level must lie in (0,1)");
    }
    if (c.command == "corridor") {
        c.actions = 3;
        c.observations = 2;
    }
    Interface(c.actions, c.observations);
    return c;
}

std::string describe(const RunConfig& c) {
    std::ostringstream s;
    s << "# command=" << c.command << " agent=" << c.agent << " env=" << c.env << " actions=" << c.actions
      << " observations=" << c.observations << " a=" << c.a.value_or(0) << " b=" << c.b.value_or(0)
      << " c=" << c.c.value_or(0) << " d=" << c.d.value_or(0) << " arrow=" << c.arrow.value_or("")
      << " method=" << c.method << " samples=" << c.samples << " replicates=" << c.replicates
      << " level=" << fmt(c.level) << " seed=" << c.seed << " grid_points=" << c.grid_points
      << " epsilon=" << fmt(c.epsilon) << " q_init=" << fmt(c.q_init) << " alpha=" << fmt(c.alpha)
      << " rooms=" << c.rooms << " theta=" << fmt(c.theta) << " instances=" << c.instances
      << " horizons=" << c.horizons << " sizes=" << c.sizes << " laws=" << c.laws << " max_cells=" << c.max_cells
      << " sample_generator=" << kSampleGenerator;
    return s.str();
}

void execute(const RunConfig& config, std::ostream& out) {
    const RunConfig c = resolve(config);
    // Render into a buffer so a failure never leaves a partial CSV behind.
    std::ostringstream body;
    body << describe(c) << '\n';
    if (c.command == "laws") run_laws(c, body);
    if (c.command == "measure") run_measure(c, body);
    if (c.command == "sweep-epsilon") run_sweep_epsilon(c, body);
    if (c.command == "sweep-qinit") run_sweep_qinit(c, body);
    if (c.command == "corridor") run_corridor(c, body);
    out << body.str();
}

int run(const RunConfig& config, std::ostream& err) {
    try {
        if (config.out.empty()) {
            execute(config, std::cout);
        } else {
            std::ostringstream buffer;
            execute(config, buffer);
            std::ofstream file(config.out);
            if (!file) throw ArgumentError("cannot write " + config.out);
            file << buffer.str();
        }
        return 0;
    } catch (const ArgumentError& e) {
        err << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const SizeError& e) {
        err << "size error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 4;
    } catch (const IndexError& e) {
        err << "index error: " << e.what() << '\n';
        return 5;
    } catch (const ContractViolation& e) {
        err << "contract violation: " << e.what() << '\n';
        return 6;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace gdi::cli
