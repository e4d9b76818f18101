// Command-line front end; all semantics live in gdi::cli.
#include <iostream>

#include "CLI11.hpp"
#include "gdi/cli.hpp"

int main(int argc, char** argv) {
    gdi::cli::RunConfig config;
    CLI::App app{"Exact and Monte Carlo generalized directed information, plasticity and empowerment."};
    app.set_config("--config", "", "Read 'key = value' lines; keys are flag names, flags given on the command line win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("command", config.command, "laws | measure | sweep-epsilon | sweep-qinit | corridor")
        ->required()
        ->check(CLI::IsMember({"laws", "measure", "sweep-epsilon", "sweep-qinit", "corridor"}));

    app.add_option("--agent", config.agent, "Zoo agent, e.g. qlearn(eps=0.1,q0=0,alpha=0.1)");
    app.add_option("--env", config.env, "Zoo environment, e.g. bandit(p0=0.4,p1=0.7)");
    app.add_option("--actions", config.actions, "|A|");
    app.add_option("--observations", config.observations, "|O|");
    app.add_option("--a", config.a, "Observation interval start");
    app.add_option("--b", config.b, "Observation interval end");
    app.add_option("--c", config.c, "Action interval start");
    app.add_option("--d", config.d, "Action interval end");
    app.add_option("--arrow", config.arrow, "forward | delayed | both (sweep-epsilon)");
    app.add_option("--method", config.method, "exact | mc");
    app.add_option("--samples", config.samples, "Monte Carlo trajectories per estimate");
    app.add_option("--replicates", config.replicates, "Bootstrap replicates (>= 100)");
    app.add_option("--level", config.level, "Bootstrap confidence level");
    app.add_option("--seed", config.seed, "Base seed");
    app.add_option("--grid-points", config.grid_points, "Points per sweep grid");
    app.add_option("--epsilon", config.epsilon, "Q-learner epsilon (sweep-qinit)");
    app.add_option("--q-init", config.q_init, "Q-learner initial value (sweep-epsilon)");
    app.add_option("--alpha", config.alpha, "Q-learner step size");
    app.add_option("--rooms", config.rooms, "Corridor rooms");
    app.add_option("--theta", config.theta, "Corridor light flip probability");
    app.add_option("--instances", config.instances, "Law suite: seeds per (horizon, size)");
    app.add_option("--horizons", config.horizons, "Law suite horizons, comma separated");
    app.add_option("--sizes", config.sizes, "Law suite interfaces, e.g. 2x2,3x2");
    app.add_option("--laws", config.laws, "Law suite: 'all' or a comma separated subset");
    app.add_option("--max-cells", config.max_cells, "Enumeration cap in trajectory cells");
    app.add_option("--out", config.out, "Output CSV path (default stdout)");
    app.add_option("--joint-out", config.joint_out, "measure: also write the exact joint table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return gdi::cli::run(config, std::cerr);
}
