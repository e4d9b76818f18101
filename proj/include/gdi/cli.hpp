#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace gdi::cli {

// Flag values for one invocation. Unset optionals take command-specific
// defaults (see resolve()).
struct RunConfig {
    std::string command;  // laws | measure | sweep-epsilon | sweep-qinit | corridor

    std::string agent = "constant";
    std::string env = "uniform";
    int actions = 2;
    int observations = 2;

    // Observation interval [a:b] and action interval [c:d]: plasticity is
    // O[a:b] -> A[c:d], empowerment A[c:d] -> O[a:b].
    std::optional<int> a, b, c, d;
    std::optional<std::string> arrow;  // forward | delayed | both

    std::string method = "exact";  // exact | mc
    std::uint64_t samples = 10000;
    int replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 1;
    int grid_points = 21;

    // Q-learner used by the sweeps; the swept parameter overrides its field.
    double epsilon = 0.0;
    double q_init = 0.0;
    double alpha = 0.1;

    int rooms = 5;
    double theta = 0.5;

    int instances = 100;
    std::string horizons = "1,2,3,4";
    std::string sizes = "2x2,2x3,3x2,3x3";
    std::string laws = "all";

    std::uint64_t max_cells = std::uint64_t{1} << 24;
    std::string out;        // empty = stdout
    std::string joint_out;  // measure: also write the exact joint here
};

// Fills command-specific defaults and validates; throws ArgumentError.
RunConfig resolve(RunConfig config);

// "# key=value ..." with every field expanded.
std::string describe(const RunConfig& resolved);

// Runs one command, writing its CSV to `out`. Throws gdi::Error subclasses.
void execute(const RunConfig& config, std::ostream& out);

// execute() with the output file handling and error reporting of the tool:
// returns 0 on success, otherwise prints one diagnostic line to `err` and
// returns a status that identifies the error class.
int run(const RunConfig& config, std::ostream& err);

}  // namespace gdi::cli
