#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gdi/joint.hpp"
#include "gdi/measures.hpp"
#include "gdi/random.hpp"

namespace gdi {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kZeroTolerance = 1e-12;

// Where a check was evaluated. Interval fields are 0 when a check does not use them.
struct LawInstance {
    std::uint64_t seed = 0;
    int horizon = 0;
    int num_actions = 0;
    int num_observations = 0;
};

struct LawReport {
    std::string law;
    LawInstance instance;
    int a = 0, b = 0, c = 0, d = 0;
    std::string arrow;
    // Absolute identity error, or the amount by which an inequality is violated (0 if it holds).
    double residual_bits = 0.0;
    bool pass = false;
};

// X is `source_role`, Y the other role:
//   cmi(X_{a:b}; Y_{c:d} | X_{1:a-1}, Y_{1:c-1}) = gdi(X_{a:b} -> Y_{c:d}) + gdi(Y_{c:d} ~> X_{a:b})
LawReport check_conservation(const JointDist& dist, Role source_role, Interval source, Interval target);
LawReport check_di_conservation(const JointDist& dist, Role source_role);

// Requires a > d (forward) or a >= d (delayed); otherwise ArgumentError.
LawReport check_temporal_consistency(const JointDist& dist, const MeasureQuery& query);

enum class SplitSide { Source, Target };
// Splits the chosen interval into [lo:split] and [split+1:hi]; lo <= split < hi.
LawReport check_interval_summation(const JointDist& dist, const MeasureQuery& query, SplitSide side,
                                   int split);

// 0 <= gdi <= cmi(X_{a:b}; Y_{c:d} | X_{1:a-1}, Y_{1:c-1}).
LawReport check_bounds(const JointDist& dist, const MeasureQuery& query);

// Three-sequence table (A, O, Z) where Z_i is drawn from Y_i by a memoryless
// channel; Y is the sequence of role `processed`.
struct ProcessedJoint {
    SequenceTable table;
    Role processed;
    LawInstance instance;
};

inline constexpr int kActionSequence = 0;
inline constexpr int kObservationSequence = 1;
inline constexpr int kProcessedSequence = 2;

ProcessedJoint extend_with_channel(const JointDist& dist, Role processed, const Channel& channel);

// Throws ArgumentError unless the table is a memoryless extension:
// Z_i independent of every other variable up to step i (and of all A, O) given Y_i.
void validate_processed(const ProcessedJoint& ext);

// gdi(X -> Y) >= gdi(X -> Z) - 1e-10 where Y is ext.processed and X the other role.
LawReport check_dpi(const ProcessedJoint& ext, Interval source, Interval target, Arrow arrow);

// --- randomized suite ---------------------------------------------------------

enum class Law { Conservation, DiConservation, TemporalConsistency, IntervalSummation, Dpi, Bounds };
const char* to_string(Law law);
std::optional<Law> parse_law(const std::string& name);
std::vector<Law> all_laws();

struct LawSuiteConfig {
    std::vector<std::uint64_t> seeds;
    std::vector<int> horizons;
    std::vector<std::pair<int, int>> sizes;  // (|A|, |O|)
    std::vector<Law> laws = all_laws();
};

// Random pair drawn for one instance; identical for every law.
std::pair<Agent, Environment> random_pair(const LawInstance& instance);
JointDist random_joint(const LawInstance& instance);

// Every applicable interval configuration for one law on one instance; the
// returned row is the worst case (largest residual, first in sweep order on ties).
LawReport run_law(Law law, const LawInstance& instance);

// Rows ordered by (seed, horizon, size, law) in configuration order.
std::vector<LawReport> run_law_suite(const LawSuiteConfig& config);

void write_law_csv_header(std::ostream& out);
void write_law_csv_row(std::ostream& out, const LawReport& report);

}  // namespace gdi
