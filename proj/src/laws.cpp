#include "gdi/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gdi {
namespace {

std::vector<Interval> all_intervals(int horizon) {
    std::vector<Interval> out;
    for (int lo = 1; lo <= horizon; ++lo) {
        for (int hi = lo; hi <= horizon; ++hi) out.emplace_back(lo, hi);
    }
    return out;
}

LawInstance describe(const JointDist& dist) {
    return {0, dist.horizon(), dist.interface().num_actions(), dist.interface().num_observations()};
}

LawReport make_report(const char* law, const JointDist& dist, Interval source, Interval target,
                      const char* arrow, double residual, bool pass) {
    return {law, describe(dist), source.lo(), source.hi(), target.lo(), target.hi(), arrow, residual, pass};
}

double gdi_value(const JointDist& dist, Role source_role, Interval source, Interval target, Arrow arrow) {
    return gdi(dist, MeasureQuery{source_role, source, opposite(source_role), target, arrow}).value;
}

// cmi(X_{a:b}; Y_{c:d} | X_{1:a-1}, Y_{1:c-1}) on a sequence table.
double interval_cmi(const SequenceTable& t, int xs, Interval x, int ys, Interval y) {
    return sequences::cmi(t, t.block(xs, x.lo(), x.hi()), t.block(ys, y.lo(), y.hi()),
                          t.block(xs, 1, x.lo() - 1) | t.block(ys, 1, y.lo() - 1));
}

// Keeps the first report with the largest residual; a failing report always wins over a passing one.
void keep_worst(std::optional<LawReport>& worst, LawReport candidate) {
    if (!worst || (!candidate.pass && worst->pass) ||
        (candidate.pass == worst->pass && candidate.residual_bits > worst->residual_bits)) {
        worst = std::move(candidate);
    }
}

}  // namespace

LawReport check_conservation(const JointDist& dist, Role source_role, Interval source, Interval target) {
    const auto& t = dist.table();
    sequences::validate_interval(t, source);
    sequences::validate_interval(t, target);
    const Role target_role = opposite(source_role);
    const double total = interval_cmi(t, JointDist::sequence_of(source_role), source,
                                      JointDist::sequence_of(target_role), target);
    const double forward = gdi_value(dist, source_role, source, target, Arrow::Forward);
    const double backward = gdi_value(dist, target_role, target, source, Arrow::Delayed);
    const double residual = std::abs(total - forward - backward);
    return make_report("conservation", dist, source, target, "forward+delayed", residual,
                       residual < kIdentityTolerance);
}

LawReport check_di_conservation(const JointDist& dist, Role source_role) {
    const Interval full(1, dist.horizon());
    LawReport r = check_conservation(dist, source_role, full, full);
    r.law = "di_conservation";
    return r;
}

LawReport check_temporal_consistency(const JointDist& dist, const MeasureQuery& q) {
    const bool late = q.arrow == Arrow::Forward ? q.source.lo() > q.target.hi() : q.source.lo() >= q.target.hi();
    if (!late) {
        throw ArgumentError("temporal consistency needs a source starting after the target ends (a > d, or a >= d "
                            "for the delayed arrow)");
    }
    const double value = gdi(dist, q).value;
    return make_report("temporal_consistency", dist, q.source, q.target, to_string(q.arrow), value,
                       value < kZeroTolerance);
}

LawReport check_interval_summation(const JointDist& dist, const MeasureQuery& q, SplitSide side, int split) {
    const Interval& cut = side == SplitSide::Source ? q.source : q.target;
    if (split < cut.lo() || split >= cut.hi()) {
        throw ArgumentError("split point " + std::to_string(split) + " is not strictly inside the interval");
    }
    const double whole = gdi(dist, q).value;
    MeasureQuery left = q;
    MeasureQuery right = q;
    if (side == SplitSide::Source) {
        left.source = Interval(cut.lo(), split);
        right.source = Interval(split + 1, cut.hi());
    } else {
        left.target = Interval(cut.lo(), split);
        right.target = Interval(split + 1, cut.hi());
    }
    const double residual = std::abs(whole - gdi(dist, left).value - gdi(dist, right).value);
    return make_report("interval_summation", dist, q.source, q.target, to_string(q.arrow), residual,
                       residual < kIdentityTolerance);
}

LawReport check_bounds(const JointDist& dist, const MeasureQuery& q) {
    // gdi() itself raises NumericalIntegrityError on any term below -1e-10,
    // so the lower bound is enforced by evaluating it.
    const double value = gdi(dist, q).value;
    const double bound = interval_cmi(dist.table(), JointDist::sequence_of(q.source_role), q.source,
                                      JointDist::sequence_of(q.target_role), q.target);
    const double excess = std::max(0.0, value - bound);
    return make_report("bounds", dist, q.source, q.target, to_string(q.arrow), excess,
                       value >= -kIdentityTolerance && excess <= kIdentityTolerance);
}

ProcessedJoint extend_with_channel(const JointDist& dist, Role processed, const Channel& channel) {
    const int ny = dist.interface().alphabet(processed);
    if (static_cast<int>(channel.size()) != ny) throw ArgumentError("channel needs one row per symbol of Y");
    const std::size_t nz = channel.front().size();
    if (nz < 2) throw ArgumentError("channel output alphabet must have at least 2 symbols");
    for (const auto& row : channel) {
        if (row.size() != nz) throw ArgumentError("channel rows differ in length");
        double total = 0.0;
        for (double p : row) {
            if (!(p >= 0.0)) throw ArgumentError("channel has a negative entry");
            total += p;
        }
        if (std::abs(total - 1.0) > kPolicyTolerance) throw ArgumentError("channel row does not sum to 1");
    }

    const int n = dist.horizon();
    const std::size_t na = static_cast<std::size_t>(dist.interface().num_actions());
    const std::size_t no = static_cast<std::size_t>(dist.interface().num_observations());
    std::size_t z_codes = 1;
    for (int i = 0; i < n; ++i) z_codes *= nz;

    std::vector<double> probs(dist.num_cells() * z_codes, 0.0);
    std::vector<int> z(static_cast<std::size_t>(n));
    const auto base = dist.probabilities();
    for (std::size_t cell = 0; cell < base.size(); ++cell) {
        if (base[cell] == 0.0) continue;
        const Trajectory t = dist.trajectory_of(cell);
        const auto& y = processed == Role::Action ? t.actions : t.observations;
        for (std::size_t code = 0; code < z_codes; ++code) {
            std::size_t rest = code;
            for (int i = n - 1; i >= 0; --i) {
                z[static_cast<std::size_t>(i)] = static_cast<int>(rest % nz);
                rest /= nz;
            }
            double p = base[cell];
            std::size_t index = 0;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
                p *= channel[static_cast<std::size_t>(y[i])][static_cast<std::size_t>(z[i])];
                index = ((index * na + static_cast<std::size_t>(t.actions[i])) * no +
                         static_cast<std::size_t>(t.observations[i])) * nz + static_cast<std::size_t>(z[i]);
            }
            probs[index] = p;
        }
    }
    SequenceTable table({static_cast<int>(na), static_cast<int>(no), static_cast<int>(nz)}, n, std::move(probs));
    return {std::move(table), processed, describe(dist)};
}

void validate_processed(const ProcessedJoint& ext) {
    const auto& t = ext.table;
    if (t.num_sequences() != 3) throw ArgumentError("processed joint must carry exactly three sequences");
    const int ys = JointDist::sequence_of(ext.processed);
    const VariableSet everything = t.num_variables() == 64 ? ~VariableSet{0}
                                                           : (VariableSet{1} << t.num_variables()) - 1;
    for (int i = 1; i <= t.horizon(); ++i) {
        const VariableSet zi = t.block(kProcessedSequence, i, i);
        const VariableSet yi = t.block(ys, i, i);
        const VariableSet others = everything & ~zi & ~yi;
        const double raw = t.entropy(zi | yi) + t.entropy(others | yi) - t.entropy(everything) - t.entropy(yi);
        if (raw > kIdentityTolerance) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3g", raw);
            throw ArgumentError("Z_" + std::to_string(i) + " is not a memoryless function of Y_" + std::to_string(i) +
                                " (residual dependence " + buf + " bits)");
        }
    }
}

LawReport check_dpi(const ProcessedJoint& ext, Interval source, Interval target, Arrow arrow) {
    validate_processed(ext);
    const int ys = JointDist::sequence_of(ext.processed);
    const int xs = JointDist::sequence_of(opposite(ext.processed));
    const double direct = sequences::gdi(ext.table, xs, source, ys, target, arrow).value;
    const double processed = sequences::gdi(ext.table, xs, source, kProcessedSequence, target, arrow).value;
    const double deficit = std::max(0.0, processed - direct);
    return {"dpi", ext.instance, source.lo(), source.hi(), target.lo(), target.hi(), to_string(arrow), deficit,
            deficit <= kIdentityTolerance};
}

// --- suite -------------------------------------------------------------------

const char* to_string(Law law) {
    switch (law) {
        case Law::Conservation: return "conservation";
        case Law::DiConservation: return "di_conservation";
        case Law::TemporalConsistency: return "temporal_consistency";
        case Law::IntervalSummation: return "interval_summation";
        case Law::Dpi: return "dpi";
        case Law::Bounds: return "bounds";
    }
    return "?";
}

std::vector<Law> all_laws() {
    return {Law::Conservation, Law::DiConservation, Law::TemporalConsistency,
            Law::IntervalSummation, Law::Dpi, Law::Bounds};
}

std::optional<Law> parse_law(const std::string& name) {
    for (Law law : all_laws()) {
        if (name == to_string(law)) return law;
    }
    return std::nullopt;
}

namespace {

std::uint64_t instance_key(const LawInstance& inst) {
    const int fields[] = {inst.horizon, inst.num_actions, inst.num_observations};
    return hash_sequence(inst.seed, fields);
}

}  // namespace

std::pair<Agent, Environment> random_pair(const LawInstance& instance) {
    const Interface iface(instance.num_actions, instance.num_observations);
    const std::uint64_t key = instance_key(instance);
    return {random_agent(iface, mix64(key ^ 1)), random_env(iface, mix64(key ^ 2))};
}

JointDist random_joint(const LawInstance& instance) {
    const auto [agent, env] = random_pair(instance);
    return enumerate_joint(agent, env, instance.horizon);
}

LawReport run_law(Law law, const LawInstance& instance) {
    const JointDist dist = random_joint(instance);
    const auto intervals = all_intervals(instance.horizon);
    const Role roles[] = {Role::Action, Role::Observation};
    const Arrow arrows[] = {Arrow::Forward, Arrow::Delayed};
    std::optional<LawReport> worst;

    switch (law) {
        case Law::Conservation:
            for (Role x : roles)
                for (const auto& s : intervals)
                    for (const auto& t : intervals) keep_worst(worst, check_conservation(dist, x, s, t));
            break;
        case Law::DiConservation:
            for (Role x : roles) keep_worst(worst, check_di_conservation(dist, x));
            break;
        case Law::TemporalConsistency:
            for (Role x : roles)
                for (Arrow arrow : arrows)
                    for (const auto& s : intervals)
                        for (const auto& t : intervals) {
                            const bool late = arrow == Arrow::Forward ? s.lo() > t.hi() : s.lo() >= t.hi();
                            if (late) {
                                keep_worst(worst, check_temporal_consistency(
                                                      dist, MeasureQuery{x, s, opposite(x), t, arrow}));
                            }
                        }
            break;
        case Law::IntervalSummation:
            for (Role x : roles)
                for (Arrow arrow : arrows)
                    for (const auto& s : intervals)
                        for (const auto& t : intervals) {
                            const MeasureQuery q{x, s, opposite(x), t, arrow};
                            for (int k = s.lo(); k < s.hi(); ++k)
                                keep_worst(worst, check_interval_summation(dist, q, SplitSide::Source, k));
                            for (int k = t.lo(); k < t.hi(); ++k)
                                keep_worst(worst, check_interval_summation(dist, q, SplitSide::Target, k));
                        }
            break;
        case Law::Dpi:
            for (Role y : roles) {
                const int ny = dist.interface().alphabet(y);
                const auto ext = extend_with_channel(
                    dist, y, random_channel(ny, ny, mix64(instance_key(instance) ^ (y == Role::Action ? 3 : 4))));
                for (Arrow arrow : arrows)
                    for (const auto& s : intervals)
                        for (const auto& t : intervals) keep_worst(worst, check_dpi(ext, s, t, arrow));
            }
            break;
        case Law::Bounds:
            for (Role x : roles)
                for (Arrow arrow : arrows)
                    for (const auto& s : intervals)
                        for (const auto& t : intervals)
                            keep_worst(worst, check_bounds(dist, MeasureQuery{x, s, opposite(x), t, arrow}));
            break;
    }

    LawReport out = worst ? *worst : LawReport{to_string(law), instance, 0, 0, 0, 0, "none", 0.0, true};
    out.law = to_string(law);
    out.instance = instance;
    return out;
}

std::vector<LawReport> run_law_suite(const LawSuiteConfig& config) {
    std::vector<LawReport> rows;
    for (std::uint64_t seed : config.seeds)
        for (int horizon : config.horizons)
            for (const auto& [na, no] : config.sizes)
                for (Law law : config.laws) rows.push_back(run_law(law, LawInstance{seed, horizon, na, no}));
    return rows;
}

void write_law_csv_header(std::ostream& out) {
    out << "law,seed,horizon,na,no,a,b,c,d,arrow,residual_bits,pass\n";
}

void write_law_csv_row(std::ostream& out, const LawReport& r) {
    char residual[40];
    std::snprintf(residual, sizeof residual, "%.17g", r.residual_bits);
    out << r.law << ',' << r.instance.seed << ',' << r.instance.horizon << ',' << r.instance.num_actions << ','
        << r.instance.num_observations << ',' << r.a << ',' << r.b << ',' << r.c << ',' << r.d << ',' << r.arrow
        << ',' << residual << ',' << (r.pass ? "true" : "false") << '\n';
}

}  // namespace gdi
