#include "gdi/measures.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "gdi/errors.hpp"

namespace gdi {

Interval::Interval(int lo, int hi) : lo_(lo), hi_(hi) {
    if (lo < 1 || hi < lo) {
        throw ArgumentError("invalid interval [" + std::to_string(lo) + ":" + std::to_string(hi) + "]");
    }
}

const char* to_string(Arrow a) { return a == Arrow::Forward ? "forward" : "delayed"; }

std::string format_report(const MeasureReport& report) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "value_bits=%.17g\n", report.value);
    std::string out = buf;
    for (const auto& t : report.terms) {
        std::snprintf(buf, sizeof buf, "term i=%d bits=%.17g\n", t.step, t.bits);
        out += buf;
    }
    return out;
}

double clamp_information(double bits) {
    if (bits >= 0.0) return bits;
    if (bits >= -kClampTolerance) return 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", bits);
    throw NumericalIntegrityError(std::string("information term ") + buf +
                                  " bits is below the roundoff tolerance");
}

namespace sequences {

void validate_interval(const SequenceTable& table, Interval iv) {
    if (iv.hi() > table.horizon()) {
        throw ArgumentError("interval [" + std::to_string(iv.lo()) + ":" + std::to_string(iv.hi()) +
                            "] exceeds horizon " + std::to_string(table.horizon()));
    }
}

double cmi(const SequenceTable& table, VariableSet u, VariableSet v, VariableSet w) {
    if ((u & v) != 0 || (u & w) != 0 || (v & w) != 0) {
        throw ArgumentError("cmi coordinate sets must be pairwise disjoint");
    }
    if (u == 0 || v == 0) return 0.0;
    const double raw = table.entropy(u | w) + table.entropy(v | w) - table.entropy(u | v | w) -
                       table.entropy(w);
    return clamp_information(raw);
}

MeasureReport gdi(const SequenceTable& table, int source, Interval source_iv, int target,
                  Interval target_iv, Arrow arrow) {
    if (source == target) throw ArgumentError("gdi source and target must be different sequences");
    validate_interval(table, source_iv);
    validate_interval(table, target_iv);

    const int a = source_iv.lo();
    const int b = source_iv.hi();
    const int c = target_iv.lo();
    const int d = target_iv.hi();
    const int lag = arrow == Arrow::Forward ? 0 : 1;

    MeasureReport report;
    const VariableSet source_past = table.block(source, 1, a - 1);
    for (int i = std::max(a + lag, c); i <= d; ++i) {
        const VariableSet block = table.block(source, a, std::min(b, i - lag));
        const VariableSet y = table.block(target, i, i);
        const VariableSet given = source_past | table.block(target, 1, i - 1);
        const double bits = cmi(table, block, y, given);
        report.terms.push_back({i, bits});
        report.value += bits;
    }
    return report;
}

}  // namespace sequences

namespace {

void require_opposite(Role source, Role target) {
    if (source == target) throw ArgumentError("source and target roles must differ");
}

}  // namespace

double entropy(const JointDist& dist, std::span<const Coordinate> coords) {
    VariableSet set = 0;
    for (const auto& c : coords) {
        const VariableSet bit = VariableSet{1} << dist.variable(c);
        if (set & bit) throw ArgumentError("duplicate coordinate in entropy");
        set |= bit;
    }
    return dist.table().entropy(set);
}

double cmi(const JointDist& dist, std::span<const Coordinate> u, std::span<const Coordinate> v,
           std::span<const Coordinate> w) {
    const auto to_set = [&](std::span<const Coordinate> coords) {
        VariableSet set = 0;
        for (const auto& c : coords) {
            const VariableSet bit = VariableSet{1} << dist.variable(c);
            if (set & bit) throw ArgumentError("duplicate coordinate within a cmi argument");
            set |= bit;
        }
        return set;
    };
    return sequences::cmi(dist.table(), to_set(u), to_set(v), to_set(w));
}

MeasureReport directed_information(const JointDist& dist, Role x, Role y, Arrow arrow) {
    const Interval full(1, dist.horizon());
    return gdi(dist, MeasureQuery{x, full, y, full, arrow});
}

MeasureReport gdi(const JointDist& dist, const MeasureQuery& q) {
    require_opposite(q.source_role, q.target_role);
    return sequences::gdi(dist.table(), JointDist::sequence_of(q.source_role), q.source,
                          JointDist::sequence_of(q.target_role), q.target, q.arrow);
}

double causal_entropy(const JointDist& dist, Role target_role, Interval target, Role source_role,
                      Interval source) {
    require_opposite(source_role, target_role);
    const auto& table = dist.table();
    sequences::validate_interval(table, source);
    sequences::validate_interval(table, target);
    const int xs = JointDist::sequence_of(source_role);
    const int ys = JointDist::sequence_of(target_role);

    double total = 0.0;
    for (int i = std::max(source.lo(), target.lo()); i <= target.hi(); ++i) {
        const VariableSet given = table.block(ys, 1, i - 1) | table.block(xs, 1, std::min(source.hi(), i));
        const VariableSet y = table.block(ys, i, i);
        total += clamp_information(table.entropy(y | given) - table.entropy(given));
    }
    return total;
}

KramerTerms kramer_decompose(const JointDist& dist, const MeasureQuery& q) {
    if (q.arrow != Arrow::Forward) {
        throw UnsupportedVariantError("the Kramer decomposition is defined for the forward arrow only");
    }
    require_opposite(q.source_role, q.target_role);
    const auto& table = dist.table();
    sequences::validate_interval(table, q.source);
    sequences::validate_interval(table, q.target);
    const int xs = JointDist::sequence_of(q.source_role);
    const int ys = JointDist::sequence_of(q.target_role);

    const int k = std::max(q.source.lo(), q.target.lo());
    KramerTerms out{0.0, causal_entropy(dist, q.target_role, q.target, q.source_role, q.source)};
    if (k <= q.target.hi()) {
        const VariableSet given = table.block(xs, 1, q.source.lo() - 1) | table.block(ys, 1, k - 1);
        const VariableSet y = table.block(ys, k, q.target.hi());
        out.entropy_term = clamp_information(table.entropy(y | given) - table.entropy(given));
    }
    return out;
}

}  // namespace gdi
