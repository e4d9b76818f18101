#pragma once

#include <span>
#include <string>
#include <vector>

#include "gdi/joint.hpp"
#include "gdi/table.hpp"

namespace gdi {

// Per-term values in [-kClampTolerance, 0) are roundoff and clamp to zero;
// anything more negative raises NumericalIntegrityError.
inline constexpr double kClampTolerance = 1e-10;

// Inclusive 1-based interval of timesteps.
class Interval {
public:
    Interval(int lo, int hi);

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int length() const { return hi_ - lo_ + 1; }
    friend bool operator==(const Interval&, const Interval&) = default;

private:
    int lo_;
    int hi_;
};

// Forward: source symbol i precedes target symbol i. Delayed: it follows, so
// only strictly earlier source symbols can influence target i.
enum class Arrow { Forward, Delayed };

const char* to_string(Arrow a);

struct MeasureQuery {
    Role source_role;
    Interval source;
    Role target_role;
    Interval target;
    Arrow arrow = Arrow::Forward;
};

struct MeasureTerm {
    int step;
    double bits;
};

struct MeasureReport {
    double value = 0.0;
    std::vector<MeasureTerm> terms;
};

// "value_bits=<v>" then one "term i=<i> bits=<b>" line per term, 17 significant digits.
std::string format_report(const MeasureReport& report);

double clamp_information(double bits);

double entropy(const JointDist& dist, std::span<const Coordinate> coords);
double cmi(const JointDist& dist, std::span<const Coordinate> u, std::span<const Coordinate> v,
           std::span<const Coordinate> w);

// Full-interval directed information over [1:n].
MeasureReport directed_information(const JointDist& dist, Role x, Role y, Arrow arrow);

// Generalized directed information from source[a:b] to target[c:d]:
//   Forward: sum_{i=max(a,c)}^{d}   I(X_{a:min(b,i)};   Y_i | X_{1:a-1}, Y_{1:i-1})
//   Delayed: sum_{i=max(a+1,c)}^{d} I(X_{a:min(b,i-1)}; Y_i | X_{1:a-1}, Y_{1:i-1})
MeasureReport gdi(const JointDist& dist, const MeasureQuery& query);

// Generalized causal entropy
//   sum_{i=max(a,c)}^{d} H(Y_i | Y_{1:i-1}, X_{1:a-1}, X_{a:min(b,i)}).
// Conditioning includes the source's pre-interval past, which is what makes the
// Kramer decomposition below exact for arbitrary intervals.
double causal_entropy(const JointDist& dist, Role target_role, Interval target, Role source_role,
                      Interval source);

struct KramerTerms {
    // H(Y_{k:d} | X_{1:a-1}, Y_{1:k-1}) with k = max(a,c).
    double entropy_term;
    double causal_entropy_term;
};

// Forward arrow only; entropy_term - causal_entropy_term equals the GDI.
KramerTerms kramer_decompose(const JointDist& dist, const MeasureQuery& query);

// Sequence-level forms over any SequenceTable (used for tables that carry more
// than the action/observation pair, e.g. a processed copy of one of them).
namespace sequences {

void validate_interval(const SequenceTable& table, Interval iv);
double cmi(const SequenceTable& table, VariableSet u, VariableSet v, VariableSet w);
MeasureReport gdi(const SequenceTable& table, int source, Interval source_iv, int target,
                  Interval target_iv, Arrow arrow);

}  // namespace sequences

}  // namespace gdi
