#include "gdi/table.hpp"

#include <cmath>
#include <mutex>
#include <string>
#include <unordered_map>

#include "gdi/errors.hpp"

namespace gdi {

struct SequenceTable::EntropyCache {
    std::mutex mutex;
    std::unordered_map<VariableSet, double> bits;
};

SequenceTable::SequenceTable(std::vector<int> alphabets, int horizon,
                             std::vector<double> probabilities)
    : alphabets_(std::move(alphabets)),
      horizon_(horizon),
      probabilities_(std::move(probabilities)),
      cache_(std::make_shared<EntropyCache>()) {
    if (alphabets_.empty()) throw ArgumentError("sequence table needs at least one sequence");
    if (horizon_ < 1) throw ArgumentError("sequence table horizon must be >= 1");
    for (int k : alphabets_) {
        if (k < 1) throw ArgumentError("alphabet sizes must be positive");
    }
    const int nv = num_variables();
    if (nv > 64) throw SizeError("sequence table supports at most 64 variables");

    strides_.assign(static_cast<std::size_t>(nv), 0);
    std::uint64_t cells = 1;
    for (int v = nv - 1; v >= 0; --v) {
        strides_[static_cast<std::size_t>(v)] = cells;
        cells *= static_cast<std::uint64_t>(radix(v));
    }
    if (cells != probabilities_.size()) {
        throw ArgumentError("probability vector has " + std::to_string(probabilities_.size()) +
                            " cells, layout requires " + std::to_string(cells));
    }
}

int SequenceTable::variable(int sequence, int step) const {
    if (sequence < 0 || sequence >= num_sequences() || step < 1 || step > horizon_) {
        throw IndexError("coordinate (sequence " + std::to_string(sequence) + ", step " +
                         std::to_string(step) + ") outside table of horizon " +
                         std::to_string(horizon_));
    }
    return (step - 1) * num_sequences() + sequence;
}

int SequenceTable::digit(std::size_t cell, int var) const {
    return static_cast<int>((cell / strides_[static_cast<std::size_t>(var)]) %
                            static_cast<std::uint64_t>(radix(var)));
}

VariableSet SequenceTable::block(int sequence, int lo, int hi) const {
    VariableSet set = 0;
    for (int t = lo; t <= hi; ++t) set |= VariableSet{1} << variable(sequence, t);
    return set;
}

std::vector<double> SequenceTable::marginal(VariableSet vars) const {
    const int nv = num_variables();
    if (nv < 64 && (vars >> nv) != 0) throw IndexError("variable set exceeds table variables");

    std::vector<std::uint64_t> mult(static_cast<std::size_t>(nv), 0);
    std::size_t size = 1;
    for (int v = nv - 1; v >= 0; --v) {
        if ((vars >> v) & 1U) {
            mult[static_cast<std::size_t>(v)] = size;
            size *= static_cast<std::size_t>(radix(v));
        }
    }

    std::vector<double> out(size, 0.0);
    if (size == 1) {
        for (double p : probabilities_) out[0] += p;
        return out;
    }

    // Odometer over all digits; the key is updated incrementally.
    std::vector<int> digits(static_cast<std::size_t>(nv), 0);
    std::uint64_t key = 0;
    for (double p : probabilities_) {
        out[key] += p;
        for (int v = nv - 1; v >= 0; --v) {
            auto& d = digits[static_cast<std::size_t>(v)];
            const int r = radix(v);
            if (++d < r) {
                key += mult[static_cast<std::size_t>(v)];
                break;
            }
            key -= mult[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(r - 1);
            d = 0;
        }
    }
    return out;
}

double SequenceTable::entropy(VariableSet vars) const {
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->bits.find(vars); it != cache_->bits.end()) return it->second;
    }
    double h = 0.0;
    if (vars != 0) {
        for (double p : marginal(vars)) {
            if (p > 0.0) h -= p * std::log2(p);
        }
    }
    std::lock_guard lock(cache_->mutex);
    cache_->bits.emplace(vars, h);
    return h;
}

}  // namespace gdi
