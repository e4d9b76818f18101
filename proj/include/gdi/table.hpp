#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace gdi {

// Bitmask over the variables of a SequenceTable (bit v set <=> variable v selected).
using VariableSet = std::uint64_t;

// Dense probability table over `num_sequences` interleaved sequences of length
// `horizon`. Variable (seq, t) has index (t-1)*num_sequences + seq and the cell
// index is the mixed-radix number whose most significant digit is variable 0,
// so cells enumerate trajectories in lexicographic interleaved order.
//
// Entropies of variable subsets are memoized; the cache is shared between
// copies (the probabilities are immutable) and guarded by a mutex.
class SequenceTable {
public:
    SequenceTable(std::vector<int> alphabets, int horizon, std::vector<double> probabilities);

    int num_sequences() const { return static_cast<int>(alphabets_.size()); }
    int horizon() const { return horizon_; }
    int alphabet(int sequence) const { return alphabets_.at(static_cast<std::size_t>(sequence)); }
    int num_variables() const { return num_sequences() * horizon_; }
    int variable(int sequence, int step) const;
    int radix(int var) const { return alphabets_[static_cast<std::size_t>(var % num_sequences())]; }
    std::uint64_t stride(int var) const { return strides_[static_cast<std::size_t>(var)]; }
    int digit(std::size_t cell, int var) const;

    std::size_t num_cells() const { return probabilities_.size(); }
    std::span<const double> probabilities() const { return probabilities_; }

    // Variables (seq, lo..hi); an empty range (hi < lo) yields the empty set.
    VariableSet block(int sequence, int lo, int hi) const;

    // Marginal over `vars`, indexed mixed-radix with the lowest selected
    // variable most significant. The marginal over the empty set is {1}.
    std::vector<double> marginal(VariableSet vars) const;

    // Shannon entropy in bits of the marginal over `vars` (0 log 0 = 0).
    double entropy(VariableSet vars) const;

private:
    struct EntropyCache;

    std::vector<int> alphabets_;
    int horizon_;
    std::vector<double> probabilities_;
    std::vector<std::uint64_t> strides_;
    std::shared_ptr<EntropyCache> cache_;
};

}  // namespace gdi
