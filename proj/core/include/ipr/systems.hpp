#pragma once

#include <cstddef>
#include <vector>

#include "ipr/seq.hpp"

namespace ipr {

// Coefficient sequence for the sum/product set constructions: nonempty,
// every entry >= 1.  Throws std::invalid_argument otherwise.
struct CoefficientSeq {
    IntSeq a;

    explicit CoefficientSeq(IntSeq entries);
    std::size_t size() const { return a.size(); }
    bool compressed() const;
};

// Blocks H_1, ..., H_n of 1-based indices, each nonempty and sorted, with
// max(H_t) < min(H_{t+1}).  Throws std::invalid_argument otherwise.
struct BlockSystem {
    std::vector<std::vector<std::size_t>> blocks;

    explicit BlockSystem(std::vector<std::vector<std::size_t>> b);
    std::size_t size() const { return blocks.size(); }
};

// All values sum_i a_i * x_{t_i} over index tuples t_1 < ... < t_m drawn
// from x; sorted, duplicates removed.  Entries of x must be >= 1.
std::vector<long long> wmt_set(const CoefficientSeq& a, const IntSeq& x);

// All values sum_i a_i * (sum of x over F_i) for finite nonempty index
// sets F_1 < ... < F_m (every element of F_i below every element of
// F_{i+1}); a must be compressed.  Sorted, deduplicated.  The subset walk
// is exponential in |x|; |x| > 16 throws unless ignore_length_limit.
std::vector<long long> mt_set(const CoefficientSeq& a, const IntSeq& x,
                              bool ignore_length_limit = false);

// Same block structure as mt_set but each block contributes its product:
// sum_i a_i * (product of x over F_i).  a need not be compressed.
std::vector<long long> pmt_set(const CoefficientSeq& a, const IntSeq& x,
                               bool ignore_length_limit = false);

// Finite sums / finite products of nonempty subsets of x.
std::vector<long long> fs_set(const IntSeq& x, bool ignore_length_limit = false);
std::vector<long long> fp_set(const IntSeq& x, bool ignore_length_limit = false);

// y_t = sum (resp. product) of x over H_t.  Indices must lie in 1..|x|.
IntSeq sum_subsystem(const IntSeq& x, const BlockSystem& blocks);
IntSeq product_subsystem(const IntSeq& x, const BlockSystem& blocks);

}  // namespace ipr
