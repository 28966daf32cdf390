#pragma once

#include <vector>

namespace chronosense::coding {

// Prefix-code lengths, one per band, aligned to the occupancy profile order.
struct CodeLengths {
    std::vector<long long> lengths;
};

// Sum of base^(-t) over the times. Base 2 is evaluated with exact
// power-of-two arithmetic.
double kraft_sum(const std::vector<long long>& times, int base = 2);

// Shannon entropy in bits. Requires a strictly positive pmf.
double entropy(const std::vector<double>& probs);

// Optimal binary prefix-code lengths. Merge ties break on (probability,
// creation order) with leaves numbered before merged nodes, so the result is
// deterministic.
CodeLengths huffman_lengths(const std::vector<double>& probs);

// Integer times proportional to the lengths summing exactly to the budget:
// largest-remainder apportionment, every time at least 1, and the relative
// order of lengths preserved.
std::vector<long long> scale_to_budget(const CodeLengths& lengths, long long budget);

}  // namespace chronosense::coding
