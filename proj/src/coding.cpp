#include "chronosense/coding.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <queue>

#include "chronosense/errors.hpp"

namespace chronosense::coding {

namespace {

void validate_pmf(const std::vector<double>& probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw InputError("probabilities must be strictly positive");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw InputError("probabilities must sum to 1");
}

}  // namespace

double kraft_sum(const std::vector<long long>& times, int base) {
    if (base < 2) throw InputError("Kraft base must be >= 2");
    double sum = 0.0;
    for (long long t : times) {
        if (t < 0) throw InputError("times must be non-negative");
        if (base == 2)
            sum += (t > 2000) ? 0.0 : std::ldexp(1.0, -static_cast<int>(t));
        else
            sum += std::pow(static_cast<double>(base), -static_cast<double>(t));
    }
    return sum;
}

double entropy(const std::vector<double>& probs) {
    if (probs.empty()) throw InputError("entropy of an empty distribution");
    validate_pmf(probs);
    double h = 0.0;
    for (double p : probs) h -= p * std::log2(p);
    return std::max(0.0, h);
}

CodeLengths huffman_lengths(const std::vector<double>& probs) {
    if (probs.size() < 2) throw InputError("Huffman coding needs at least 2 symbols");
    validate_pmf(probs);

    struct Node {
        double prob;
        std::size_t id;  // leaves first, merged nodes in creation order
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) nodes.push_back({probs[i], i, -1, -1});

    auto heavier = [&](std::size_t a, std::size_t b) {
        if (nodes[a].prob != nodes[b].prob) return nodes[a].prob > nodes[b].prob;
        return nodes[a].id > nodes[b].id;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(heavier)> queue(heavier);
    for (std::size_t i = 0; i < probs.size(); ++i) queue.push(i);

    while (queue.size() > 1) {
        const std::size_t a = queue.top();
        queue.pop();
        const std::size_t b = queue.top();
        queue.pop();
        nodes.push_back({nodes[a].prob + nodes[b].prob, nodes.size(),
                         static_cast<int>(a), static_cast<int>(b)});
        queue.push(nodes.size() - 1);
    }

    CodeLengths out;
    out.lengths.assign(probs.size(), 0);
    std::vector<std::pair<std::size_t, long long>> stack{{queue.top(), 0}};
    while (!stack.empty()) {
        const auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& n = nodes[idx];
        if (n.left < 0) {
            out.lengths[n.id] = depth;
            continue;
        }
        stack.emplace_back(static_cast<std::size_t>(n.left), depth + 1);
        stack.emplace_back(static_cast<std::size_t>(n.right), depth + 1);
    }
    return out;
}

std::vector<long long> scale_to_budget(const CodeLengths& code, long long budget) {
    const std::size_t m = code.lengths.size();
    if (m == 0) throw InputError("no lengths to scale");
    if (budget < static_cast<long long>(m))
        throw InputError("budget too small to give each band at least 1");
    long long total = 0;
    for (long long l : code.lengths) {
        if (l < 1) throw InputError("code lengths must be >= 1");
        total += l;
    }

    // Exact largest-remainder apportionment on L*l/total.
    std::vector<long long> times(m), rem(m);
    long long assigned = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const __int128 scaled = static_cast<__int128>(budget) * code.lengths[i];
        times[i] = static_cast<long long>(scaled / total);
        rem[i] = static_cast<long long>(scaled % total);
        assigned += times[i];
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rem[a] != rem[b]) return rem[a] > rem[b];
        if (code.lengths[a] != code.lengths[b]) return code.lengths[a] > code.lengths[b];
        return a < b;
    });
    for (long long k = 0; k < budget - assigned; ++k) ++times[order[static_cast<std::size_t>(k)]];

    // Every band gets at least one unit, funded by the largest slots.
    for (std::size_t i = 0; i < m; ++i) {
        while (times[i] < 1) {
            const std::size_t big = static_cast<std::size_t>(
                std::max_element(times.begin(), times.end()) - times.begin());
            if (times[big] <= 1) throw InputError("budget too small to give each band at least 1");
            --times[big];
            ++times[i];
        }
    }

    // Monotonicity repair: reassign the multiset of times so that equal or
    // larger lengths never get smaller times.
    std::vector<std::size_t> by_length(m);
    std::iota(by_length.begin(), by_length.end(), std::size_t{0});
    std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t a, std::size_t b) {
        return code.lengths[a] < code.lengths[b];
    });
    std::vector<long long> sorted_times = times;
    std::sort(sorted_times.begin(), sorted_times.end());
    std::vector<long long> out(m);
    for (std::size_t k = 0; k < m; ++k) out[by_length[k]] = sorted_times[k];
    return out;
}

}  // namespace chronosense::coding
