#pragma once

#include <optional>
#include <vector>

#include "ramsey/coloring.hpp"

namespace ramsey {

struct SearchConfig {
    Value budget = Value{1} << 30;  // partial assignments tried
    int threads = 1;
    int witness_order_cap = 64;
};

/// Outcome of brute_force_ramsey.  `value` is the exact Ramsey number when
/// the search decided it within n_max; otherwise the search only shows
/// R >= n_max + 1 and `witness` is a good coloring of K_{n_max}.
struct SearchResult {
    std::optional<int> value;
    int n_max;
    EdgeColoring witness;  // good coloring of K_{value-1}, or of K_{n_max}
};

/// Exhaustive Ramsey oracle for tiny targets.  Edges are assigned in colex
/// order with incremental monochromatic-clique pruning and no isomorphism
/// rejection; the result and witness (the lexicographically least good
/// coloring) are deterministic, also when the tree is split across threads.
/// Throws BudgetExceededError when the assignment budget runs out.
SearchResult brute_force_ramsey(const std::vector<int>& targets, int n_max,
                                const SearchConfig& config = {});

} // namespace ramsey
