#include "ramsey/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <thread>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

// Edge e (colex order) joins pair(e) = {u, v}, u < v.  All edges inside
// {0..v-1} precede e, plus the edges {0..u-1, v}.
std::pair<int, int> pair_of(int e) {
    int v = 1;
    while ((v + 1) * v / 2 <= e)
        ++v;
    return {e - v * (v - 1) / 2, v};
}

struct Searcher {
    int n;
    int r;
    std::vector<int> targets;
    std::vector<std::pair<int, int>> edge_pairs;
    // adj[c][v]: color-(c+1) neighbors of v among assigned edges
    std::vector<std::vector<std::uint64_t>> adj;
    std::vector<std::uint8_t> assignment;

    std::atomic<Value>* budget;

    Searcher(int n_, const std::vector<int>& targets_, std::atomic<Value>* budget_)
        : n(n_), r(static_cast<int>(targets_.size())), targets(targets_),
          budget(budget_) {
        int edges = n * (n - 1) / 2;
        edge_pairs.resize(static_cast<size_t>(edges));
        for (int e = 0; e < edges; ++e)
            edge_pairs[static_cast<size_t>(e)] = pair_of(e);
        adj.assign(static_cast<size_t>(r),
                   std::vector<std::uint64_t>(static_cast<size_t>(n), 0));
        assignment.assign(static_cast<size_t>(edges), 0);
    }

    // Does coloring {u,v} with c complete a K_{target[c]} of color c?  Only
    // vertices below u can extend: higher edges at v are still unassigned.
    bool completes_clique(int u, int v, int c) {
        int need = targets[static_cast<size_t>(c)] - 2;
        const auto& a = adj[static_cast<size_t>(c)];
        std::uint64_t common = a[static_cast<size_t>(u)] & a[static_cast<size_t>(v)];
        return has_clique(a, common, need);
    }

    bool has_clique(const std::vector<std::uint64_t>& a, std::uint64_t cands,
                    int size) {
        if (size == 0)
            return true;
        if (std::popcount(cands) < size)
            return false;
        std::uint64_t rest = cands;
        while (rest) {
            int w = std::countr_zero(rest);
            rest &= rest - 1;
            if (has_clique(a, rest & a[static_cast<size_t>(w)], size - 1))
                return true;
        }
        return false;
    }

    void put(int e, int c) {
        auto [u, v] = edge_pairs[static_cast<size_t>(e)];
        assignment[static_cast<size_t>(e)] = static_cast<std::uint8_t>(c + 1);
        adj[static_cast<size_t>(c)][static_cast<size_t>(u)] |= std::uint64_t{1} << v;
        adj[static_cast<size_t>(c)][static_cast<size_t>(v)] |= std::uint64_t{1} << u;
    }

    void remove(int e, int c) {
        auto [u, v] = edge_pairs[static_cast<size_t>(e)];
        assignment[static_cast<size_t>(e)] = 0;
        adj[static_cast<size_t>(c)][static_cast<size_t>(u)] &=
            ~(std::uint64_t{1} << v);
        adj[static_cast<size_t>(c)][static_cast<size_t>(v)] &=
            ~(std::uint64_t{1} << u);
    }

    bool spend() {
        return budget->fetch_sub(1, std::memory_order_relaxed) > 0;
    }

    // Depth-first completion from edge e onward; true iff a good coloring
    // exists below this prefix.  Colors tried ascending, so the first
    // success is the lexicographically least completion.
    bool complete(int e) {
        if (e == static_cast<int>(edge_pairs.size()))
            return true;
        auto [u, v] = edge_pairs[static_cast<size_t>(e)];
        for (int c = 0; c < r; ++c) {
            if (!spend())
                throw BudgetExceededError("search budget exhausted", 0);
            if (completes_clique(u, v, c))
                continue;
            put(e, c);
            if (complete(e + 1))
                return true;
            remove(e, c);
        }
        return false;
    }

    // Apply a fixed prefix; returns false if the prefix itself is pruned.
    bool apply_prefix(const std::vector<std::uint8_t>& prefix) {
        for (size_t e = 0; e < prefix.size(); ++e) {
            auto [u, v] = edge_pairs[e];
            int c = prefix[e] - 1;
            if (completes_clique(u, v, c))
                return false;
            put(static_cast<int>(e), c);
        }
        return true;
    }

    EdgeColoring coloring() const {
        EdgeColoring g(n, r);
        for (size_t e = 0; e < edge_pairs.size(); ++e) {
            auto [u, v] = edge_pairs[e];
            g.set_color(u, v, assignment[e]);
        }
        return g;
    }
};

// Enumerate the pruned prefixes of the first `depth` edges, in
// lexicographic order.
void enumerate_prefixes(Searcher& s, int depth, std::vector<std::uint8_t>& current,
                        std::vector<std::vector<std::uint8_t>>& out) {
    if (static_cast<int>(current.size()) == depth) {
        out.push_back(current);
        return;
    }
    int e = static_cast<int>(current.size());
    auto [u, v] = s.edge_pairs[static_cast<size_t>(e)];
    for (int c = 0; c < s.r; ++c) {
        if (!s.spend())
            throw BudgetExceededError("search budget exhausted", 0);
        if (s.completes_clique(u, v, c))
            continue;
        s.put(e, c);
        current.push_back(static_cast<std::uint8_t>(c + 1));
        enumerate_prefixes(s, depth, current, out);
        current.pop_back();
        s.remove(e, c);
    }
}

// Is there a good coloring of K_n?  Returns the lexicographically least one.
std::optional<EdgeColoring> exists_good(int n, const std::vector<int>& targets,
                                        std::atomic<Value>& budget, int threads) {
    if (n <= 1) {
        // No edges; vacuously good (targets are all >= 2).
        return EdgeColoring(n, static_cast<int>(targets.size()));
    }
    int edges = n * (n - 1) / 2;

    if (threads <= 1 || edges < 12) {
        Searcher s(n, targets, &budget);
        if (s.complete(0))
            return s.coloring();
        return std::nullopt;
    }

    // Split on a prefix of the edge list.  Prefixes are processed in order
    // by index; the least successful index wins, so the witness matches the
    // sequential search.
    int depth = 1;
    long long count = targets.size();
    while (depth < edges - 4 && count < 64LL * threads) {
        count *= static_cast<long long>(targets.size());
        ++depth;
    }
    std::vector<std::vector<std::uint8_t>> prefixes;
    {
        Searcher s(n, targets, &budget);
        std::vector<std::uint8_t> current;
        enumerate_prefixes(s, depth, current, prefixes);
    }

    std::atomic<size_t> next{0};
    std::atomic<size_t> best{prefixes.size()};
    std::vector<EdgeColoring> results(prefixes.size());
    std::mutex results_mutex;
    std::atomic<bool> out_of_budget{false};

    auto worker = [&]() {
        try {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= prefixes.size() || i >= best.load())
                    return;
                Searcher s(n, targets, &budget);
                if (!s.apply_prefix(prefixes[i]))
                    continue;
                if (s.complete(depth)) {
                    std::lock_guard<std::mutex> lock(results_mutex);
                    size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    results[i] = s.coloring();
                }
            }
        } catch (const BudgetExceededError&) {
            out_of_budget.store(true);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (out_of_budget.load())
        throw BudgetExceededError("search budget exhausted", 0);

    size_t winner = best.load();
    if (winner == prefixes.size())
        return std::nullopt;
    return results[winner];
}

} // namespace

SearchResult brute_force_ramsey(const std::vector<int>& targets, int n_max,
                                const SearchConfig& config) {
    if (targets.empty())
        throw InvalidKeyError("need at least one clique target");
    for (int k : targets)
        if (k < 2)
            throw InvalidKeyError("clique targets must be >= 2");
    if (n_max < 1 || n_max > config.witness_order_cap)
        throw InvalidKeyError("n_max must be in [1, " +
                              std::to_string(config.witness_order_cap) + "]");
    if (config.budget < 1)
        throw InvalidKeyError("budget must be positive");
    int threads = std::max(1, config.threads);

    std::atomic<Value> budget{config.budget};
    EdgeColoring witness(1, static_cast<int>(targets.size()));
    for (int n = 2; n <= n_max; ++n) {
        std::optional<EdgeColoring> good;
        try {
            good = exists_good(n, targets, budget, threads);
        } catch (const BudgetExceededError&) {
            throw BudgetExceededError(
                "search budget exhausted; all orders up to " +
                    std::to_string(n - 1) + " were decided",
                n - 1);
        }
        if (!good)
            return {n, n_max, witness};
        witness = std::move(*good);
    }
    return {std::nullopt, n_max, witness};
}

} // namespace ramsey
