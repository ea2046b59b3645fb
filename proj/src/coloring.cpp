#include "ramsey/coloring.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "ramsey/color_key.hpp"
#include "ramsey/errors.hpp"

namespace ramsey {

EdgeColoring::EdgeColoring(int n, int r, int fill_color) : n_(n), r_(r) {
    if (n < 0 || n > 64)
        throw ParseError("vertex count must be in [0, 64], got " + std::to_string(n));
    if (r < 1 || r > 32)
        throw ParseError("color count must be in [1, 32], got " + std::to_string(r));
    if (fill_color < 1 || fill_color > r)
        throw ParseError("fill color out of range");
    colors_.assign(static_cast<size_t>(num_edges()),
                   static_cast<std::uint8_t>(fill_color));
}

void EdgeColoring::check_pair(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw ParseError("bad vertex pair {" + std::to_string(u) + "," +
                         std::to_string(v) + "} for n = " + std::to_string(n_));
}

int EdgeColoring::edge_index(int u, int v) {
    if (u > v)
        std::swap(u, v);
    return v * (v - 1) / 2 + u;
}

int EdgeColoring::color(int u, int v) const {
    check_pair(u, v);
    return colors_[static_cast<size_t>(edge_index(u, v))];
}

void EdgeColoring::set_color(int u, int v, int c) {
    check_pair(u, v);
    if (c < 1 || c > r_)
        throw ParseError("color " + std::to_string(c) + " out of range 1.." +
                         std::to_string(r_));
    colors_[static_cast<size_t>(edge_index(u, v))] = static_cast<std::uint8_t>(c);
}

std::uint64_t EdgeColoring::neighbors(int v, int c) const {
    std::uint64_t mask = 0;
    for (int u = 0; u < n_; ++u)
        if (u != v && color(u, v) == c)
            mask |= std::uint64_t{1} << u;
    return mask;
}

namespace {

// First clique of `size` inside `candidates` (vertices ascending), where
// adj[v] is the color-class adjacency mask.  Exact backtracking.
bool find_clique(const std::vector<std::uint64_t>& adj, std::uint64_t candidates,
                 int size, std::vector<int>& out) {
    if (size == 0)
        return true;
    if (std::popcount(candidates) < size)
        return false;
    std::uint64_t rest = candidates;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        out.push_back(v);
        if (find_clique(adj, rest & adj[static_cast<size_t>(v)], size - 1, out))
            return true;
        out.pop_back();
    }
    return false;
}

std::vector<std::uint64_t> class_adjacency(const EdgeColoring& g, int c) {
    std::vector<std::uint64_t> adj(static_cast<size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
        adj[static_cast<size_t>(v)] = g.neighbors(v, c);
    return adj;
}

} // namespace

GoodnessReport is_good(const EdgeColoring& g, const std::vector<int>& targets) {
    if (static_cast<int>(targets.size()) != g.r())
        throw ArityError("expected " + std::to_string(g.r()) + " targets, got " +
                         std::to_string(targets.size()));
    for (int k : targets)
        if (k < 2)
            throw InvalidKeyError("clique targets must be >= 2");

    GoodnessReport report;
    report.targets = targets;
    std::uint64_t all = g.n() >= 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << g.n()) - 1;
    for (int c = 1; c <= g.r(); ++c) {
        auto adj = class_adjacency(g, c);
        std::vector<int> clique;
        if (find_clique(adj, all, targets[static_cast<size_t>(c - 1)], clique)) {
            report.good = false;
            report.witness_color = c;
            report.witness_clique = clique;
            return report;
        }
    }
    return report;
}

EdgeColoring neighborhood_restriction(const EdgeColoring& g, int v, int i) {
    if (v < 0 || v >= g.n())
        throw ParseError("vertex " + std::to_string(v) + " out of range");
    if (i < 1 || i > g.r())
        throw ParseError("color " + std::to_string(i) + " out of range");
    std::vector<int> members;
    for (int u = 0; u < g.n(); ++u)
        if (u != v && g.color(u, v) == i)
            members.push_back(u);
    EdgeColoring induced(static_cast<int>(members.size()), g.r());
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            induced.set_color(static_cast<int>(a), static_cast<int>(b),
                              g.color(members[a], members[b]));
    return induced;
}

std::vector<std::vector<int>> degree_profile(const EdgeColoring& g) {
    std::vector<std::vector<int>> profile(
        static_cast<size_t>(g.n()), std::vector<int>(static_cast<size_t>(g.r()), 0));
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            int c = g.color(u, v) - 1;
            profile[static_cast<size_t>(u)][static_cast<size_t>(c)] += 1;
            profile[static_cast<size_t>(v)][static_cast<size_t>(c)] += 1;
        }
    return profile;
}

TriangleCensus mono_triangle_counts(const EdgeColoring& g, int i) {
    if (i < 1 || i > g.r())
        throw ParseError("color " + std::to_string(i) + " out of range");
    auto adj = class_adjacency(g, i);
    TriangleCensus census;
    census.per_vertex.assign(static_cast<size_t>(g.n()), 0);

    // Per-vertex: edges of color i inside N_i(v).
    for (int v = 0; v < g.n(); ++v) {
        std::uint64_t nb = adj[static_cast<size_t>(v)];
        std::uint64_t rest = nb;
        Value count = 0;
        while (rest) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            count += std::popcount(adj[static_cast<size_t>(u)] & nb & rest);
        }
        census.per_vertex[static_cast<size_t>(v)] = count;
    }

    // Independent total: ordered triples u < v < w.
    census.total = 0;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            if ((adj[static_cast<size_t>(u)] >> v & 1) == 0)
                continue;
            std::uint64_t above = v + 1 >= 64 ? 0 : ~std::uint64_t{0} << (v + 1);
            census.total += std::popcount(adj[static_cast<size_t>(u)] &
                                          adj[static_cast<size_t>(v)] & above);
        }
    return census;
}

namespace {

// Exact value of R for a reduced target list, from base conventions or a
// degenerate fact interval.  A list containing 1 has value 1.
Value exact_reduced_value(std::vector<int> list, const FactsDb& facts) {
    for (int k : list)
        if (k <= 1)
            return 1;
    ColorKey key = ColorKey::canonicalize(list);
    if (key.is_base())
        return key.base_value();
    const BoundInterval* iv = facts.find(key);
    if (iv && iv->exact())
        return *iv->upper;
    throw MissingExactValueError("no exact value for " + key.str() +
                                 "; criticality needs lower == upper");
}

} // namespace

CriticalityReport criticality_check(const EdgeColoring& g,
                                    const std::vector<int>& targets,
                                    const FactsDb& facts) {
    if (static_cast<int>(targets.size()) != g.r())
        throw ArityError("expected " + std::to_string(g.r()) + " targets, got " +
                         std::to_string(targets.size()));
    for (int k : targets)
        if (k < 2)
            throw InvalidKeyError("clique targets must be >= 2");

    CriticalityReport report;
    int r = g.r();
    report.p = checked_sub(2, r);
    for (int c = 1; c <= r; ++c) {
        std::vector<int> reduced = targets;
        reduced[static_cast<size_t>(c - 1)] -= 1;
        Value value = exact_reduced_value(reduced, facts);
        report.forced_degree.push_back(value - 1);
        report.p = checked_add(report.p, value);
    }

    if (g.n() != report.p - 1) {
        report.violations.push_back("order is " + std::to_string(g.n()) +
                                    " but P - 1 = " + std::to_string(report.p - 1));
        return report;
    }

    auto profile = degree_profile(g);
    std::vector<Value> degree_sum(static_cast<size_t>(r), 0);
    for (int v = 0; v < g.n(); ++v)
        for (int c = 1; c <= r; ++c) {
            int d = profile[static_cast<size_t>(v)][static_cast<size_t>(c - 1)];
            degree_sum[static_cast<size_t>(c - 1)] += d;
            Value forced = report.forced_degree[static_cast<size_t>(c - 1)];
            if (d != forced)
                report.violations.push_back(
                    "vertex " + std::to_string(v) + ": d_" + std::to_string(c) +
                    " = " + std::to_string(d) + ", forced " + std::to_string(forced));
        }
    for (int c = 1; c <= r; ++c) {
        // Compare twice the edge count against (P-1)(R_red - 1) so a
        // fractional expected count can never pass by truncation.
        Value actual_twice = degree_sum[static_cast<size_t>(c - 1)];
        Value expected_twice =
            checked_mul(report.p - 1, report.forced_degree[static_cast<size_t>(c - 1)]);
        if (actual_twice != expected_twice)
            report.violations.push_back(
                "color " + std::to_string(c) + ": " + std::to_string(actual_twice / 2) +
                " edges, expected " + std::to_string(expected_twice) + "/2");
    }
    return report;
}

EdgeColoring circulant_coloring(int n, const std::vector<std::vector<int>>& sets) {
    if (n < 1 || n > 64)
        throw InvalidConnectionSetsError("order must be in [1, 64]");
    if (sets.empty())
        throw InvalidConnectionSetsError("need at least one connection set");
    std::vector<int> owner(static_cast<size_t>(n), 0);  // difference -> color
    for (size_t c = 0; c < sets.size(); ++c)
        for (int d : sets[c]) {
            if (d < 1 || d >= n)
                throw InvalidConnectionSetsError("difference " + std::to_string(d) +
                                                 " outside 1.." + std::to_string(n - 1));
            if (owner[static_cast<size_t>(d)] != 0)
                throw InvalidConnectionSetsError("difference " + std::to_string(d) +
                                                 " appears in two sets");
            owner[static_cast<size_t>(d)] = static_cast<int>(c) + 1;
        }
    for (int d = 1; d < n; ++d) {
        if (owner[static_cast<size_t>(d)] == 0)
            throw InvalidConnectionSetsError("difference " + std::to_string(d) +
                                             " not covered; sets must partition");
        if (owner[static_cast<size_t>(d)] != owner[static_cast<size_t>(n - d)])
            throw InvalidConnectionSetsError(
                "sets not symmetric: " + std::to_string(d) + " and " +
                std::to_string(n - d) + " fall in different sets");
    }
    EdgeColoring g(n, static_cast<int>(sets.size()));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.set_color(u, v, owner[static_cast<size_t>(v - u)]);
    return g;
}

EdgeColoring parse_coloring(const std::string& text) {
    std::istringstream in(text);
    int n, r;
    if (!(in >> n >> r))
        throw ParseError("coloring file: missing \"n r\" header");
    if (n < 0 || n > 64 || r < 1 || r > 32)
        throw ParseError("coloring file: implausible header");
    EdgeColoring g(n, r);
    for (int u = 0; u + 1 < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int c;
            if (!(in >> c))
                throw ParseError("coloring file: missing color for edge {" +
                                 std::to_string(u) + "," + std::to_string(v) + "}");
            if (c < 1 || c > r)
                throw ParseError("coloring file: color " + std::to_string(c) +
                                 " out of range at edge {" + std::to_string(u) + "," +
                                 std::to_string(v) + "}");
            g.set_color(u, v, c);
        }
    int extra;
    if (in >> extra)
        throw ParseError("coloring file: trailing data");
    return g;
}

std::string serialize_coloring(const EdgeColoring& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.r()) + "\n";
    for (int u = 0; u + 1 < g.n(); ++u) {
        for (int v = u + 1; v < g.n(); ++v) {
            if (v > u + 1)
                out += ' ';
            out += std::to_string(g.color(u, v));
        }
        out += '\n';
    }
    return out;
}

EdgeColoring load_coloring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open coloring file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_coloring(buf.str());
}

} // namespace ramsey
