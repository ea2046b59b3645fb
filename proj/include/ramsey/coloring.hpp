#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/checked.hpp"
#include "ramsey/facts.hpp"

namespace ramsey {

/// An r-coloring of the edges of K_n.  Vertices are 0-based, colors 1-based.
/// Every unordered pair carries exactly one color.  n is capped at 64 so a
/// neighborhood fits in one machine word; the lab is a desk-scale tool.
class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(int n, int r, int fill_color = 1);

    int n() const { return n_; }
    int r() const { return r_; }
    int num_edges() const { return n_ * (n_ - 1) / 2; }

    int color(int u, int v) const;
    void set_color(int u, int v, int c);

    /// Neighbors of v joined by edges of color c, as a bitmask.
    std::uint64_t neighbors(int v, int c) const;

    /// Colex index of the pair {u, v}: all edges inside {0..v-1} come first.
    static int edge_index(int u, int v);

    bool operator==(const EdgeColoring&) const = default;

private:
    void check_pair(int u, int v) const;

    int n_ = 0;
    int r_ = 0;
    std::vector<std::uint8_t> colors_;  // colex-indexed upper triangle
};

/// Result of the goodness check; the witness is present iff the coloring is
/// not good and names a monochromatic clique of the offending color.
struct GoodnessReport {
    std::vector<int> targets;
    bool good = true;
    int witness_color = 0;
    std::vector<int> witness_clique;
};

/// True goodness check: no color class i contains a clique of size k_i.
/// Exact backtracking search; targets must have one entry >= 2 per color.
GoodnessReport is_good(const EdgeColoring& g, const std::vector<int>& targets);

/// The coloring induced on the color-i neighborhood of v.  Vertices keep
/// their relative order.
EdgeColoring neighborhood_restriction(const EdgeColoring& g, int v, int i);

/// d_i(v) for every vertex and color; rows sum to n - 1.
std::vector<std::vector<int>> degree_profile(const EdgeColoring& g);

/// Per-vertex color-i triangle counts and the total, counted independently;
/// the sum of the per-vertex counts is always three times the total.
struct TriangleCensus {
    std::vector<Value> per_vertex;
    Value total;
};
TriangleCensus mono_triangle_counts(const EdgeColoring& g, int i);

/// Checks the forced structure of a critical coloring: with n = P - 1 every
/// vertex must have degree R(reduced) - 1 in each color and each color class
/// exactly (P - 1)(R(reduced) - 1)/2 edges.  Needs exact values for every
/// reduced target list (base conventions or degenerate fact intervals).
struct CriticalityReport {
    Value p = 0;
    std::vector<Value> forced_degree;  // per color
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};
CriticalityReport criticality_check(const EdgeColoring& g,
                                    const std::vector<int>& targets,
                                    const FactsDb& facts);

/// Coloring of K_n from symmetric connection sets: edge {u,v} gets the color
/// whose set contains (u - v) mod n.  The sets must partition {1..n-1} and
/// be closed under d -> n - d.
EdgeColoring circulant_coloring(int n, const std::vector<std::vector<int>>& sets);

/// Plain-text round trip.  Format: first line "n r", then for each vertex
/// u = 0..n-2 one line with the colors of {u,u+1} ... {u,n-1}.
EdgeColoring parse_coloring(const std::string& text);
std::string serialize_coloring(const EdgeColoring& g);
EdgeColoring load_coloring_file(const std::string& path);

} // namespace ramsey
