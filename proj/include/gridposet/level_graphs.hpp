#pragma once

// Weighted cover graph between consecutive levels V_i and V_{i+1}. An edge
// v -> u = v + e_t has color l = u_t and weight a_l = l * (n - l).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridposet/common.hpp"
#include "gridposet/grid_poset.hpp"

namespace gridposet {

/// a_j = j * (n - j).
std::int64_t edge_weight(int n, int color);

struct LevelEdge {
    std::uint32_t lower;  // index into LevelGraph::lower
    std::uint32_t upper;  // index into LevelGraph::upper
    int coordinate;       // the unique t with u_t = v_t + 1
    int color;            // u_t
    std::int64_t weight;  // edge_weight(n, color)
};

/// b_j(x): how many coordinates of x equal j, for j = 0..n-1.
struct CoordinateProfile {
    std::vector<int> counts;

    static CoordinateProfile of(const GridBox& box, const Point& x);
};

class LevelGraph {
public:
    LevelGraph(GridBox box, int level, std::vector<Point> lower, std::vector<Point> upper,
               std::vector<LevelEdge> edges);

    const GridBox& box() const noexcept { return box_; }
    int level() const noexcept { return level_; }
    const std::vector<Point>& lower() const noexcept { return lower_; }
    const std::vector<Point>& upper() const noexcept { return upper_; }
    const std::vector<LevelEdge>& edges() const noexcept { return edges_; }

    /// Edge indices leaving lower[v] / entering upper[u], in edge order.
    const std::vector<std::uint32_t>& edges_from(std::size_t v) const { return out_[v]; }
    const std::vector<std::uint32_t>& edges_into(std::size_t u) const { return in_[u]; }

    std::optional<std::size_t> find_lower(const Point& v) const;
    std::optional<std::size_t> find_upper(const Point& u) const;

    /// D(n-1) - 2(i+1).
    int delta() const noexcept { return box_.max_rank() - 2 * (level_ + 1); }

private:
    GridBox box_;
    int level_;
    std::vector<Point> lower_;
    std::vector<Point> upper_;
    std::vector<LevelEdge> edges_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<std::vector<std::uint32_t>> in_;
};

/// G_i for 0 <= i <= (n-1)D; the graph at i = (n-1)D has no upper level.
LevelGraph build_level_graph(const GridBox& box, int i, std::uint64_t cap = Limits{}.materialize);

/// sum_{j=0}^{n-2} b_j(v) a_{j+1}. Throws std::invalid_argument if v is not
/// in V_i.
std::int64_t weighted_degree_lower(const LevelGraph& g, const Point& v);

/// sum_{j=1}^{n-1} b_j(u) a_j. Throws std::invalid_argument if u is not in
/// V_{i+1}.
std::int64_t weighted_degree_upper(const LevelGraph& g, const Point& u);

/// Edge-weight sums, computed from the edge list rather than the profile.
std::int64_t summed_degree_lower(const LevelGraph& g, std::size_t v);
std::int64_t summed_degree_upper(const LevelGraph& g, std::size_t u);

struct DegreeIdentityCheck {
    bool holds = true;
    std::optional<LevelEdge> counterexample;
    std::size_t edges_checked = 0;
};

/// deg(v) = deg(u) + D(n-1) - 2(i+1) + 2l - n + 1 on every edge (v, u) of
/// color l.
DegreeIdentityCheck check_degree_identity(const LevelGraph& g);

/// One edge per line: "v0,v1,... u0,u1,... color weight", preceded by a
/// "# n D level edges" header line.
std::string export_edge_list(const LevelGraph& g);

}  // namespace gridposet
