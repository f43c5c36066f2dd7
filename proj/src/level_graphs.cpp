#include "gridposet/level_graphs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gridposet {

std::int64_t edge_weight(int n, int color)
{
    return static_cast<std::int64_t>(color) * static_cast<std::int64_t>(n - color);
}

CoordinateProfile CoordinateProfile::of(const GridBox& box, const Point& x)
{
    box.require_contains(x);
    CoordinateProfile p;
    p.counts.assign(static_cast<std::size_t>(box.n()), 0);
    for (int c : x.coords())
        ++p.counts[static_cast<std::size_t>(c)];
    return p;
}

LevelGraph::LevelGraph(GridBox box, int level, std::vector<Point> lower, std::vector<Point> upper,
                       std::vector<LevelEdge> edges)
    : box_(box), level_(level), lower_(std::move(lower)), upper_(std::move(upper)), edges_(std::move(edges)),
      out_(lower_.size()), in_(upper_.size())
{
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].lower].push_back(static_cast<std::uint32_t>(e));
        in_[edges_[e].upper].push_back(static_cast<std::uint32_t>(e));
    }
}

std::optional<std::size_t> LevelGraph::find_lower(const Point& v) const
{
    auto it = std::lower_bound(lower_.begin(), lower_.end(), v);
    if (it == lower_.end() || *it != v)
        return std::nullopt;
    return static_cast<std::size_t>(it - lower_.begin());
}

std::optional<std::size_t> LevelGraph::find_upper(const Point& u) const
{
    auto it = std::lower_bound(upper_.begin(), upper_.end(), u);
    if (it == upper_.end() || *it != u)
        return std::nullopt;
    return static_cast<std::size_t>(it - upper_.begin());
}

LevelGraph build_level_graph(const GridBox& box, int i, std::uint64_t cap)
{
    if (i < 0 || i > box.max_rank())
        throw std::out_of_range("level graph index " + std::to_string(i) + " outside 0.." +
                                std::to_string(box.max_rank()));
    std::vector<Point> lower = enumerate_level(box, i, cap);
    std::vector<Point> upper;
    if (i < box.max_rank())
        upper = enumerate_level(box, i + 1, cap);

    std::vector<LevelEdge> edges;
    for (std::size_t v = 0; v < lower.size(); ++v) {
        for (int t = 0; t < box.D(); ++t) {
            const auto ut = static_cast<std::size_t>(t);
            if (lower[v][ut] == box.n() - 1)
                continue;
            Point u = lower[v];
            ++u[ut];
            auto it = std::lower_bound(upper.begin(), upper.end(), u);
            LevelEdge e;
            e.lower = static_cast<std::uint32_t>(v);
            e.upper = static_cast<std::uint32_t>(it - upper.begin());
            e.coordinate = t;
            e.color = u[ut];
            e.weight = edge_weight(box.n(), e.color);
            edges.push_back(e);
        }
    }
    return LevelGraph(box, i, std::move(lower), std::move(upper), std::move(edges));
}

std::int64_t weighted_degree_lower(const LevelGraph& g, const Point& v)
{
    if (!g.box().contains(v) || rank(v) != g.level())
        throw std::invalid_argument("point " + v.to_string() + " is not in level " + std::to_string(g.level()));
    const auto b = CoordinateProfile::of(g.box(), v);
    const int n = g.box().n();
    std::int64_t deg = 0;
    for (int j = 0; j <= n - 2; ++j)
        deg += b.counts[static_cast<std::size_t>(j)] * edge_weight(n, j + 1);
    return deg;
}

std::int64_t weighted_degree_upper(const LevelGraph& g, const Point& u)
{
    if (!g.box().contains(u) || rank(u) != g.level() + 1)
        throw std::invalid_argument("point " + u.to_string() + " is not in level " +
                                    std::to_string(g.level() + 1));
    const auto b = CoordinateProfile::of(g.box(), u);
    const int n = g.box().n();
    std::int64_t deg = 0;
    for (int j = 1; j <= n - 1; ++j)
        deg += b.counts[static_cast<std::size_t>(j)] * edge_weight(n, j);
    return deg;
}

std::int64_t summed_degree_lower(const LevelGraph& g, std::size_t v)
{
    std::int64_t deg = 0;
    for (auto e : g.edges_from(v))
        deg += g.edges()[e].weight;
    return deg;
}

std::int64_t summed_degree_upper(const LevelGraph& g, std::size_t u)
{
    std::int64_t deg = 0;
    for (auto e : g.edges_into(u))
        deg += g.edges()[e].weight;
    return deg;
}

DegreeIdentityCheck check_degree_identity(const LevelGraph& g)
{
    DegreeIdentityCheck result;
    const int n = g.box().n();
    const int D = g.box().D();
    const int i = g.level();
    for (const LevelEdge& e : g.edges()) {
        const std::int64_t lhs = weighted_degree_lower(g, g.lower()[e.lower]);
        const std::int64_t rhs =
            weighted_degree_upper(g, g.upper()[e.upper]) + D * (n - 1) - 2 * (i + 1) + 2 * e.color - n + 1;
        ++result.edges_checked;
        if (lhs != rhs) {
            result.holds = false;
            result.counterexample = e;
            return result;
        }
    }
    return result;
}

std::string export_edge_list(const LevelGraph& g)
{
    std::ostringstream out;
    out << "# n=" << g.box().n() << " D=" << g.box().D() << " level=" << g.level()
        << " edges=" << g.edges().size() << '\n';
    for (const LevelEdge& e : g.edges())
        out << g.lower()[e.lower].to_compact() << ' ' << g.upper()[e.upper].to_compact() << ' ' << e.color << ' '
            << e.weight << '\n';
    return out.str();
}

}  // namespace gridposet
