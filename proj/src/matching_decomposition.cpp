#include "gridposet/matching_decomposition.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>

namespace gridposet {

namespace {

// Dinic max-flow on small integer-capacity networks.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

    std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap)
    {
        const std::size_t id = arcs_.size();
        arcs_.push_back({to, cap});
        adj_[from].push_back(id);
        arcs_.push_back({from, 0});
        adj_[to].push_back(id + 1);
        return id;
    }

    std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

    std::int64_t max_flow(std::size_t source, std::size_t sink)
    {
        std::int64_t total = 0;
        while (build_levels(source, sink)) {
            next_.assign(adj_.size(), 0);
            while (std::int64_t pushed = push(source, sink, std::numeric_limits<std::int64_t>::max()))
                total += pushed;
        }
        return total;
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
    };

    bool build_levels(std::size_t source, std::size_t sink)
    {
        level_.assign(adj_.size(), -1);
        level_[source] = 0;
        std::queue<std::size_t> q;
        q.push(source);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (std::size_t id : adj_[v]) {
                const Arc& a = arcs_[id];
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[v] + 1;
                    q.push(a.to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    std::int64_t push(std::size_t v, std::size_t sink, std::int64_t limit)
    {
        if (v == sink)
            return limit;
        for (; next_[v] < adj_[v].size(); ++next_[v]) {
            const std::size_t id = adj_[v][next_[v]];
            Arc& a = arcs_[id];
            if (a.cap <= 0 || level_[a.to] != level_[v] + 1)
                continue;
            if (std::int64_t got = push(a.to, sink, std::min(limit, a.cap))) {
                a.cap -= got;
                arcs_[id ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
};

// Finds a matching of size exactly m inside `usable` edges that covers every
// vertex flagged tight. Slack is routed through two hub nodes: one absorbing
// the left vertices left unmatched (capacity |A| - m) and one feeding the
// right vertices left unmatched (capacity |B| - m). The hubs are not joined,
// so a saturating flow has exactly m real edges.
std::optional<std::vector<std::size_t>> face_vertex(const BipartiteGraph& g, const std::vector<bool>& usable,
                                                    const std::vector<bool>& left_tight,
                                                    const std::vector<bool>& right_tight, std::size_t m)
{
    const std::size_t a = g.left_count;
    const std::size_t b = g.right_count;
    const std::size_t source = 0, sink = 1, left_hub = 2, right_hub = 3;
    auto left_node = [&](std::size_t v) { return 4 + v; };
    auto right_node = [&](std::size_t u) { return 4 + a + u; };

    FlowNetwork net(4 + a + b);
    net.add_edge(source, left_hub, static_cast<std::int64_t>(b - m));
    net.add_edge(right_hub, sink, static_cast<std::int64_t>(a - m));
    for (std::size_t v = 0; v < a; ++v) {
        net.add_edge(source, left_node(v), 1);
        if (!left_tight[v])
            net.add_edge(left_node(v), right_hub, 1);
    }
    for (std::size_t u = 0; u < b; ++u) {
        net.add_edge(right_node(u), sink, 1);
        if (!right_tight[u])
            net.add_edge(left_hub, right_node(u), 1);
    }
    std::vector<std::pair<std::size_t, std::size_t>> real_arcs;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (usable[e])
            real_arcs.emplace_back(e, net.add_edge(left_node(g.edges[e].first), right_node(g.edges[e].second), 1));

    const auto required = static_cast<std::int64_t>(a + b - m);
    if (net.max_flow(source, sink) != required)
        return std::nullopt;
    std::vector<std::size_t> matching;
    for (auto [e, arc] : real_arcs)
        if (net.flow_on(arc) > 0)
            matching.push_back(e);
    return matching;
}

std::size_t mass_as_size(const BigCount& mass)
{
    if (mass < 0 || !mass.fits_ulong_p())
        throw InfeasibleFractionalMatching("matching mass out of range: " + mass.get_str());
    return static_cast<std::size_t>(mass.get_ui());
}

}  // namespace

PolytopeCheck validate_fractional_matching(const BipartiteGraph& g, const FractionalMatching& f)
{
    PolytopeCheck check;
    auto fail = [&](std::string why) {
        check.ok = false;
        check.witness = std::move(why);
        return check;
    };
    if (f.values.size() != g.edges.size())
        return fail("value count " + std::to_string(f.values.size()) + " != edge count " +
                    std::to_string(g.edges.size()));
    std::vector<Rational> left(g.left_count, 0), right(g.right_count, 0);
    Rational total = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [v, u] = g.edges[e];
        if (v >= g.left_count || u >= g.right_count)
            return fail("edge " + std::to_string(e) + " has an endpoint outside the graph");
        const Rational& x = f.values[e];
        if (x < 0 || x > 1)
            return fail("edge " + std::to_string(e) + " value " + to_fraction_string(x) + " outside [0,1]");
        left[v] += x;
        right[u] += x;
        total += x;
    }
    for (std::size_t v = 0; v < left.size(); ++v)
        if (left[v] > 1)
            return fail("left vertex " + std::to_string(v) + " sum " + to_fraction_string(left[v]) + " > 1");
    for (std::size_t u = 0; u < right.size(); ++u)
        if (right[u] > 1)
            return fail("right vertex " + std::to_string(u) + " sum " + to_fraction_string(right[u]) + " > 1");
    if (total != Rational(f.mass))
        return fail("total " + to_fraction_string(total) + " != mass " + f.mass.get_str());
    return check;
}

MatchingDistribution decompose(const BipartiteGraph& g, const FractionalMatching& f)
{
    if (auto check = validate_fractional_matching(g, f); !check)
        throw InfeasibleFractionalMatching("decompose: " + check.witness);
    const std::size_t m = mass_as_size(f.mass);

    // Peel face vertices off the residual h, keeping h / remaining inside the
    // size-m polytope. Each step either zeroes an edge of the chosen matching
    // or makes an uncovered vertex tight, so the minimal face containing the
    // residual loses a dimension every time.
    std::vector<Rational> residual = f.values;
    std::vector<Rational> left_sum(g.left_count, 0), right_sum(g.right_count, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        left_sum[g.edges[e].first] += residual[e];
        right_sum[g.edges[e].second] += residual[e];
    }
    Rational remaining = 1;

    MatchingDistribution dist;
    dist.matching_size = m;
    const std::size_t max_steps = g.edges.size() + 1;
    while (remaining > 0) {
        if (dist.atoms.size() >= max_steps)
            throw InvariantViolation("decompose: exceeded |E| + 1 atoms");
        std::vector<bool> usable(g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            usable[e] = residual[e] > 0;
        std::vector<bool> left_tight(g.left_count), right_tight(g.right_count);
        for (std::size_t v = 0; v < g.left_count; ++v)
            left_tight[v] = left_sum[v] == remaining;
        for (std::size_t u = 0; u < g.right_count; ++u)
            right_tight[u] = right_sum[u] == remaining;

        auto matching = face_vertex(g, usable, left_tight, right_tight, m);
        if (!matching)
            throw InvariantViolation("decompose: no size-" + std::to_string(m) +
                                     " matching on the residual face; residual left the polytope");

        Rational step = remaining;
        std::vector<bool> left_covered(g.left_count), right_covered(g.right_count);
        for (std::size_t e : *matching) {
            step = std::min(step, residual[e]);
            left_covered[g.edges[e].first] = true;
            right_covered[g.edges[e].second] = true;
        }
        for (std::size_t v = 0; v < g.left_count; ++v)
            if (!left_covered[v])
                step = std::min(step, Rational(remaining - left_sum[v]));
        for (std::size_t u = 0; u < g.right_count; ++u)
            if (!right_covered[u])
                step = std::min(step, Rational(remaining - right_sum[u]));

        for (std::size_t e : *matching) {
            residual[e] -= step;
            left_sum[g.edges[e].first] -= step;
            right_sum[g.edges[e].second] -= step;
        }
        remaining -= step;
        std::sort(matching->begin(), matching->end());
        dist.atoms.push_back({std::move(*matching), step});
    }
    for (std::size_t e = 0; e < residual.size(); ++e)
        if (residual[e] != 0)
            throw InvariantViolation("decompose: residual mass left on edge " + std::to_string(e));

    std::sort(dist.atoms.begin(), dist.atoms.end(),
              [](const MatchingAtom& x, const MatchingAtom& y) { return x.edges < y.edges; });
    return dist;
}

std::vector<Rational> marginals(const BipartiteGraph& g, const MatchingDistribution& dist)
{
    std::vector<Rational> out(g.edges.size(), 0);
    for (const auto& atom : dist.atoms)
        for (std::size_t e : atom.edges)
            out.at(e) += atom.probability;
    return out;
}

PolytopeCheck verify_decomposition(const BipartiteGraph& g, const FractionalMatching& f,
                                   const MatchingDistribution& dist)
{
    PolytopeCheck check;
    auto fail = [&](std::string why) {
        check.ok = false;
        check.witness = std::move(why);
        return check;
    };
    if (dist.atoms.size() > g.edges.size() + 1)
        return fail("atom count " + std::to_string(dist.atoms.size()) + " exceeds |E| + 1");
    Rational total = 0;
    for (std::size_t k = 0; k < dist.atoms.size(); ++k) {
        const auto& atom = dist.atoms[k];
        if (atom.probability <= 0 || atom.probability > 1)
            return fail("atom " + std::to_string(k) + " probability " + to_fraction_string(atom.probability));
        if (Rational(static_cast<unsigned long>(atom.edges.size())) != Rational(f.mass))
            return fail("atom " + std::to_string(k) + " has size " + std::to_string(atom.edges.size()));
        std::vector<bool> left(g.left_count), right(g.right_count);
        for (std::size_t e : atom.edges) {
            if (e >= g.edges.size())
                return fail("atom " + std::to_string(k) + " names a missing edge");
            auto [v, u] = g.edges[e];
            if (left[v] || right[u])
                return fail("atom " + std::to_string(k) + " is not a matching");
            left[v] = right[u] = true;
        }
        total += atom.probability;
    }
    if (total != 1)
        return fail("probabilities sum to " + to_fraction_string(total));
    const auto got = marginals(g, dist);
    for (std::size_t e = 0; e < got.size(); ++e)
        if (got[e] != f.values[e])
            return fail("edge " + std::to_string(e) + " marginal " + to_fraction_string(got[e]) +
                        " != " + to_fraction_string(f.values[e]));
    return check;
}

AtomSampler::AtomSampler(const MatchingDistribution& dist)
{
    if (dist.atoms.empty())
        throw std::invalid_argument("AtomSampler: empty distribution");
    denominator_ = 1;
    for (const auto& atom : dist.atoms)
        mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), atom.probability.get_den_mpz_t());
    mpz_class running = 0;
    for (const auto& atom : dist.atoms) {
        running += atom.probability.get_num() * (denominator_ / atom.probability.get_den());
        cumulative_.push_back(running);
    }
    if (running != denominator_)
        throw std::invalid_argument("AtomSampler: probabilities do not sum to 1");
}

std::size_t AtomSampler::draw(Rng& rng) const
{
    const mpz_class r = uniform_below(denominator_, rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    return static_cast<std::size_t>(it - cumulative_.begin());
}

const std::vector<std::size_t>& sample(const MatchingDistribution& dist, std::uint64_t seed)
{
    Rng rng(seed);
    return dist.atoms[AtomSampler(dist).draw(rng)].edges;
}

std::vector<std::size_t> maximum_matching(const BipartiteGraph& g)
{
    const std::size_t a = g.left_count;
    const std::size_t source = 0, sink = 1;
    FlowNetwork net(2 + a + g.right_count);
    for (std::size_t v = 0; v < a; ++v)
        net.add_edge(source, 2 + v, 1);
    for (std::size_t u = 0; u < g.right_count; ++u)
        net.add_edge(2 + a + u, sink, 1);
    std::vector<std::size_t> arcs;
    for (const auto& [v, u] : g.edges)
        arcs.push_back(net.add_edge(2 + v, 2 + a + u, 1));
    net.max_flow(source, sink);
    std::vector<std::size_t> matching;
    for (std::size_t e = 0; e < arcs.size(); ++e)
        if (net.flow_on(arcs[e]) > 0)
            matching.push_back(e);
    return matching;
}

std::string export_distribution(const MatchingDistribution& dist)
{
    std::ostringstream out;
    out << "matching_size " << dist.matching_size << '\n' << "atoms " << dist.atoms.size() << '\n';
    for (const auto& atom : dist.atoms) {
        out << to_fraction_string(atom.probability);
        for (std::size_t e : atom.edges)
            out << ' ' << e;
        out << '\n';
    }
    return out.str();
}

}  // namespace gridposet
