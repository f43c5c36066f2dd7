#include "gridposet/chain_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gridposet {

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::full:
        return "full";
    case Regime::scaled:
        return "scaled";
    case Regime::fallback:
        return "fallback";
    }
    return "unknown";
}

namespace {

BipartiteGraph bipartite_view(const LevelGraph& g)
{
    BipartiteGraph bg;
    bg.left_count = g.lower().size();
    bg.right_count = g.upper().size();
    bg.edges.reserve(g.edges().size());
    for (const auto& e : g.edges())
        bg.edges.emplace_back(e.lower, e.upper);
    return bg;
}

LevelPlan plan_level(const LevelGraph& g)
{
    const GridBox& box = g.box();
    const int i = g.level();
    const int top = box.max_rank();
    LevelPlan plan;
    plan.level = i;
    plan.mirrored = 2 * i > top;
    plan.reference_level = plan.mirrored ? top - 1 - i : i;
    plan.reference_size = plan.mirrored ? g.upper().size() : g.lower().size();

    const int n = box.n();
    const int D = box.D();
    if (2 * plan.reference_level <= (n - 1) * (D - 1)) {
        plan.regime = Regime::full;
        plan.theta = 1;
        plan.target_size = plan.reference_size;
    } else if (D >= 4) {
        plan.regime = Regime::scaled;
        const BigCount scaled = plan.reference_size * (D - 3) / (D - 1);  // floor
        plan.theta = Rational(scaled, plan.reference_size);
        plan.theta.canonicalize();
        plan.target_size = scaled;
    } else {
        plan.regime = Regime::fallback;
        plan.theta = 0;
    }
    return plan;
}

}  // namespace

LevelFraction build_level_fraction(const LevelGraph& g)
{
    LevelFraction lf;
    lf.plan = plan_level(g);
    lf.graph = bipartite_view(g);

    if (lf.plan.regime == Regime::fallback) {
        const auto matching = maximum_matching(lf.graph);
        lf.fraction.values.assign(lf.graph.edges.size(), 0);
        for (std::size_t e : matching)
            lf.fraction.values[e] = 1;
        lf.fraction.mass = static_cast<unsigned long>(matching.size());
        lf.plan.target_size = lf.fraction.mass;
    } else {
        std::vector<std::int64_t> deg_lower(g.lower().size()), deg_upper(g.upper().size());
        for (std::size_t v = 0; v < deg_lower.size(); ++v)
            deg_lower[v] = summed_degree_lower(g, v);
        for (std::size_t u = 0; u < deg_upper.size(); ++u)
            deg_upper[u] = summed_degree_upper(g, u);

        lf.unscaled.reserve(g.edges().size());
        lf.fraction.values.reserve(g.edges().size());
        for (const auto& e : g.edges()) {
            const std::int64_t deg = lf.plan.mirrored ? deg_upper[e.upper] : deg_lower[e.lower];
            Rational f(static_cast<long>(e.weight), static_cast<long>(deg));
            f.canonicalize();
            lf.fraction.values.push_back(f * lf.plan.theta);
            lf.unscaled.push_back(std::move(f));
        }
        lf.fraction.mass = lf.plan.target_size;
    }

    if (auto check = validate_fractional_matching(lf.graph, lf.fraction); !check)
        throw InfeasibleFractionalMatching("level " + std::to_string(g.level()) + " of " + g.box().to_string() +
                                           " (" + to_string(lf.plan.regime) + "): " + check.witness);
    return lf;
}

MarginalBoundCheck check_marginal_sum_bound(const LevelGraph& g, const LevelFraction& lf)
{
    MarginalBoundCheck result;
    const GridBox& box = g.box();
    const int n = box.n();
    const int D = box.D();
    const int delta = box.max_rank() - 2 * (lf.plan.reference_level + 1);
    if (delta >= n - 1) {
        result.bound = 1;
    } else if (D >= 4) {
        result.bound = Rational(D - 1, D - 3);
        result.bound.canonicalize();
    } else {
        result.in_scope = false;
        return result;
    }

    std::vector<Rational> values = lf.unscaled;
    if (values.empty()) {
        // Fallback levels carry no w/deg values; rebuild them for the check.
        for (const auto& e : g.edges()) {
            const std::int64_t deg = lf.plan.mirrored ? summed_degree_upper(g, e.upper)
                                                      : summed_degree_lower(g, e.lower);
            values.emplace_back(static_cast<long>(e.weight), static_cast<long>(deg));
            values.back().canonicalize();
        }
    }
    const std::size_t far_count = lf.plan.mirrored ? g.lower().size() : g.upper().size();
    std::vector<Rational> sums(far_count, 0);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto& edge = g.edges()[e];
        sums[lf.plan.mirrored ? edge.lower : edge.upper] += values[e];
    }
    for (std::size_t x = 0; x < far_count; ++x) {
        if (sums[x] > result.worst_sum)
            result.worst_sum = sums[x];
        if (sums[x] > result.bound && result.ok) {
            result.ok = false;
            const Point& p = lf.plan.mirrored ? g.lower()[x] : g.upper()[x];
            result.witness = "vertex " + p.to_string() + " sum " + to_fraction_string(sums[x]) + " > " +
                             to_fraction_string(result.bound);
        }
    }
    return result;
}

Rational chain_count_bound(const GridBox& box)
{
    Rational factor(box.D() + 3 * box.n(), box.D());
    factor.canonicalize();
    return factor * Rational(middle_layer_size(box));
}

bool check_chain_count_bound(const ChainDecomposition& cd)
{
    return Rational(static_cast<unsigned long>(cd.chain_count())) <= chain_count_bound(cd.box);
}

ChainSampler::ChainSampler(const GridBox& box, const Limits& limits)
    : box_(box), points_(box.checked_size(limits.materialize))
{
    for (int i = 0; i < box.max_rank(); ++i) {
        LevelGraph graph = build_level_graph(box, i, limits.materialize);
        LevelFraction fraction = build_level_fraction(graph);
        MatchingDistribution dist = decompose(fraction.graph, fraction.fraction);
        AtomSampler atom_sampler(dist);
        std::vector<std::uint64_t> lower_ids, upper_ids;
        lower_ids.reserve(graph.lower().size());
        for (const auto& p : graph.lower())
            lower_ids.push_back(box.index_of(p));
        upper_ids.reserve(graph.upper().size());
        for (const auto& p : graph.upper())
            upper_ids.push_back(box.index_of(p));
        in_scope_ = in_scope_ && fraction.plan.in_theorem_scope();
        LevelPlan plan = fraction.plan;
        levels_.push_back(LevelState{std::move(plan), std::move(graph), std::move(fraction), std::move(dist),
                                     std::move(atom_sampler), std::move(lower_ids), std::move(upper_ids)});
    }
}

std::vector<std::int64_t> ChainSampler::sample_successors(std::uint64_t seed,
                                                          std::vector<std::size_t>* matching_sizes) const
{
    std::vector<std::int64_t> up(points_, -1);
    if (matching_sizes)
        matching_sizes->clear();
    for (const LevelState& level : levels_) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(level.plan.level)));
        const auto& atom = level.distribution.atoms[level.sampler.draw(rng)];
        for (std::size_t e : atom.edges) {
            const auto& edge = level.graph.edges()[e];
            up[level.lower_ids[edge.lower]] = static_cast<std::int64_t>(level.upper_ids[edge.upper]);
        }
        if (matching_sizes)
            matching_sizes->push_back(atom.edges.size());
    }
    return up;
}

ChainDecomposition ChainSampler::sample(std::uint64_t seed) const
{
    ChainDecomposition cd;
    cd.box = box_;
    cd.seed = seed;
    cd.in_theorem_scope = in_scope_;
    const auto up = sample_successors(seed, &cd.matching_sizes);
    std::vector<bool> has_below(points_, false);
    for (std::int64_t next : up)
        if (next >= 0)
            has_below[static_cast<std::size_t>(next)] = true;
    // Index order is lexicographic, so starting chains in index order sorts
    // them by minimal element.
    for (std::uint64_t x = 0; x < points_; ++x) {
        if (has_below[x])
            continue;
        std::vector<std::uint64_t> chain{x};
        for (std::int64_t next = up[x]; next >= 0; next = up[static_cast<std::size_t>(next)])
            chain.push_back(static_cast<std::uint64_t>(next));
        cd.chains.push_back(std::move(chain));
    }
    return cd;
}

ChainAudit audit_chain_decomposition(const ChainSampler& sampler, const ChainDecomposition& cd)
{
    ChainAudit audit;
    const GridBox& box = sampler.box();
    auto note = [&](bool& flag, const std::string& why) {
        if (flag && audit.witness.empty())
            audit.witness = why;
        flag = false;
    };

    std::vector<int> seen(sampler.point_count(), 0);
    for (const auto& chain : cd.chains) {
        for (std::size_t k = 0; k < chain.size(); ++k) {
            if (chain[k] >= seen.size()) {
                note(audit.partitions, "chain element outside the box");
                continue;
            }
            ++seen[chain[k]];
            if (k > 0) {
                const Point lo = box.point_at(chain[k - 1]);
                const Point hi = box.point_at(chain[k]);
                if (!leq(lo, hi) || rank(hi) != rank(lo) + 1)
                    note(audit.consecutive, lo.to_string() + " -> " + hi.to_string() + " is not a cover pair");
            }
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        note(audit.partitions, "chains do not partition the box");

    if (!check_chain_count_bound(cd))
        note(audit.count_bound, "N = " + std::to_string(cd.chain_count()) + " exceeds " +
                                    to_fraction_string(chain_count_bound(box)));

    const auto& levels = sampler.levels();
    for (std::size_t l = 0; l < levels.size() && l < cd.matching_sizes.size(); ++l) {
        const LevelPlan& plan = levels[l].plan;
        const BigCount got(static_cast<unsigned long>(cd.matching_sizes[l]));
        if (plan.regime == Regime::full && got != plan.reference_size)
            note(audit.saturation, "level " + std::to_string(plan.level) + " matched " + got.get_str() + " of " +
                                       plan.reference_size.get_str());
        if (plan.regime == Regime::scaled &&
            Rational(got) < Rational(box.D() - 3, box.D()) * Rational(plan.reference_size))
            note(audit.scaled_size, "level " + std::to_string(plan.level) + " matched only " + got.get_str());
    }

    if (cd.in_theorem_scope) {
        // Doubled ranks keep the half-integer window ends exact.
        const int k = box.middle_rank();
        const int lo2 = 2 * k - (box.n() - 1);
        const int hi2 = 2 * k + (box.n() + 1);
        for (const auto& chain : cd.chains) {
            const int bottom = rank(box.point_at(chain.front()));
            const int top = rank(box.point_at(chain.back()));
            const int closest = top < k ? top : (bottom > k ? bottom : k);
            if (2 * closest < lo2 || 2 * closest > hi2)
                note(audit.window, "chain from " + box.point_at(chain.front()).to_string() +
                                       " has closest rank " + std::to_string(closest));
        }
    }
    return audit;
}

PairProbabilityEstimate estimate_pair_probability(const ChainSampler& sampler, const Point& x, const Point& y,
                                                  std::uint64_t trials, std::uint64_t seed)
{
    const GridBox& box = sampler.box();
    box.require_contains(x);
    box.require_contains(y);
    PairProbabilityEstimate est;
    est.trials = trials;
    est.gap = rank(y) - rank(x);
    if (est.gap > 0) {
        Rational ratio(box.n(), box.D());
        ratio.canonicalize();
        Rational bound(factorial(static_cast<unsigned long>(est.gap)));
        for (int s = 0; s < est.gap; ++s)
            bound *= ratio;
        est.bound = bound;
    }
    const double p = std::min(1.0, est.bound.get_d());
    est.standard_error = trials ? std::sqrt(p * (1 - p) / static_cast<double>(trials)) : 0.0;
    if (trials == 0 || !strictly_below(x, y))
        return est;

    const std::uint64_t from = box.index_of(x);
    const std::uint64_t to = box.index_of(y);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto up = sampler.sample_successors(derive_seed(seed, t));
        std::int64_t at = static_cast<std::int64_t>(from);
        for (int s = 0; s < est.gap && at >= 0; ++s)
            at = up[static_cast<std::size_t>(at)];
        if (at == static_cast<std::int64_t>(to))
            ++est.hits;
    }
    est.frequency = Rational(static_cast<unsigned long>(est.hits), static_cast<unsigned long>(trials));
    est.frequency.canonicalize();
    return est;
}

std::string export_chains(const ChainDecomposition& cd)
{
    std::ostringstream out;
    out << "# box n=" << cd.box.n() << " D=" << cd.box.D() << '\n'
        << "# seed " << cd.seed << '\n'
        << "# chains " << cd.chain_count() << '\n'
        << "# bound " << to_fraction_string(chain_count_bound(cd.box)) << '\n';
    for (const auto& chain : cd.chains) {
        for (std::size_t k = 0; k < chain.size(); ++k)
            out << (k ? " " : "") << cd.box.point_at(chain[k]).to_compact();
        out << '\n';
    }
    return out.str();
}

}  // namespace gridposet
