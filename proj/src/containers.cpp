#include "gridposet/containers.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gridposet/exact_counting.hpp"
#include "gridposet/seeding.hpp"
#include "gridposet/supersaturation.hpp"

namespace gridposet {

Rational sqrt_lower(int D)
{
    mpz_class scaled = mpz_class(D) * kSqrtScale * kSqrtScale;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rational r(root, mpz_class(kSqrtScale));
    r.canonicalize();
    return r;
}

Rational inverse_sqrt_upper(int D)
{
    const mpz_class q2 = mpz_class(kSqrtScale) * kSqrtScale;
    mpz_class c;
    mpz_class quotient = q2 / D;
    mpz_sqrt(c.get_mpz_t(), quotient.get_mpz_t());
    while (c * c * D < q2)
        ++c;
    Rational r(c, mpz_class(kSqrtScale));
    r.canonicalize();
    return r;
}

void ContainerParams::validate(const GridBox& box) const
{
    if (size_thresholds.size() != degree_thresholds.size() + 1)
        throw std::invalid_argument("ContainerParams: need k+1 size thresholds for k degree thresholds");
    if (Rational(box.total_points()) != size_thresholds.front())
        throw std::invalid_argument("ContainerParams: m_0 must equal the box size");
    for (const auto& d : degree_thresholds)
        if (d <= 0)
            throw std::invalid_argument("ContainerParams: degree thresholds must be positive");
    for (const auto& m : size_thresholds)
        if (m < 0)
            throw std::invalid_argument("ContainerParams: size thresholds must be nonnegative");
}

bool ContainerParams::ordering_as_stated() const
{
    for (std::size_t r = 1; r < degree_thresholds.size(); ++r)
        if (!(degree_thresholds[r - 1] > degree_thresholds[r]))
            return false;
    for (std::size_t r = 1; r < size_thresholds.size(); ++r)
        if (!(size_thresholds[r - 1] > size_thresholds[r]))
            return false;
    return true;
}

ContainerParams ContainerParams::standard(const GridBox& box)
{
    const Rational N(middle_layer_size(box));
    const int n = box.n();
    const int D = box.D();
    ContainerParams p;
    Rational d1(D, 2 * n);
    d1.canonicalize();
    Rational d2 = sqrt_lower(D) / Rational(2 * n);
    Rational three_n_over_D(3 * n, D);
    three_n_over_D.canonicalize();
    p.degree_thresholds = {d1, d2};
    p.size_thresholds = {Rational(box.total_points()), N * (Rational(2) + 2 * three_n_over_D),
                         N * (Rational(1) + three_n_over_D + inverse_sqrt_upper(D))};
    return p;
}

ContainerParams ContainerParams::trivial(const GridBox& box)
{
    ContainerParams p;
    p.size_thresholds = {Rational(box.total_points())};
    return p;
}

ComparabilityGraph::ComparabilityGraph(const GridBox& box, std::uint64_t cap) : box_(box)
{
    const std::vector<Point> points = enumerate_box(box, cap);
    adjacency_.assign(points.size(), PointBits(points.size()));
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (leq(points[a], points[b]) || leq(points[b], points[a])) {
                adjacency_[a].set(b);
                adjacency_[b].set(a);
            }
}

std::uint64_t ComparabilityGraph::edges_within(const PointBits& S) const
{
    std::uint64_t twice = 0;
    for (auto v = S.find_first(); v != PointBits::npos; v = S.find_next(v))
        twice += (adjacency_[v] & S).count();
    return twice / 2;
}

std::string to_string(PremiseStatus s)
{
    switch (s) {
    case PremiseStatus::vacuous:
        return "vacuous";
    case PremiseStatus::exhaustive:
        return "exhaustively verified";
    case PremiseStatus::audited:
        return "audited";
    }
    return "unknown";
}

PremiseAudit audit_container_premises(const GridBox& box, const ContainerParams& params, std::uint64_t seed,
                                      std::uint64_t samples, std::uint64_t exhaustive_up_to)
{
    PremiseAudit audit;
    const BigCount total = box.total_points();
    const bool exhaustive = total <= mpz_class(std::to_string(exhaustive_up_to));
    for (std::size_t j = 1; j < params.size_thresholds.size(); ++j) {
        const BigCount first = floor_of(params.size_thresholds[j]) + 1;  // smallest |S| > m_j
        if (first > total)
            continue;
        const Rational& d = params.degree_thresholds[j - 1];
        auto check = [&](const std::vector<Point>& S) {
            ++audit.sets_checked;
            const BigCount pairs = count_comparable_pairs_with_gap(S, 1);
            if (Rational(pairs) < d * Rational(static_cast<unsigned long>(S.size())) && audit.ok) {
                audit.ok = false;
                audit.witness = "round " + std::to_string(j) + ": set of size " + std::to_string(S.size()) +
                                " has only " + pairs.get_str() + " comparable pairs";
            }
        };
        if (exhaustive) {
            audit.status = PremiseStatus::exhaustive;
            const std::vector<Point> all = enumerate_box(box);
            const std::uint64_t first_size = std::stoull(first.get_str());
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
                if (static_cast<std::uint64_t>(__builtin_popcountll(mask)) < first_size)
                    continue;
                std::vector<Point> S;
                for (std::size_t k = 0; k < all.size(); ++k)
                    if (mask >> k & 1)
                        S.push_back(all[k]);
                check(S);
            }
        } else {
            if (audit.status == PremiseStatus::vacuous)
                audit.status = PremiseStatus::audited;
            const std::uint64_t size = box.checked_size(Limits{}.materialize);
            const std::uint64_t first_size = std::stoull(first.get_str());
            for (std::uint64_t s = 0; s < samples; ++s) {
                Rng rng(derive_seed(seed, j * 1'000'003ULL + s));
                const std::uint64_t k = first_size + uniform_below(size - first_size + 1, rng);
                check(random_subset(box, k, rng));
            }
        }
    }
    return audit;
}

namespace {

std::vector<std::size_t> size_limits(const ContainerParams& params)
{
    // |S| > m  <=>  |S| > floor(m) for integral |S|.
    std::vector<std::size_t> out;
    for (std::size_t r = 1; r < params.size_thresholds.size(); ++r) {
        const BigCount f = floor_of(params.size_thresholds[r]);
        out.push_back(f.fits_ulong_p() ? static_cast<std::size_t>(f.get_ui()) : SIZE_MAX);
    }
    return out;
}

std::size_t max_degree_vertex(const ComparabilityGraph& graph, const PointBits& S)
{
    std::size_t best = PointBits::npos;
    std::size_t best_degree = 0;
    for (auto v = S.find_first(); v != PointBits::npos; v = S.find_next(v)) {
        const std::size_t deg = (graph.neighbours(v) & S).count();
        if (best == PointBits::npos || deg > best_degree) {
            best = v;
            best_degree = deg;
        }
    }
    return best;
}

struct Explorer {
    const ComparabilityGraph& graph;
    const std::vector<std::size_t>& limits;
    std::uint64_t cap;
    std::set<PointBits> found;
    std::vector<std::size_t> max_fingerprint;
    std::uint64_t leaves = 0;

    void run(std::size_t round, PointBits S, PointBits T, std::vector<std::size_t> taken)
    {
        while (round < limits.size() && S.count() <= limits[round])
            ++round;
        if (round == limits.size()) {
            if (++leaves > cap)
                throw CapExceeded("container exploration exceeded " + std::to_string(cap) + " branches");
            for (std::size_t r = 0; r < taken.size(); ++r)
                max_fingerprint[r] = std::max(max_fingerprint[r], taken[r]);
            found.insert(T | S);
            return;
        }
        const std::size_t v = max_degree_vertex(graph, S);
        {
            PointBits S_in = S - graph.neighbours(v);
            S_in.reset(v);
            PointBits T_in = T;
            T_in.set(v);
            auto taken_in = taken;
            ++taken_in[round];
            run(round, std::move(S_in), std::move(T_in), std::move(taken_in));
        }
        S.reset(v);
        run(round, std::move(S), std::move(T), std::move(taken));
    }
};

}  // namespace

ContainerTrace container_for(const ComparabilityGraph& graph, const ContainerParams& params,
                             const PointBits& antichain)
{
    const auto limits = size_limits(params);
    ContainerTrace trace;
    trace.fingerprint.resize(limits.size());
    PointBits S(graph.size());
    S.set();
    PointBits T(graph.size());
    for (std::size_t r = 0; r < limits.size(); ++r) {
        while (S.count() > limits[r]) {
            const std::size_t v = max_degree_vertex(graph, S);
            if (antichain.test(v)) {
                T.set(v);
                trace.fingerprint[r].push_back(v);
                S -= graph.neighbours(v);
            }
            S.reset(v);
        }
    }
    trace.container = T | S;
    return trace;
}

bool ContainerFamily::covers(const PointBits& antichain) const
{
    return std::any_of(containers.begin(), containers.end(),
                       [&](const PointBits& c) { return antichain.is_subset_of(c); });
}

std::size_t ContainerFamily::largest_container() const
{
    std::size_t best = 0;
    for (const auto& c : containers)
        best = std::max(best, c.count());
    return best;
}

ContainerFamily build_containers(const GridBox& box, const ContainerParams& params, const Limits& limits)
{
    params.validate(box);
    ContainerFamily family;
    family.box = box;
    family.params = params;
    family.premise = audit_container_premises(box, params);
    if (!family.premise.ok)
        throw InvariantViolation("container premise fails: " + family.premise.witness);

    const ComparabilityGraph graph(box);
    const auto size_caps = size_limits(params);
    Explorer explorer{graph, size_caps, limits.objects, {}, std::vector<std::size_t>(size_caps.size(), 0)};
    PointBits all(graph.size());
    all.set();
    explorer.run(0, all, PointBits(graph.size()), std::vector<std::size_t>(size_caps.size(), 0));
    family.containers.assign(explorer.found.begin(), explorer.found.end());
    family.max_fingerprint = std::move(explorer.max_fingerprint);
    return family;
}

BinomialSumBound binomial_sum_bound(const BigCount& m, const BigCount& t)
{
    if (t < 1 || t > m)
        throw std::out_of_range("binomial_sum_bound: need 1 <= t <= m");
    BinomialSumBound out;
    const unsigned long steps = t.get_ui();
    BigCount term = 1;
    out.exact = 1;
    for (unsigned long s = 1; s <= steps; ++s) {
        term = term * (m - (s - 1)) / s;
        out.exact += term;
    }
    const Decimal tt = to_decimal(t);
    out.estimate = boost::multiprecision::exp(tt * boost::multiprecision::log(boost::multiprecision::exp(Decimal(1)) *
                                                                              to_decimal(m) / tt));
    out.holds = to_decimal(out.exact) <= out.estimate;
    return out;
}

LemmaBounds lemma_bounds(const GridBox& box, const ContainerParams& params, std::uint64_t exact_pool_limit)
{
    params.validate(box);
    LemmaBounds b;
    const BigCount total = box.total_points();
    b.family_size_bound = 1;
    b.log2_family_size_bound = 0;
    BigCount fingerprint_total = 0;
    for (std::size_t r = 1; r <= params.rounds(); ++r) {
        const Rational& d = params.degree_thresholds[r - 1];
        const BigCount pool = std::min(floor_of(params.size_thresholds[r - 1]), total);
        const BigCount limit = floor_of(Rational(pool) / (2 * d + 1));
        b.pool_sizes.push_back(pool);
        b.fingerprint_limits.push_back(limit);
        fingerprint_total += limit;

        if (limit == 0)
            continue;
        if (limit >= pool) {
            b.family_size_bound *= power(mpz_class(2), pool.get_ui());
            b.log2_family_size_bound += to_decimal(pool);
        } else if (pool <= mpz_class(std::to_string(exact_pool_limit))) {
            const BigCount sum = binomial_sum_bound(pool, limit).exact;
            b.family_size_bound *= sum;
            b.log2_family_size_bound += log2_of(sum);
        } else {
            b.family_bound_exact = false;
            const Decimal t = to_decimal(limit);
            b.log2_family_size_bound +=
                t * log2_of(boost::multiprecision::exp(Decimal(1)) * to_decimal(pool) / t);
        }
    }
    if (!b.family_bound_exact)
        b.family_size_bound = 0;

    const std::size_t k = params.rounds();
    b.stated_container_size_bound = params.size_thresholds[k];
    for (std::size_t r = 1; r <= k; ++r)
        b.stated_container_size_bound +=
            (params.size_thresholds[r] - 1) / (2 * params.degree_thresholds[r - 1] + 1);
    b.derived_container_size_bound =
        std::min(Rational(total), Rational(params.size_thresholds[k] + Rational(fingerprint_total)));
    return b;
}

bool BoundReport::consistent() const
{
    const BigCount floor_size = floor_of(max_container_size_bound);
    if (lemma.family_bound_exact) {
        const BigCount reach = lemma.family_size_bound * power(mpz_class(2), floor_size.get_ui());
        if (reach < power(mpz_class(2), middle_layer.get_ui()))
            return false;
        if (exact_count && reach < *exact_count)
            return false;
        return true;
    }
    if (certified_log2_upper < to_decimal(middle_layer))
        return false;
    return !exact_log2 || certified_log2_upper >= *exact_log2;
}

BoundReport certified_upper_bound(const GridBox& box, const Limits& limits)
{
    BoundReport report;
    report.box = box;
    report.middle_layer = middle_layer_size(box);
    const ContainerParams params = ContainerParams::standard(box);
    report.ordering_as_stated = params.ordering_as_stated();
    report.lemma = lemma_bounds(box, params);
    if (box.total_points() <= mpz_class(std::to_string(limits.materialize)))
        report.premise = audit_container_premises(box, params, 0, 32);
    report.log2_container_count_bound = report.lemma.log2_family_size_bound;
    report.max_container_size_bound = report.lemma.derived_container_size_bound;
    report.certified_log2_upper = report.log2_container_count_bound + to_decimal(report.max_container_size_bound);
    if (box.total_points() <= mpz_class(std::to_string(limits.enumerate))) {
        try {
            report.exact_count = count_downsets(box, limits);
            report.exact_log2 = log2_of(*report.exact_count);
        } catch (const CapExceeded&) {
        }
    }
    return report;
}

std::vector<Point> bits_to_points(const GridBox& box, const PointBits& bits)
{
    std::vector<Point> out;
    for (auto v = bits.find_first(); v != PointBits::npos; v = bits.find_next(v))
        out.push_back(box.point_at(v));
    return out;
}

}  // namespace gridposet
