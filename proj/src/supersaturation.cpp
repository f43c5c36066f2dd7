#include "gridposet/supersaturation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gridposet {

namespace {

bool coordinatewise_leq(const std::vector<int>& x, const std::vector<int>& y)
{
    for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] > y[t])
            return false;
    return true;
}

}  // namespace

BigCount count_comparable_pairs_with_gap(const std::vector<Point>& X, int a)
{
    if (X.empty())
        return 0;
    const std::size_t dim = X.front().dim();
    std::vector<Point> points = X;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::map<int, std::vector<const std::vector<int>*>> buckets;
    for (const Point& p : points) {
        if (p.dim() != dim)
            throw std::invalid_argument("count_comparable_pairs_with_gap: mixed dimensions");
        buckets[rank(p)].push_back(&p.coords());
    }
    const int gap = std::max(a, 1);
    std::uint64_t count = 0;
    for (auto lo = buckets.begin(); lo != buckets.end(); ++lo) {
        for (auto hi = buckets.lower_bound(lo->first + gap); hi != buckets.end(); ++hi)
            for (const auto* x : lo->second)
                for (const auto* y : hi->second)
                    count += coordinatewise_leq(*x, *y) ? 1 : 0;
    }
    return BigCount(std::to_string(count));
}

Rational supersaturation_threshold(const GridBox& box, int a)
{
    Rational factor(box.D() + 3 * box.n(), box.D());
    factor.canonicalize();
    return Rational(a) * factor * Rational(middle_layer_size(box));
}

SupersaturationReport check_supersaturation(const GridBox& box, const std::vector<Point>& X, int a)
{
    if (a < 1)
        throw std::invalid_argument("check_supersaturation: a must be >= 1");
    std::vector<Point> points = X;
    for (const Point& p : points)
        box.require_contains(p);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    SupersaturationReport r;
    r.box = box;
    r.a = a;
    r.set_size = points.size();
    r.raw_slack = Rational(static_cast<unsigned long>(points.size())) - supersaturation_threshold(box, a);
    r.slack = r.raw_slack > 0 ? r.raw_slack : Rational(0);
    r.observed_pairs = count_comparable_pairs_with_gap(points, a);
    Rational scale(power(mpz_class(box.D()), static_cast<unsigned long>(a)),
                   factorial(static_cast<unsigned long>(a)) * power(mpz_class(box.n()), static_cast<unsigned long>(a)));
    scale.canonicalize();
    r.bound = r.slack * scale;
    return r;
}

std::string csv_header()
{
    return "n,D,a,size,b,bound,observed,pass";
}

std::string to_csv_row(const SupersaturationReport& r)
{
    std::ostringstream out;
    out << r.box.n() << ',' << r.box.D() << ',' << r.a << ',' << r.set_size << ',' << to_fraction_string(r.slack)
        << ',' << to_fraction_string(r.bound) << ',' << r.observed_pairs.get_str() << ','
        << (r.satisfied() ? "true" : "false");
    return out.str();
}

std::vector<Point> random_subset(const GridBox& box, std::uint64_t size, Rng& rng, std::uint64_t cap)
{
    const std::uint64_t total = box.checked_size(cap);
    if (size > total)
        throw std::invalid_argument("random_subset: size exceeds box");
    std::vector<std::uint64_t> ids(total);
    std::iota(ids.begin(), ids.end(), 0);
    for (std::uint64_t k = 0; k < size; ++k)
        std::swap(ids[k], ids[k + uniform_below(total - k, rng)]);
    ids.resize(size);
    std::sort(ids.begin(), ids.end());
    std::vector<Point> out;
    out.reserve(size);
    for (auto id : ids)
        out.push_back(box.point_at(id));
    return out;
}

namespace {

void record(SupersaturationAudit& audit, SupersaturationReport report, bool keep)
{
    if (report.premise_active())
        ++audit.active_checks;
    if (!report.satisfied())
        ++audit.violations;
    if (keep || !report.satisfied())
        audit.reports.push_back(std::move(report));
}

}  // namespace

SupersaturationAudit exhaustive_supersaturation_audit(const GridBox& box, const std::vector<int>& gaps,
                                                      bool keep_reports)
{
    const std::uint64_t total = box.checked_size(20);
    const std::vector<Point> all = enumerate_box(box);
    SupersaturationAudit audit;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
        std::vector<Point> X;
        for (std::uint64_t k = 0; k < total; ++k)
            if (mask >> k & 1)
                X.push_back(all[k]);
        ++audit.sets_checked;
        for (int a : gaps)
            record(audit, check_supersaturation(box, X, a), keep_reports);
    }
    return audit;
}

SupersaturationAudit random_supersaturation_audit(const GridBox& box, const std::vector<int>& gaps,
                                                  std::uint64_t sets, std::uint64_t seed)
{
    const std::uint64_t total = box.checked_size(Limits{}.materialize);
    std::vector<std::pair<int, std::uint64_t>> feasible;  // (a, smallest size with b > 0)
    for (int a : gaps) {
        const mpz_class first = floor_of(supersaturation_threshold(box, a)) + 1;
        if (first <= mpz_class(std::to_string(total)))
            feasible.emplace_back(a, std::stoull(first.get_str()));
    }
    SupersaturationAudit audit;
    if (feasible.empty())
        return audit;
    for (std::uint64_t s = 0; s < sets; ++s) {
        Rng rng(derive_seed(seed, s));
        const auto [a, first] = feasible[uniform_below(feasible.size(), rng)];
        const std::uint64_t size = first + uniform_below(total - first + 1, rng);
        ++audit.sets_checked;
        record(audit, check_supersaturation(box, random_subset(box, size, rng), a), true);
    }
    return audit;
}

}  // namespace gridposet
