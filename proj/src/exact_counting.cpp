#include "gridposet/exact_counting.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gridposet {

namespace {

constexpr std::uint64_t kMaskBits = 64;

std::uint64_t mask_box_size(const GridBox& box, std::uint64_t cap)
{
    return box.checked_size(std::min(cap, kMaskBits));
}

PointMask low_bits(std::uint64_t count)
{
    return count >= 64 ? ~PointMask{0} : ((PointMask{1} << count) - 1);
}

// Points immediately below each point (x - e_t), as masks.
std::vector<PointMask> lower_cover_masks(const GridBox& box, std::uint64_t size)
{
    std::vector<PointMask> covers(size, 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        Point x = box.point_at(idx);
        for (std::size_t t = 0; t < x.dim(); ++t) {
            if (x[t] == 0)
                continue;
            Point y = x;
            --y[t];
            covers[idx] |= PointMask{1} << box.index_of(y);
        }
    }
    return covers;
}

bool closed_downward(PointMask set, const std::vector<PointMask>& covers)
{
    for (PointMask rest = set; rest; rest &= rest - 1) {
        const int i = std::countr_zero(rest);
        if ((covers[static_cast<std::size_t>(i)] & ~set) != 0)
            return false;
    }
    return true;
}

class ObjectBudget {
public:
    explicit ObjectBudget(std::uint64_t cap) : cap_(cap) {}
    void spend()
    {
        if (++used_ > cap_)
            throw CapExceeded("enumeration visited more than " + std::to_string(cap_) + " objects");
    }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

// Antichains containing `chosen` whose further elements all have index >=
// the lowest set bit of `available`.
template <typename Visit>
void walk_antichains(PointMask chosen, PointMask available, const std::vector<PointMask>& comparable,
                     ObjectBudget& budget, Visit& visit)
{
    budget.spend();
    visit(chosen);
    for (PointMask rest = available; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const PointMask bit = PointMask{1} << j;
        // Only indices above j remain candidates in this branch.
        const PointMask above = rest & ~bit & ~(bit - 1);
        walk_antichains(chosen | bit, above & ~comparable[static_cast<std::size_t>(j)], comparable,
                        budget, visit);
    }
}

void search_max_antichain(int size, PointMask available, const std::vector<PointMask>& comparable,
                          int& best)
{
    best = std::max(best, size);
    for (PointMask rest = available; rest; rest &= rest - 1) {
        if (size + std::popcount(rest) <= best)
            return;
        const int j = std::countr_zero(rest);
        const PointMask bit = PointMask{1} << j;
        const PointMask above = rest & ~bit & ~(bit - 1);
        search_max_antichain(size + 1, above & ~comparable[static_cast<std::size_t>(j)], comparable, best);
    }
}

// Down-sets of a box, split by the first coordinate: B is a down-set iff its
// slices B_0 ⊇ B_1 ⊇ ... ⊇ B_{n-1} are down-sets of the (D-1)-box. The
// slices are the profile this enumeration memoizes on.
struct SliceLattice {
    std::vector<PointMask> slices;
    // subsets[j]: indices of slices contained in slices[j].
    std::vector<std::vector<std::uint32_t>> subsets;
};

SliceLattice build_slice_lattice(const GridBox& slice_box, const Limits& limits)
{
    SliceLattice lattice;
    lattice.slices = enumerate_downset_masks(slice_box, limits);
    const auto& s = lattice.slices;
    const auto count = static_cast<std::uint64_t>(s.size());
    if (count > 0 && count > limits.pair_work / count)
        throw CapExceeded(std::to_string(count) + " slice down-sets of " + slice_box.to_string() +
                          " need more than " + std::to_string(limits.pair_work) + " containment tests");
    lattice.subsets.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
        for (std::size_t t = 0; t < s.size(); ++t)
            if ((s[t] & ~s[j]) == 0)
                lattice.subsets[j].push_back(static_cast<std::uint32_t>(t));
    return lattice;
}

void compose_chains(const SliceLattice& lattice, int n, std::uint64_t slice_points, int depth,
                    std::uint32_t above, PointMask partial, ObjectBudget& budget,
                    std::vector<PointMask>& out)
{
    if (depth == n) {
        budget.spend();
        out.push_back(partial);
        return;
    }
    auto place = [&](std::uint32_t j) {
        const PointMask shifted = lattice.slices[j] << (static_cast<std::uint64_t>(depth) * slice_points);
        compose_chains(lattice, n, slice_points, depth + 1, j, partial | shifted, budget, out);
    };
    if (depth == 0) {
        for (std::uint32_t j = 0; j < lattice.slices.size(); ++j)
            place(j);
    } else {
        for (std::uint32_t j : lattice.subsets[above])
            place(j);
    }
}

}  // namespace

bool HDPartition::is_valid() const
{
    if (n < 0 || d < 0)
        return false;
    const BigCount expected = power(mpz_class(n), static_cast<unsigned long>(d));
    if (mpz_class(static_cast<unsigned long>(entries.size())) != expected)
        return false;
    if (std::any_of(entries.begin(), entries.end(), [&](int e) { return e < 0 || e > n; }))
        return false;
    std::size_t stride = 1;
    for (int axis = d - 1; axis >= 0; --axis) {
        for (std::size_t idx = 0; idx < entries.size(); ++idx) {
            const std::size_t coord = (idx / stride) % static_cast<std::size_t>(n);
            if (coord + 1 < static_cast<std::size_t>(n) && entries[idx] < entries[idx + stride])
                return false;
        }
        stride *= static_cast<std::size_t>(n);
    }
    return true;
}

bool is_antichain(const std::vector<Point>& points)
{
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (leq(points[a], points[b]) || leq(points[b], points[a]))
                return false;
    return true;
}

bool is_downset(const GridBox& box, const std::vector<Point>& points)
{
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    for (const Point& x : sorted) {
        if (!box.contains(x))
            return false;
        for (std::size_t t = 0; t < x.dim(); ++t) {
            if (x[t] == 0)
                continue;
            Point y = x;
            --y[t];
            if (!std::binary_search(sorted.begin(), sorted.end(), y))
                return false;
        }
    }
    return true;
}

std::vector<PointMask> comparability_masks(const GridBox& box)
{
    const std::uint64_t size = mask_box_size(box, kMaskBits);
    const std::vector<Point> points = enumerate_box(box);
    std::vector<PointMask> masks(size, 0);
    for (std::uint64_t a = 0; a < size; ++a)
        for (std::uint64_t b = 0; b < size; ++b)
            if (a != b && (leq(points[a], points[b]) || leq(points[b], points[a])))
                masks[a] |= PointMask{1} << b;
    return masks;
}

void for_each_antichain(const GridBox& box, const std::function<void(PointMask)>& visit,
                        const Limits& limits)
{
    const std::uint64_t size = mask_box_size(box, limits.enumerate);
    const auto comparable = comparability_masks(box);
    ObjectBudget budget(limits.objects);
    auto call = [&](PointMask m) { visit(m); };
    walk_antichains(0, low_bits(size), comparable, budget, call);
}

BigCount count_antichains(const GridBox& box, const Limits& limits)
{
    const std::uint64_t size = mask_box_size(box, limits.enumerate);
    const auto comparable = comparability_masks(box);
    ObjectBudget budget(limits.objects);
    std::uint64_t count = 0;
    auto tally = [&](PointMask) { ++count; };
    walk_antichains(0, low_bits(size), comparable, budget, tally);
    return BigCount(std::to_string(count));
}

std::vector<PointMask> enumerate_downset_masks(const GridBox& box, const Limits& limits)
{
    const std::uint64_t size = mask_box_size(box, kMaskBits);
    std::vector<PointMask> out;
    if (box.D() == 1) {
        for (std::uint64_t j = 0; j <= size; ++j)
            out.push_back(low_bits(j));
        return out;
    }
    if (size < limits.subset_filter_below) {
        const auto covers = lower_cover_masks(box, size);
        for (PointMask set = 0; set < (PointMask{1} << size); ++set)
            if (closed_downward(set, covers))
                out.push_back(set);
        return out;
    }
    const GridBox slice_box(box.n(), box.D() - 1);
    const SliceLattice lattice = build_slice_lattice(slice_box, limits);
    const std::uint64_t slice_points = size / static_cast<std::uint64_t>(box.n());
    ObjectBudget budget(limits.objects);
    compose_chains(lattice, box.n(), slice_points, 0, 0, 0, budget, out);
    return out;
}

BigCount count_downsets(const GridBox& box, const Limits& limits)
{
    if (box.D() == 1)
        return BigCount(box.n() + 1);
    if (box.total_points() < mpz_class(std::to_string(limits.subset_filter_below)) &&
        box.total_points() <= 64) {
        box.checked_size(limits.enumerate);
        const std::uint64_t size = mask_box_size(box, kMaskBits);
        const auto covers = lower_cover_masks(box, size);
        std::uint64_t count = 0;
        for (PointMask set = 0; set < (PointMask{1} << size); ++set)
            count += closed_downward(set, covers) ? 1 : 0;
        return BigCount(std::to_string(count));
    }
    const GridBox slice_box(box.n(), box.D() - 1);
    slice_box.checked_size(std::min(limits.enumerate, kMaskBits));
    const SliceLattice lattice = build_slice_lattice(slice_box, limits);

    // chains[j] = number of chains S_j = B_t ⊇ B_{t+1} ⊇ ... ⊇ B_{n-1}.
    std::vector<BigCount> chains(lattice.slices.size(), BigCount(1));
    for (int len = 1; len < box.n(); ++len) {
        std::vector<BigCount> longer(chains.size());
        for (std::size_t j = 0; j < chains.size(); ++j)
            for (std::uint32_t t : lattice.subsets[j])
                longer[j] += chains[t];
        chains = std::move(longer);
    }
    BigCount total = 0;
    for (const auto& c : chains)
        total += c;
    return total;
}

std::vector<Point> mask_to_points(const GridBox& box, PointMask mask)
{
    std::vector<Point> out;
    for (PointMask rest = mask; rest; rest &= rest - 1)
        out.push_back(box.point_at(static_cast<std::uint64_t>(std::countr_zero(rest))));
    return out;
}

PointMask points_to_mask(const GridBox& box, const std::vector<Point>& points)
{
    mask_box_size(box, kMaskBits);
    PointMask mask = 0;
    for (const Point& x : points)
        mask |= PointMask{1} << box.index_of(x);
    return mask;
}

DownSet antichain_to_downset(const GridBox& box, const Antichain& antichain)
{
    if (!is_antichain(antichain.elements))
        throw std::invalid_argument("antichain_to_downset: elements are not pairwise incomparable");
    for (const Point& a : antichain.elements)
        box.require_contains(a);
    DownSet out;
    if (antichain.elements.empty())
        return out;
    // Down-closure: every box point below some element.
    const std::uint64_t size = box.checked_size(Limits{}.materialize);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        Point x = box.point_at(idx);
        if (std::any_of(antichain.elements.begin(), antichain.elements.end(),
                        [&](const Point& a) { return leq(x, a); }))
            out.elements.push_back(std::move(x));
    }
    return out;
}

Antichain downset_to_antichain(const DownSet& downset)
{
    Antichain out;
    for (const Point& b : downset.elements) {
        const bool maximal = std::none_of(downset.elements.begin(), downset.elements.end(),
                                          [&](const Point& c) { return strictly_below(b, c); });
        if (maximal)
            out.elements.push_back(b);
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

HDPartition downset_to_partition(const GridBox& box, const DownSet& downset)
{
    if (!is_downset(box, downset.elements))
        throw std::invalid_argument("downset_to_partition: malformed down-set");
    HDPartition p;
    p.d = box.D() - 1;
    p.n = box.n();
    const GridBox fibers_shape(box.n(), std::max(1, p.d));
    p.entries.assign(p.d == 0 ? 1 : fibers_shape.checked_size(Limits{}.materialize), 0);
    for (const Point& x : downset.elements) {
        std::size_t fiber = 0;
        for (int t = 0; t < p.d; ++t)
            fiber = fiber * static_cast<std::size_t>(box.n()) + static_cast<std::size_t>(x[static_cast<std::size_t>(t)]);
        p.entries[fiber] = std::max(p.entries[fiber], x[static_cast<std::size_t>(p.d)] + 1);
    }
    return p;
}

DownSet partition_to_downset(const HDPartition& partition)
{
    if (!partition.is_valid())
        throw std::invalid_argument("partition_to_downset: entries are not a valid partition");
    const GridBox box(partition.n, partition.d + 1);
    DownSet out;
    for (std::size_t fiber = 0; fiber < partition.entries.size(); ++fiber) {
        std::vector<int> coords(static_cast<std::size_t>(partition.d + 1));
        std::size_t rest = fiber;
        for (int t = partition.d - 1; t >= 0; --t) {
            coords[static_cast<std::size_t>(t)] = static_cast<int>(rest % static_cast<std::size_t>(partition.n));
            rest /= static_cast<std::size_t>(partition.n);
        }
        for (int s = 0; s < partition.entries[fiber]; ++s) {
            coords[static_cast<std::size_t>(partition.d)] = s;
            out.elements.emplace_back(coords);
        }
    }
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

BigCount macmahon_p2(int n)
{
    if (n < 1)
        throw std::invalid_argument("macmahon_p2: n must be >= 1");
    Rational product = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                product *= Rational(i + j + k - 1, i + j + k - 2);
    product.canonicalize();
    if (product.get_den() != 1)
        throw InvariantViolation("macmahon_p2: product is not integral: " + to_fraction_string(product));
    return product.get_num();
}

BigCount binomial_p1(int n)
{
    if (n < 1)
        throw std::invalid_argument("binomial_p1: n must be >= 1");
    return binomial(mpz_class(2 * n), static_cast<unsigned long>(n));
}

BigCount partition_count(int d, int n, const Limits& limits)
{
    return count_downsets(GridBox(n, d + 1), limits);
}

BigCount max_antichain_size(const GridBox& box, const Limits& limits)
{
    const std::uint64_t size = mask_box_size(box, limits.enumerate);
    const auto comparable = comparability_masks(box);
    int best = 0;
    search_max_antichain(0, low_bits(size), comparable, best);
    return BigCount(best);
}

BigCount erdos_szekeres_n3(int d, int n, const Limits& limits)
{
    return partition_count(d, n, limits) + 1;
}

}  // namespace gridposet
