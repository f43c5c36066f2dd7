#include "gridposet/grid_poset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gridposet {

std::string Point::to_string() const
{
    return "(" + to_compact() + ")";
}

std::string Point::to_compact() const
{
    std::string s;
    for (std::size_t t = 0; t < coords_.size(); ++t) {
        if (t)
            s += ',';
        s += std::to_string(coords_[t]);
    }
    return s;
}

GridBox::GridBox(int n, int D) : n_(n), D_(D)
{
    if (n < 1)
        throw std::invalid_argument("GridBox: side length n must be >= 1");
    if (D < 1)
        throw std::invalid_argument("GridBox: dimension D must be >= 1");
}

BigCount GridBox::total_points() const
{
    return power(mpz_class(n_), static_cast<unsigned long>(D_));
}

std::uint64_t GridBox::checked_size(std::uint64_t cap) const
{
    BigCount total = total_points();
    if (total > mpz_class(std::to_string(cap)))
        throw CapExceeded("box " + to_string() + " has " + total.get_str() + " points, cap is " +
                          std::to_string(cap));
    return std::stoull(total.get_str());
}

bool GridBox::contains(const Point& x) const noexcept
{
    if (x.dim() != static_cast<std::size_t>(D_))
        return false;
    return std::all_of(x.coords().begin(), x.coords().end(), [&](int c) { return c >= 0 && c < n_; });
}

void GridBox::require_contains(const Point& x) const
{
    if (!contains(x))
        throw std::invalid_argument("point " + x.to_string() + " is not in box " + to_string());
}

std::uint64_t GridBox::index_of(const Point& x) const
{
    require_contains(x);
    std::uint64_t idx = 0;
    for (int c : x.coords())
        idx = idx * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(c);
    return idx;
}

Point GridBox::point_at(std::uint64_t index) const
{
    std::vector<int> c(static_cast<std::size_t>(D_));
    for (int t = D_ - 1; t >= 0; --t) {
        c[static_cast<std::size_t>(t)] = static_cast<int>(index % static_cast<std::uint64_t>(n_));
        index /= static_cast<std::uint64_t>(n_);
    }
    if (index != 0)
        throw std::out_of_range("point index outside box " + to_string());
    return Point(std::move(c));
}

Point GridBox::reflect(const Point& x) const
{
    require_contains(x);
    std::vector<int> c = x.coords();
    for (int& v : c)
        v = n_ - 1 - v;
    return Point(std::move(c));
}

std::string GridBox::to_string() const
{
    return "{0.." + std::to_string(n_ - 1) + "}^" + std::to_string(D_);
}

int rank(const Point& x)
{
    return std::accumulate(x.coords().begin(), x.coords().end(), 0);
}

bool leq(const Point& x, const Point& y)
{
    if (x.dim() != y.dim())
        throw std::invalid_argument("leq: dimension mismatch");
    for (std::size_t t = 0; t < x.dim(); ++t)
        if (x[t] > y[t])
            return false;
    return true;
}

bool strictly_below(const Point& x, const Point& y)
{
    return leq(x, y) && x != y;
}

std::vector<BigCount> level_sizes(const GridBox& box)
{
    const int n = box.n();
    std::vector<BigCount> counts{1};
    // Multiply by (1 + z + ... + z^{n-1}) once per dimension, using a running
    // window sum so each step is linear in the current degree.
    for (int t = 0; t < box.D(); ++t) {
        std::vector<BigCount> next(counts.size() + static_cast<std::size_t>(n - 1));
        BigCount window = 0;
        for (std::size_t s = 0; s < next.size(); ++s) {
            if (s < counts.size())
                window += counts[s];
            if (s >= static_cast<std::size_t>(n))
                window -= counts[s - static_cast<std::size_t>(n)];
            next[s] = window;
        }
        counts = std::move(next);
    }
    return counts;
}

BigCount level_size(const GridBox& box, int i)
{
    if (i < 0 || i > box.max_rank())
        throw std::out_of_range("level " + std::to_string(i) + " outside 0.." +
                                std::to_string(box.max_rank()));
    return level_sizes(box)[static_cast<std::size_t>(i)];
}

BigCount middle_layer_size(const GridBox& box)
{
    return level_size(box, box.middle_rank());
}

namespace {

void emit_level(const GridBox& box, int t, int remaining, std::vector<int>& current,
                std::vector<Point>& out)
{
    const int D = box.D();
    if (t == D) {
        out.emplace_back(current);
        return;
    }
    const int tail_capacity = (box.n() - 1) * (D - t - 1);
    const int lo = std::max(0, remaining - tail_capacity);
    const int hi = std::min(box.n() - 1, remaining);
    for (int v = lo; v <= hi; ++v) {
        current[static_cast<std::size_t>(t)] = v;
        emit_level(box, t + 1, remaining - v, current, out);
    }
}

}  // namespace

std::vector<Point> enumerate_level(const GridBox& box, int i, std::uint64_t cap)
{
    BigCount size = level_size(box, i);
    if (size > mpz_class(std::to_string(cap)))
        throw CapExceeded("level " + std::to_string(i) + " of " + box.to_string() + " has " +
                          size.get_str() + " points, cap is " + std::to_string(cap));
    std::vector<Point> out;
    out.reserve(size.get_ui());
    std::vector<int> current(static_cast<std::size_t>(box.D()));
    emit_level(box, 0, i, current, out);
    return out;
}

std::vector<Point> enumerate_box(const GridBox& box, std::uint64_t cap)
{
    const std::uint64_t size = box.checked_size(cap);
    std::vector<Point> out;
    out.reserve(size);
    for (std::uint64_t idx = 0; idx < size; ++idx)
        out.push_back(box.point_at(idx));
    return out;
}

}  // namespace gridposet
