#pragma once

// The box {0,...,n-1}^D under the coordinatewise order, graded by coordinate
// sum. Point indices are lexicographic ranks (first coordinate most
// significant), which coincides with the order enumerate_level emits.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "gridposet/common.hpp"

namespace gridposet {

class Point {
public:
    Point() = default;
    Point(std::initializer_list<int> coords) : coords_(coords) {}
    explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}

    std::size_t dim() const noexcept { return coords_.size(); }
    int operator[](std::size_t t) const { return coords_[t]; }
    int& operator[](std::size_t t) { return coords_[t]; }
    const std::vector<int>& coords() const noexcept { return coords_; }

    std::string to_string() const;  // "(0,1,2)"
    std::string to_compact() const;  // "0,1,2"

    friend auto operator<=>(const Point&, const Point&) = default;
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<int> coords_;
};

class GridBox {
public:
    GridBox(int n, int D);

    int n() const noexcept { return n_; }
    int D() const noexcept { return D_; }

    /// (n-1)*D, the rank of the top element.
    int max_rank() const noexcept { return (n_ - 1) * D_; }
    /// floor((n-1)*D/2).
    int middle_rank() const noexcept { return max_rank() / 2; }

    BigCount total_points() const;
    /// n^D as a machine integer; throws CapExceeded if it exceeds `cap`.
    std::uint64_t checked_size(std::uint64_t cap) const;

    bool contains(const Point& x) const noexcept;
    void require_contains(const Point& x) const;

    std::uint64_t index_of(const Point& x) const;
    Point point_at(std::uint64_t index) const;

    /// Coordinatewise x -> (n-1) - x; an order-reversing involution.
    Point reflect(const Point& x) const;

    std::string to_string() const;

    friend bool operator==(const GridBox&, const GridBox&) = default;

private:
    int n_;
    int D_;
};

int rank(const Point& x);

/// Coordinatewise comparison; throws std::invalid_argument on a dimension
/// mismatch.
bool leq(const Point& x, const Point& y);

/// leq(x, y) && x != y.
bool strictly_below(const Point& x, const Point& y);

/// |V_i|: compositions of i into D parts, each in {0,...,n-1}.
BigCount level_size(const GridBox& box, int i);

/// |V_0|, ..., |V_{(n-1)D}| by one pass of the bounded-composition DP.
std::vector<BigCount> level_sizes(const GridBox& box);

/// N_{n,D} = |V_k| with k = floor((n-1)D/2).
BigCount middle_layer_size(const GridBox& box);

/// All points of rank i, lexicographically. Throws CapExceeded when
/// |V_i| > cap and std::out_of_range when i is not a valid level.
std::vector<Point> enumerate_level(const GridBox& box, int i, std::uint64_t cap = Limits{}.materialize);

/// Every point of the box in index order.
std::vector<Point> enumerate_box(const GridBox& box, std::uint64_t cap = Limits{}.materialize);

}  // namespace gridposet
