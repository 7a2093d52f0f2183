#pragma once

#include <array>
#include <cstddef>

namespace fhk {

/// A point in R^d for d <= 3; unused trailing coordinates are zero.
using Point = std::array<double, 3>;

/// Euclidean norm of the first `dim` coordinates.
double norm(const Point& p, int dim);

enum class Topology {
    PeriodicTorus,  ///< period 2*pi per axis, chart [-pi, pi)
    TruncatedLine,  ///< box [-R, R)^d; values outside are the caller's business
};

/// Uniform tensor grid. Nodes on each axis are x_i = -extent + i*h, i = 0..n-1,
/// so doubling n keeps every old node (nested refinement).
class Grid {
public:
    static Grid torus(int dim, int nodes_per_axis);
    static Grid line(int dim, int nodes_per_axis, double half_width);

    int dim() const noexcept { return dim_; }
    int nodes_per_axis() const noexcept { return nodes_; }
    Topology topology() const noexcept { return topology_; }
    bool periodic() const noexcept { return topology_ == Topology::PeriodicTorus; }
    double extent() const noexcept { return extent_; }
    double spacing() const noexcept { return 2.0 * extent_ / nodes_; }
    std::size_t size() const noexcept;

    double coordinate(int i) const noexcept { return -extent_ + i * spacing(); }
    std::array<int, 3> index(std::size_t flat) const noexcept;
    std::size_t flat(const std::array<int, 3>& idx) const noexcept;
    Point point(std::size_t flat) const noexcept;

    /// Geodesic distance; on the torus each axis uses min(|dx|, 2*pi - |dx|).
    double distance(const Point& a, const Point& b) const noexcept;

    /// Same domain, twice the nodes per axis.
    Grid refined() const;
    /// Same domain, nodes_per_axis / factor; factor must divide the node count.
    Grid coarsened(int factor) const;

    friend bool operator==(const Grid& a, const Grid& b) noexcept;

private:
    Grid(int dim, int nodes, double extent, Topology topology);

    int dim_;
    int nodes_;
    double extent_;
    Topology topology_;
};

}  // namespace fhk
