#include "fhk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fhk/errors.hpp"

namespace fhk {

double norm(const Point& p, int dim) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += p[a] * p[a];
    return std::sqrt(s);
}

Grid::Grid(int dim, int nodes, double extent, Topology topology)
    : dim_(dim), nodes_(nodes), extent_(extent), topology_(topology) {
    if (dim < 1 || dim > 3) throw DomainError("grid dimension must be 1, 2 or 3");
    if (nodes < 8 || nodes % 2 != 0)
        throw DomainError("grid needs an even node count >= 8 per axis, got " +
                          std::to_string(nodes));
    if (!(extent > 0.0) || !std::isfinite(extent)) throw DomainError("grid extent must be positive");
}

Grid Grid::torus(int dim, int nodes_per_axis) {
    return Grid(dim, nodes_per_axis, std::numbers::pi, Topology::PeriodicTorus);
}

Grid Grid::line(int dim, int nodes_per_axis, double half_width) {
    return Grid(dim, nodes_per_axis, half_width, Topology::TruncatedLine);
}

std::size_t Grid::size() const noexcept {
    std::size_t n = 1;
    for (int a = 0; a < dim_; ++a) n *= static_cast<std::size_t>(nodes_);
    return n;
}

std::array<int, 3> Grid::index(std::size_t flat) const noexcept {
    std::array<int, 3> idx{0, 0, 0};
    // last axis fastest, matching FFTW's row-major layout
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % nodes_);
        flat /= nodes_;
    }
    return idx;
}

std::size_t Grid::flat(const std::array<int, 3>& idx) const noexcept {
    std::size_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * nodes_ + static_cast<std::size_t>(idx[a]);
    return f;
}

Point Grid::point(std::size_t flat_index) const noexcept {
    const auto idx = index(flat_index);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) p[a] = coordinate(idx[a]);
    return p;
}

double Grid::distance(const Point& a, const Point& b) const noexcept {
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
        double d = std::abs(a[k] - b[k]);
        if (periodic()) {
            d = std::fmod(d, 2.0 * std::numbers::pi);
            d = std::min(d, 2.0 * std::numbers::pi - d);
        }
        s += d * d;
    }
    return std::sqrt(s);
}

Grid Grid::refined() const { return Grid(dim_, 2 * nodes_, extent_, topology_); }

Grid Grid::coarsened(int factor) const {
    if (factor < 1 || nodes_ % factor != 0) throw DomainError("coarsening factor must divide the node count");
    return Grid(dim_, nodes_ / factor, extent_, topology_);
}

bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.nodes_ == b.nodes_ && a.extent_ == b.extent_ &&
           a.topology_ == b.topology_;
}

}  // namespace fhk
