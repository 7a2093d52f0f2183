#include "fhk/field.hpp"

#include <algorithm>
#include <cmath>

#include "fhk/errors.hpp"

namespace fhk {

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw DomainError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                          std::to_string(grid_.size()) + " nodes");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw DomainError("non-finite field value at node " + std::to_string(i));
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

Field Field::constant(const Grid& grid, double value) {
    return Field(grid, std::vector<double>(grid.size(), value));
}

double Field::sup_norm() const noexcept {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double Field::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

void Field::require_same_grid(const Field& other) const {
    if (!(grid_ == other.grid_)) throw DomainError("field arithmetic on different grids");
}

Field Field::operator+(const Field& other) const {
    require_same_grid(other);
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
    return Field(grid_, std::move(v));
}

Field Field::operator-(const Field& other) const {
    require_same_grid(other);
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
    return Field(grid_, std::move(v));
}

Field Field::operator*(double s) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= s;
    return Field(grid_, std::move(v));
}

Field Field::pow(double exponent) const {
    std::vector<double> v(values_);
    const bool integral = exponent == std::round(exponent);
    if (integral) {
        const int n = static_cast<int>(exponent);
        for (double& x : v) {
            double r = 1.0;
            for (int k = 0; k < std::abs(n); ++k) r *= x;
            x = n >= 0 ? r : 1.0 / r;
        }
    } else {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0))
                throw DomainError("non-integer power of a non-positive value at node " +
                                  std::to_string(i));
            v[i] = std::pow(v[i], exponent);
        }
    }
    return Field(grid_, std::move(v));
}

Field Field::subsample(int factor) const {
    const Grid coarse = grid_.coarsened(factor);
    std::vector<double> v(coarse.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto idx = coarse.index(i);
        for (int a = 0; a < grid_.dim(); ++a) idx[a] *= factor;
        v[i] = values_[grid_.flat(idx)];
    }
    return Field(coarse, std::move(v));
}

}  // namespace fhk
