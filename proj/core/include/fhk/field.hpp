#pragma once

#include <span>
#include <vector>

#include "fhk/grid.hpp"

namespace fhk {

/// Real samples of a function on a Grid. Immutable once built; every
/// constructor and arithmetic result is checked for NaN/Inf.
class Field {
public:
    Field(Grid grid, std::vector<double> values);

    static Field zeros(const Grid& grid);
    static Field constant(const Grid& grid, double value);

    template <class Fn>
    static Field sample(const Grid& grid, Fn&& fn) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
        return Field(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double sup_norm() const noexcept;
    double min() const noexcept;
    double max() const noexcept;

    Field operator+(const Field& other) const;
    Field operator-(const Field& other) const;
    Field operator*(double s) const;
    Field operator-() const { return *this * -1.0; }

    /// Pointwise power. Integer exponents accept any sign; other exponents
    /// need strictly positive values.
    Field pow(double exponent) const;

    /// Keep every `factor`-th node per axis. Node i of the result is node
    /// factor*i of this field.
    Field subsample(int factor) const;

private:
    void require_same_grid(const Field& other) const;

    Grid grid_;
    std::vector<double> values_;
};

inline Field operator*(double s, const Field& f) { return f * s; }

}  // namespace fhk
