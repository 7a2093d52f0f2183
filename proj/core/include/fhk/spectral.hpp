#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fhk/field.hpp"

namespace fhk {

/// Half-complex Fourier coefficients of a real field on a periodic grid
/// (FFTW r2c layout: last axis keeps modes 0..N/2). Unnormalised forward
/// transform; inverse() divides by the node count.
class Spectrum {
public:
    static Spectrum forward(const Field& f);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::complex<double>& operator[](std::size_t i) noexcept { return coeffs_[i]; }
    const std::complex<double>& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

    /// Integer wavenumbers of coefficient i (unused axes are 0).
    std::array<int, 3> mode(std::size_t i) const noexcept;
    double mode_norm_sq(std::size_t i) const noexcept;

    /// Multiply coefficient i by m(|n|^2).
    void multiply(const std::function<double(double)>& m);

    Field inverse() const;

private:
    Spectrum(Grid g, std::vector<std::complex<double>> c) : grid_(g), coeffs_(std::move(c)) {}
    Grid grid_;
    std::vector<std::complex<double>> coeffs_;
};

/// Returns the field whose coefficients are m(|n|^2) times those of f.
Field spectral_multiply(const Field& f, const std::function<double(double)>& m);

/// Trigonometric interpolant of a 1-D periodic field evaluated at x_i + shift
/// for every node i.
Field periodic_shift(const Spectrum& s, double shift);

}  // namespace fhk
