#include "fhk/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "fhk/errors.hpp"

namespace fhk {

namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created once per shape and live for the process.
const PlanPair& plans_for(int dim, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({dim, n});
    if (it != cache.end()) return it->second;

    int dims[3] = {n, n, n};
    std::size_t real_size = 1, complex_size = 1;
    for (int a = 0; a < dim; ++a) real_size *= n;
    complex_size = real_size / n * (n / 2 + 1);
    double* rbuf = fftw_alloc_real(real_size);
    fftw_complex* cbuf = fftw_alloc_complex(complex_size);
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c(dim, dims, rbuf, cbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r(dim, dims, cbuf, rbuf, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(rbuf);
    fftw_free(cbuf);
    return cache.emplace(std::make_pair(dim, n), p).first->second;
}

void require_periodic(const Grid& g) {
    if (!g.periodic()) throw UnsupportedRoute("spectral transforms need a periodic grid");
}

}  // namespace

Spectrum Spectrum::forward(const Field& f) {
    const Grid& g = f.grid();
    require_periodic(g);
    const int n = g.nodes_per_axis();
    const auto& p = plans_for(g.dim(), n);
    std::vector<double> in(f.values().begin(), f.values().end());
    std::vector<std::complex<double>> out(g.size() / n * (n / 2 + 1));
    fftw_execute_dft_r2c(p.r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return Spectrum(g, std::move(out));
}

std::array<int, 3> Spectrum::mode(std::size_t i) const noexcept {
    const int n = grid_.nodes_per_axis();
    const int d = grid_.dim();
    const int half = n / 2 + 1;
    std::array<int, 3> m{0, 0, 0};
    m[d - 1] = static_cast<int>(i % half);
    i /= half;
    for (int a = d - 2; a >= 0; --a) {
        const int k = static_cast<int>(i % n);
        i /= n;
        m[a] = k <= n / 2 ? k : k - n;
    }
    return m;
}

double Spectrum::mode_norm_sq(std::size_t i) const noexcept {
    const auto m = mode(i);
    return double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
}

void Spectrum::multiply(const std::function<double(double)>& m) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] *= m(mode_norm_sq(i));
}

Field Spectrum::inverse() const {
    const int n = grid_.nodes_per_axis();
    const auto& p = plans_for(grid_.dim(), n);
    std::vector<std::complex<double>> in(coeffs_);
    std::vector<double> out(grid_.size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double inv = 1.0 / static_cast<double>(grid_.size());
    for (double& v : out) v *= inv;
    return Field(grid_, std::move(out));
}

Field spectral_multiply(const Field& f, const std::function<double(double)>& m) {
    Spectrum s = Spectrum::forward(f);
    s.multiply(m);
    return s.inverse();
}

Field periodic_shift(const Spectrum& s, double shift) {
    if (s.grid().dim() != 1) throw UnsupportedRoute("periodic_shift is one-dimensional");
    Spectrum t = s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = t.mode(i)[0];
        t[i] *= std::complex<double>(std::cos(k * shift), std::sin(k * shift));
    }
    return t.inverse();
}

}  // namespace fhk
