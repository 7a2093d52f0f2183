#pragma once

#include <functional>
#include <optional>
#include <string>

#include "fhk/field.hpp"
#include "fhk/grid.hpp"

namespace fhk {

/// Declared bounds for a jump coefficient kappa(x, z):
///   lower <= kappa <= upper,
///   |kappa(x,z) - kappa(y,z)| <= holder_constant * |x-y|^holder_exponent.
/// These are hypotheses supplied by the caller; the library checks them on a
/// lattice but never infers them.
struct CoefficientBounds {
    double lower = 1.0;
    double upper = 1.0;
    double holder_constant = 0.0;
    double holder_exponent = 1.0;
};

using CoefficientFn = std::function<double(const Point& x, const Point& z)>;

class Coefficient {
public:
    static Coefficient constant(double value);
    static Coefficient sampled(CoefficientFn fn, CoefficientBounds declared);

    bool is_constant() const noexcept { return !fn_; }
    /// Only meaningful when is_constant().
    double constant_value() const noexcept { return value_; }
    const CoefficientBounds& bounds() const noexcept { return bounds_; }

    double operator()(const Point& x, const Point& z) const { return fn_ ? fn_(x, z) : value_; }

    /// New coefficient equal to s * kappa (bounds scaled accordingly).
    Coefficient scaled(double s) const;

private:
    CoefficientFn fn_;
    double value_ = 1.0;
    CoefficientBounds bounds_;
};

/// 2^alpha Gamma((d+alpha)/2) / (pi^{d/2} |Gamma(-alpha/2)|): the kappa that
/// makes the singular integral equal to -(-Laplacian)^{alpha/2}.
double fractional_laplacian_constant(double alpha, int d);

/// Order, dimension and coefficient of one nonlocal operator. An empty kappa
/// means the canonical constant c_{d,alpha}, so the generator is exactly
/// -(-Laplacian)^{alpha/2} (the Laplacian itself at alpha = 2).
struct KernelParams {
    double alpha = 1.0;
    int dim = 1;
    std::optional<Coefficient> kappa;

    /// Throws DomainError unless 0 < alpha <= 2 and dim in {1,2,3}.
    void check() const;
    /// As check(), but also rejects alpha == 2 (singular-integral paths).
    void check_nonlocal() const;

    bool constant_kappa() const noexcept { return !kappa || kappa->is_constant(); }
    /// The coefficient with the canonical default filled in (alpha < 2).
    Coefficient resolved_kappa() const;
    /// For constant kappa the generator is time_scale() times the canonical
    /// one: kappa / c_{d,alpha}, or kappa itself at alpha = 2. Throws
    /// UnsupportedRoute for a sampled kappa.
    double time_scale() const;
};

/// w(x) = 1 + |x|^(alpha - epsilon), the polynomial growth envelope.
class GrowthWeight {
public:
    GrowthWeight(double alpha, double epsilon);
    /// epsilon = alpha / 2.
    static GrowthWeight midpoint(double alpha) { return GrowthWeight(alpha, 0.5 * alpha); }

    double alpha() const noexcept { return alpha_; }
    double epsilon() const noexcept { return epsilon_; }
    double operator()(const Point& x, int dim) const;

private:
    double alpha_;
    double epsilon_;
};

struct FieldNorms {
    double sup = 0.0;
    double weighted = 0.0;  ///< sup |f| / w
};

FieldNorms field_norms(const Field& f, const GrowthWeight& w);

/// Points per axis used by validate_params. Node sets are nested: doubling a
/// count keeps every previous node, so a finer lattice can only find more
/// violations.
struct SamplingLattice {
    int x_points = 32;
    int z_points = 32;
    double x_extent = 3.141592653589793;
    double z_extent = 3.141592653589793;
};

struct ConditionResult {
    bool pass = true;
    std::optional<std::string> first_violation;
};

struct ValidationReport {
    ConditionResult symmetry;  ///< kappa(x,z) == kappa(x,-z)
    ConditionResult bounds;    ///< lower <= kappa <= upper
    ConditionResult holder;    ///< Hoelder continuity in x
    double observed_min = 0.0;
    double observed_max = 0.0;
    double observed_holder = 0.0;  ///< max |k(x,z)-k(y,z)| / |x-y|^beta over the lattice
    CoefficientBounds declared;

    bool pass() const noexcept { return symmetry.pass && bounds.pass && holder.pass; }
};

ValidationReport validate_params(const KernelParams& p, const SamplingLattice& lattice = {});

}  // namespace fhk
