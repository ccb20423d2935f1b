#include "hardylab/geometry.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

constexpr double kSeriesCrossover = 1e-3;

// x coth x - 1 for small x.
double xcothx_minus_one_series(double x) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0)));
}

// Bernoulli series of x coth x - 1, used on [1e-3, 0.5) where the closed form cancels.
double xcothx_minus_one_bernoulli(double x) {
    static const std::array<double, 14> coeff = [] {
        std::array<double, 14> c{};
        for (int k = 1; k <= 14; ++k)
            c[k - 1] = std::ldexp(boost::math::bernoulli_b2n<double>(k), 2 * k) /
                       boost::math::factorial<double>(2 * k);
        return c;
    }();
    const double x2 = x * x;
    double acc = 0.0;
    for (int k = 13; k >= 0; --k) acc = acc * x2 + coeff[k];
    return acc * x2;
}

// ln(sinh x / x), x > 0.
double log_sinhc(double x) {
    if (x < kSeriesCrossover) {
        const double x2 = x * x;
        return std::log1p(x2 * (1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 / 5040.0)));
    }
    if (x < 20.0) return std::log(std::sinh(x) / x);
    return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2 - std::log(x);
}

void require_positive(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": t must be > 0");
}

}  // namespace

void check_manifold(const ModelManifold& m) {
    if (m.n < 2) throw DomainError("manifold dimension must be >= 2");
    if (!(m.b >= 0.0) || !std::isfinite(m.b)) throw DomainError("curvature bound b must be finite and >= 0");
}

double ct(double b, double t) {
    require_positive(t, "ct");
    if (b < 0.0) throw DomainError("ct: b must be >= 0");
    if (b == 0.0) return 1.0 / t;
    const double s = std::sqrt(b);
    const double x = s * t;
    if (x < kSeriesCrossover) return (1.0 + xcothx_minus_one_series(x)) / t;
    return s / std::tanh(x);
}

double dd(double b, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("dd: t must be >= 0");
    if (b < 0.0) throw DomainError("dd: b must be >= 0");
    if (t == 0.0 || b == 0.0) return 0.0;
    const double x = std::sqrt(b) * t;
    if (x < kSeriesCrossover) return xcothx_minus_one_series(x);
    if (x < 0.5) return xcothx_minus_one_bernoulli(x);
    return x / std::tanh(x) - 1.0;
}

double log_density(const ModelManifold& m, double t) {
    require_positive(t, "density");
    check_manifold(m);
    if (m.b == 0.0) return 0.0;
    return (m.n - 1) * log_sinhc(std::sqrt(m.b) * t);
}

double density(const ModelManifold& m, double t) {
    const double lj = log_density(m, t);
    if (lj > std::log(DBL_MAX)) throw OverflowError("density overflows double range");
    return std::exp(lj);
}

double density_log_deriv(const ModelManifold& m, double t) {
    require_positive(t, "density_log_deriv");
    check_manifold(m);
    return (m.n - 1) * dd(m.b, t) / t;
}

double measure_weight(const ModelManifold& m, double t) {
    require_positive(t, "measure_weight");
    const double lw = (m.n - 1) * std::log(t) + log_density(m, t);
    if (lw > std::log(DBL_MAX)) throw OverflowError("measure weight overflows double range");
    return std::exp(lw);
}

double rho_from_r(double r) {
    if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("rho_from_r: r must lie in [0, 1)");
    return 2.0 * std::atanh(r);
}

double r_from_rho(double rho) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("r_from_rho: rho must be finite and >= 0");
    return std::tanh(0.5 * rho);
}

CothGap coth_gap_lower_bound(double t) {
    require_positive(t, "coth_gap_lower_bound");
    const double t2 = t * t;
    return {dd(1.0, t), 3.0 * t2 / (std::numbers::pi * std::numbers::pi + t2)};
}

DensityProfile model_profile(const ModelManifold& m) {
    check_manifold(m);
    return {m.n, [m](double t) {
                const double j = density(m, t);
                return std::pair<double, double>{j, j * density_log_deriv(m, t)};
            }};
}

double check_profile(const DensityProfile& profile, double b, const std::vector<double>& grid,
                     double rel_tol) {
    for (double t : grid) {
        const auto [j, jp] = profile.eval(t);
        const double bound = (profile.n - 1) * dd(b, t) / t * j;
        const double slack = rel_tol * std::abs(bound) + 1e-300;
        if (!(j >= 1.0 - rel_tol) || !(jp >= -slack) || !(jp >= bound - slack)) return t;
    }
    return -1.0;
}

}  // namespace hardylab
