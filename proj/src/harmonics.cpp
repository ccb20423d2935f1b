#include "hardylab/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardylab/constants.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/geometry.hpp"

namespace hardylab {

namespace {

double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

// rho^-beta sinh^{n-1} rho
double weight(int n, double beta, double rho) {
    return std::pow(rho, n - 1 - beta) * std::pow(sinhc(rho), n - 1);
}

QuadratureResult radial(const Integrand& g, const RadialFunction& f, const QuadratureOptions& opts) {
    if (!(f.support_radius > f.inner_radius)) return {};
    return integrate_radial(g, f.inner_radius, f.support_radius, f.breakpoints, opts);
}

}  // namespace

double mode_eigenvalue(int n, int k) {
    if (n < 2) throw DomainError("mode_eigenvalue needs n >= 2");
    if (k < 0) throw DomainError("mode index k must be >= 0");
    return static_cast<double>(k) * (n + k - 2);
}

ModeSpec make_mode(int n, int k, RadialFunction profile) {
    return {k, mode_eigenvalue(n, k), std::move(profile)};
}

double hyperbolic_radial_laplacian(int n, const RadialFunction& F, double rho) {
    return radial_laplacian(ModelManifold{n, 1.0}, F, rho);
}

void check_mow_params(int n, double beta) {
    const Validity v = validity(Family::mow, CaseParams{n, 2.0, beta, 1.0, 0});
    if (!v) throw ValidityError("mow: " + v.reason);
}

bool mow_boundary(int n, double beta) { return beta == n - 4.0; }

QuadratureResult mode_form(int n, double beta, int k, const RadialFunction& f, const QuadratureOptions& opts) {
    check_mow_params(n, beta);
    if (k < 1) throw DomainError("mode_form needs k >= 1");
    const double ck = mode_eigenvalue(n, k);
    auto g = [&](double r) {
        const double s2 = std::sinh(r) * std::sinh(r);
        const double v = f(r);
        return (ck * v * v / (s2 * s2) - 2.0 * v * hyperbolic_radial_laplacian(n, f, r) / s2) * weight(n, beta, r);
    };
    return radial(g, f, opts);
}

MowResult mow_compare(int n, double beta, const std::vector<ModeSpec>& modes, const QuadratureOptions& opts) {
    check_mow_params(n, beta);
    if (modes.size() > kMaxModes) throw DomainError("mow_compare takes at most 16 modes");
    MowResult out;
    if (mow_boundary(n, beta)) out.note = "boundary case, proof route differs";
    for (const ModeSpec& m : modes) {
        if (m.eigenvalue != mode_eigenvalue(n, m.k))
            throw DomainError("mode " + std::to_string(m.k) + " carries the wrong eigenvalue for n = " +
                              std::to_string(n));
        const RadialFunction& f = m.profile;
        const double ck = m.eigenvalue;
        ModeTerm t;
        t.k = m.k;
        const QuadratureResult l = radial(
            [&](double r) {
                const double d = hyperbolic_radial_laplacian(n, f, r);
                return d * d * weight(n, beta, r);
            },
            f, opts);
        const QuadratureResult rr = radial(
            [&](double r) {
                const double s = std::sinh(r);
                const double d = hyperbolic_radial_laplacian(n, f, r) - ck * f(r) / (s * s);
                return d * d * weight(n, beta, r);
            },
            f, opts);
        t.lhs = l.value;
        t.rhs = rr.value;
        out.quad_error += l.error_estimate + rr.error_estimate;
        if (m.k > 0) {
            const QuadratureResult q = mode_form(n, beta, m.k, f, opts);
            t.form = q.value;
            out.quad_error += ck * q.error_estimate;
        }
        out.lhs += t.lhs;
        out.rhs += t.rhs;
        out.slack += ck * t.form;
        out.modes.push_back(t);
    }
    return out;
}

double leading_coefficient(int n, double beta, int k) {
    const double a = n - 2.0 + k;
    return (a * a + static_cast<double>(k) * k - (beta + 2.0) * (beta + 2.0)) / 2.0;
}

double series_coefficient(int n, double beta, int l) {
    const double l1 = l + 1.0, l2 = 2.0 * l + 1.0;
    return (n - 3.0) - beta * (beta + 1.0) / (l1 * l2) + beta * (n - 5.0) / l2;
}

CoefficientCheck coefficient_check(int n, double beta, int k, int l_max) {
    check_mow_params(n, beta);
    if (k < 1) throw DomainError("coefficient_check needs k >= 1");
    if (l_max < 1) throw DomainError("coefficient_check needs l_max >= 1");
    CoefficientCheck out;
    out.leading = leading_coefficient(n, beta, k);
    if (!(out.leading > 0.0)) out.violations.push_back({0, out.leading});
    out.min_series = series_coefficient(n, beta, 1);
    for (int l = 1; l <= l_max; ++l) {
        const double v = series_coefficient(n, beta, l);
        out.min_series = std::min(out.min_series, v);
        if (!(v >= 0.0)) out.violations.push_back({l, v});
    }
    return out;
}

double positivity_expression(int n, double beta, double rho) {
    const double sh = std::sinh(rho), ch = std::cosh(rho);
    const double c1 = mode_eigenvalue(n, 1);
    const double a = n - beta - 4.0;
    const double sc = sinhc(rho);
    return c1 + a * a / 2.0 + 2.0 * sh * sh + 2.0 * (n - 4.0) * ch * ch - beta * (beta + 1.0) * sc * sc +
           beta * (n - 5.0) * sinhc(2.0 * rho);
}

PositivityMin pointwise_positivity(int n, double beta, const std::vector<double>& grid) {
    check_mow_params(n, beta);
    if (grid.empty()) throw DomainError("pointwise_positivity needs a nonempty grid");
    PositivityMin out{INFINITY, 0.0};
    for (double r : grid) {
        if (!(r > 0.0) || !(r <= 30.0)) throw DomainError("grid points must lie in (0, 30]");
        const double v = positivity_expression(n, beta, r);
        if (v < out.value) out = {v, r};
    }
    return out;
}

QuadratureResult radial_weighted_hardy_check(int n, double beta, const RadialFunction& F,
                                             const QuadratureOptions& opts) {
    if (n < 3) throw ValidityError("radial_weighted_hardy_check needs n >= 3");
    if (!(beta < n - 4.0)) throw ValidityError("radial_weighted_hardy_check needs beta < n-4");
    const double c = (n - beta - 4.0) * (n - beta - 4.0) / 4.0;
    auto g = [&](double r) {
        const double d = radial_derivative(F, r);
        const double v = F(r);
        const double s = sinhc(r);
        return d * d * std::pow(r, n - beta - 3.0) * std::pow(s, n - 3.0) -
               c * v * v * std::pow(r, n - beta - 5.0) * std::pow(s, n - 5.0);
    };
    return radial(g, F, opts);
}

}  // namespace hardylab
