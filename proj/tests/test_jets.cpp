#include <doctest.h>

#include <cmath>
#include <functional>

#include "hardylab/corpus.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/geometry.hpp"
#include "hardylab/jets.hpp"

using namespace hardylab;
using doctest::Approx;

namespace {

constexpr double k4Cosh1 = 6.1723225392609751;

RadialFunction from_jet(std::function<Jet(const Jet&)> g, double R = 100.0) {
    RadialFunction f;
    f.id = "test";
    f.support_radius = R;
    f.min_smoothness = kMaxJetOrder;
    f.jet = [g](double rho, int order) { return g(Jet::variable(rho, order)); };
    return f;
}

// Two-level Richardson-extrapolated centered difference.
double richardson(const std::function<double(double)>& g, double x, double h) {
    auto d = [&](double s) { return (g(x + s) - g(x - s)) / (2 * s); };
    return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace

TEST_CASE("jet arithmetic on polynomials follows the Leibniz rule") {
    const int m = 8;
    Jet a(0.5, m), b(0.5, m);
    for (int k = 0; k <= m; ++k) {
        a[k] = k + 1;
        b[k] = (k % 3) - 1;
    }
    const Jet c = a * b;
    for (int k = 0; k <= m; ++k) {
        double conv = 0;
        for (int i = 0; i <= k; ++i) conv += a[i] * b[k - i];
        CHECK(c[k] == conv);
    }
    const Jet back = (a * b) / a;
    for (int k = 0; k <= m; ++k) CHECK(back[k] == Approx(b[k]).epsilon(1e-12));
}

TEST_CASE("elementary jets match closed-form derivatives") {
    const double x0 = 0.7;
    const Jet x = Jet::variable(x0, 6);
    const Jet e = exp(x);
    for (int k = 0; k <= 6; ++k) CHECK(e.derivative(k) == Approx(std::exp(x0)).epsilon(1e-14));
    const Jet s = sinh(x), c = cosh(x);
    CHECK(s.derivative(3) == Approx(std::cosh(x0)).epsilon(1e-14));
    CHECK(c.derivative(5) == Approx(std::sinh(x0)).epsilon(1e-14));
    const Jet l = log(x);
    CHECK(l.derivative(4) == Approx(-6.0 / std::pow(x0, 4)).epsilon(1e-13));
    const Jet p = pow(x, 2.5);
    CHECK(p.derivative(2) == Approx(2.5 * 1.5 * std::pow(x0, 0.5)).epsilon(1e-14));
    const Jet r = sqrt(x) * sqrt(x);
    CHECK(r[1] == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r[2]) < 1e-14);
    const Jet t = tanh(x);
    CHECK(t.derivative(1) == Approx(1.0 / (std::cosh(x0) * std::cosh(x0))).epsilon(1e-14));
    CHECK(ipow(x, 3).derivative(3) == Approx(6.0).epsilon(1e-15));
    // d/dx exp(x^2) = 2x exp(x^2)
    const Jet comp = compose(exp(Jet::variable(x0 * x0, 6)), x * x);
    CHECK(comp.derivative(1) == Approx(2 * x0 * std::exp(x0 * x0)).epsilon(1e-14));
    CHECK(comp.derivative(2) == Approx((2 + 4 * x0 * x0) * std::exp(x0 * x0)).epsilon(1e-13));
}

TEST_CASE("radial_derivative") {
    const RadialFunction bump = polynomial_bump(1.0, 2);
    CHECK(radial_derivative(bump, 0.5) == Approx(-1.5).epsilon(1e-15));
    CHECK(radial_derivative(bump, 1.0) == 0.0);
    CHECK(radial_derivative(bump, 3.0) == 0.0);
    const RadialFunction e = from_jet([](const Jet& x) { return exp(-x); });
    CHECK(radial_derivative(e, 1.0) == Approx(-std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(radial_derivative(e, 0.0), DomainError);
    CHECK_THROWS_AS(radial_derivative(e, -1.0), DomainError);
}

TEST_CASE("radial_laplacian") {
    const RadialFunction sq = from_jet([](const Jet& x) { return x * x; });
    for (double rho : {0.1, 0.5, 2.0}) CHECK(radial_laplacian({3, 0.0}, sq, rho) == Approx(6.0).epsilon(1e-14));
    const RadialFunction one = from_jet([](const Jet& x) { return 0.0 * x + 1.0; });
    CHECK(radial_laplacian({3, 1.0}, one, 0.8) == 0.0);
    const RadialFunction ch = from_jet([](const Jet& x) { return cosh(x) - 1.0; });
    CHECK(radial_laplacian({4, 1.0}, ch, 1.0) == Approx(k4Cosh1).epsilon(1e-14));
    RadialFunction rough = polynomial_bump(1.0, 2);
    rough.min_smoothness = 1;
    CHECK_THROWS_AS(radial_laplacian({3, 0.0}, rough, 0.5), ContractError);
}

TEST_CASE("radial_laplacian_power") {
    const RadialFunction q = from_jet([](const Jet& x) { return ipow(x, 4); });
    CHECK(radial_laplacian_power({5, 0.0}, q, 2, 0.6) == Approx(280.0).epsilon(1e-13));
    CHECK(drho_laplacian_power({5, 0.0}, q, 1, 0.6) == Approx(56.0 * 0.6).epsilon(1e-14));
    CHECK_THROWS_AS(radial_laplacian_power({5, 0.0}, q, 0, 0.6), ContractError);
    CHECK_THROWS_AS(radial_laplacian_power({5, 0.0}, q, 5, 0.6), ContractError);

    const RadialFunction bump = polynomial_bump(1.0, 6);
    for (double rho : {0.05, 0.3, 0.7})
        for (double b : {0.0, 1.0}) {
            const ModelManifold m{4, b};
            CHECK(radial_laplacian_power(m, bump, 1, rho) == radial_laplacian(m, bump, rho));
            CHECK(drho_laplacian_power(m, bump, 0, rho) == radial_derivative(bump, rho));
            const LaplacianPair pair = laplacian_power_pair(m, bump, 2, rho);
            CHECK(pair.value == Approx(radial_laplacian_power(m, bump, 2, rho)).epsilon(1e-14));
            CHECK(pair.drho == Approx(drho_laplacian_power(m, bump, 2, rho)).epsilon(1e-14));
        }
}

TEST_CASE("Laplacian towers agree with finite differences") {
    const RadialFunction bump = polynomial_bump(1.0, 6);
    const ModelManifold h3{3, 1.0};
    const double rho = 0.3;
    auto lap = [&](double r) { return radial_laplacian(h3, bump, r); };
    // Delta^2 f = (Delta f)'' + 2 coth(rho) (Delta f)'
    const double h = 1e-3;
    const double d1 = richardson(lap, rho, h);
    const double d2 = (4 * ((lap(rho + h / 2) - 2 * lap(rho) + lap(rho - h / 2)) / (h * h / 4)) -
                       (lap(rho + h) - 2 * lap(rho) + lap(rho - h)) / (h * h)) /
                      3;
    const double fd = d2 + 2.0 / std::tanh(rho) * d1;
    CHECK(radial_laplacian_power(h3, bump, 2, rho) == Approx(fd).epsilon(1e-6));

    const ModelManifold m{5, 1.0};
    auto lap5 = [&](double r) { return radial_laplacian(m, bump, r); };
    CHECK(drho_laplacian_power(m, bump, 1, 0.4) == Approx(richardson(lap5, 0.4, 1e-3)).epsilon(1e-6));
}

TEST_CASE("Laplacian equals f'' + ((n-1)/rho + J'/J) f'") {
    const RadialFunction bump = polynomial_bump(1.0, 4);
    const RadialFunction cut = smooth_cutoff(0.3, 0.9);
    for (const RadialFunction* f : {&bump, &cut})
        for (int n : {3, 6})
            for (double b : {0.0, 0.25, 1.0})
                for (double rho : {0.01, 0.2, 0.45, 0.8}) {
                    const ModelManifold m{n, b};
                    const Jet j = f->jet(rho, 2);
                    const double ref =
                        2 * j[2] + ((n - 1) / rho + density_log_deriv(m, rho)) * j[1];
                    const double got = radial_laplacian(m, *f, rho);
                    CHECK(got == Approx(ref).epsilon(1e-12).scale(std::abs(j[1]) / rho + 1e-300));
                }
}

TEST_CASE("Laplacian is linear") {
    const RadialFunction f = polynomial_bump(1.0, 5);
    const RadialFunction g = smooth_cutoff(0.2, 0.8);
    const double a = 1.7, c = -0.4;
    RadialFunction sum;
    sum.support_radius = 1.0;
    sum.min_smoothness = 4;
    sum.jet = [&](double rho, int order) { return a * f.jet(rho, order) + c * g.jet(rho, order); };
    const ModelManifold m{5, 1.0};
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.95}) {
        const double lhs = radial_laplacian(m, sum, rho);
        const double rhs = a * radial_laplacian(m, f, rho) + c * radial_laplacian(m, g, rho);
        CHECK(lhs == Approx(rhs).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("corpus jets agree with Richardson differences") {
    const RadialFunction members[] = {polynomial_bump(1.0, 4), smooth_cutoff(0.3, 0.9),
                                      mode_profile(2, 0.8, 4)};
    for (const RadialFunction& f : members)
        for (double rho : {0.25, 0.5, 0.75}) {
            const Jet j = f.jet(rho, 2);
            auto v = [&](double r) { return f(r); };
            auto d = [&](double r) { return f.jet(r, 1)[1]; };
            CHECK(j[1] == Approx(richardson(v, rho, 1e-3)).epsilon(1e-6).scale(1e-6));
            CHECK(2 * j[2] == Approx(richardson(d, rho, 1e-3)).epsilon(1e-6).scale(1e-6));
        }
}

TEST_CASE("zero function") {
    const RadialFunction z = zero_function(2.0);
    CHECK(z(0.5) == 0.0);
    CHECK(radial_laplacian_power({4, 1.0}, z, 3, 0.5) == 0.0);
    const RadialFunction bump = polynomial_bump(0.5, 4);
    const Jet past = bump.jet(0.7, 5);
    for (int k = 0; k <= 5; ++k) CHECK(past[k] == 0.0);
}
