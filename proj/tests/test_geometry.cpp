#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hardylab/errors.hpp"
#include "hardylab/geometry.hpp"

using namespace hardylab;
using doctest::Approx;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

namespace {

// Frozen from tests/oracles/freeze_values.py
constexpr double kCoth1 = 1.3130352854993313;
constexpr double kSinh1 = 1.1752011936438015;
constexpr double kSinh1Sq = 1.3810978455418157;

double big_dd(double b, double t) {
    const BigFloat x = boost::multiprecision::sqrt(BigFloat(b)) * BigFloat(t);
    return static_cast<double>(x * boost::multiprecision::cosh(x) / boost::multiprecision::sinh(x) - 1);
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, i / (count - 1.0)));
    return g;
}

}  // namespace

TEST_CASE("ct") {
    CHECK(ct(0.0, 2.0) == 0.5);
    CHECK(ct(1.0, 1.0) == Approx(kCoth1).epsilon(1e-15));
    CHECK(ct(4.0, 0.5) == Approx(2.0 * kCoth1).epsilon(1e-15));
    CHECK_THROWS_AS(ct(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ct(1.0, -1.0), DomainError);
    // continuous in b at 0
    CHECK(ct(1e-14, 0.7) == Approx(1.0 / 0.7).epsilon(1e-13));
}

TEST_CASE("dd") {
    CHECK(dd(0.0, 7.3) == 0.0);
    CHECK(dd(1.0, 1.0) == Approx(kCoth1 - 1.0).epsilon(1e-15));
    CHECK(dd(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(dd(1.0, -0.1), DomainError);
}

TEST_CASE("dd matches a 50-digit evaluation across the series crossovers") {
    for (double b : {0.25, 1.0, 4.0})
        for (double t : log_grid(1e-7, 3.0, 400)) {
            const double ref = big_dd(b, t);
            CHECK(dd(b, t) == Approx(ref).epsilon(4e-15));
        }
}

TEST_CASE("density") {
    CHECK(density({5, 0.0}, 3.2) == 1.0);
    CHECK(density({2, 1.0}, 1.0) == Approx(kSinh1).epsilon(1e-15));
    CHECK(density({3, 1.0}, 1.0) == Approx(kSinh1Sq).epsilon(1e-15));
    CHECK_THROWS_AS(density({3, 1.0}, 0.0), DomainError);
    CHECK_THROWS_AS(density({200, 1.0}, 50.0), OverflowError);
    CHECK_THROWS_AS(density({1, 1.0}, 1.0), DomainError);
}

TEST_CASE("density_log_deriv") {
    CHECK(density_log_deriv({4, 0.0}, 1.5) == 0.0);
    CHECK(density_log_deriv({2, 1.0}, 1.0) == Approx(kCoth1 - 1.0).epsilon(1e-15));
    CHECK(density_log_deriv({3, 1.0}, 1.0) == Approx(2.0 * (kCoth1 - 1.0)).epsilon(1e-15));
}

TEST_CASE("measure_weight") {
    CHECK(measure_weight({3, 0.0}, 2.0) == Approx(4.0).epsilon(1e-15));
    CHECK(measure_weight({2, 1.0}, 1.0) == Approx(kSinh1).epsilon(1e-15));
    CHECK(measure_weight({3, 1.0}, 1e-12) < 1e-23);
}

TEST_CASE("ball coordinates") {
    CHECK(rho_from_r(0.0) == 0.0);
    CHECK(rho_from_r(0.5) == Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(rho_from_r(std::tanh(1.0)) == Approx(2.0).epsilon(1e-15));
    CHECK(r_from_rho(0.0) == 0.0);
    CHECK(r_from_rho(std::log(3.0)) == Approx(0.5).epsilon(1e-15));
    CHECK(r_from_rho(50.0) <= 1.0);
    CHECK(1.0 - r_from_rho(20.0) == Approx(2.0 * std::exp(-20.0)).epsilon(1e-6));
    CHECK_THROWS_AS(rho_from_r(1.0), DomainError);
    CHECK_THROWS_AS(rho_from_r(-0.1), DomainError);
    for (double rho : log_grid(1e-6, 30.0, 200)) {
        if (rho > 18.0) break;  // tanh(rho/2) rounds to 1 beyond this
        CHECK(rho_from_r(r_from_rho(rho)) == Approx(rho).epsilon(1e-12 * std::max(1.0, std::exp(rho / 2))));
    }
}

TEST_CASE("coth gap") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const CothGap at_pi = coth_gap_lower_bound(std::numbers::pi);
    CHECK(at_pi.lhs == Approx(2.1533480949371623).epsilon(1e-14));
    CHECK(at_pi.rhs == Approx(1.5).epsilon(1e-15));
    const CothGap at_one = coth_gap_lower_bound(1.0);
    CHECK(at_one.lhs == Approx(kCoth1 - 1.0).epsilon(1e-15));
    CHECK(at_one.rhs == Approx(0.2759990050511257).epsilon(1e-15));
    const CothGap small = coth_gap_lower_bound(1e-5);
    CHECK(small.lhs / small.rhs == Approx(pi2 / 9.0).epsilon(1e-8));
}

TEST_CASE("dd dominates the rescaled coth bound") {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (double b : {0.0, 0.25, 1.0, 4.0})
        for (double t : log_grid(1e-6, 50.0, 2000)) {
            const double d = dd(b, t);
            CHECK(d >= 0.0);
            CHECK(d >= 3.0 * b * t * t / (pi2 + b * t * t));
        }
}

TEST_CASE("density Taylor term") {
    // C = (n-1)^2/4 bounds the t^4 coefficient (n-1)/120 + (n-1)(n-2)/72 with room to spare.
    for (int n : {2, 3, 5, 8})
        for (double b : {0.0, 1.0})
            for (double t : log_grid(1e-4, 0.1, 50)) {
                const double r = density({n, b}, t) - 1.0 - (n - 1) * b * t * t / 6.0;
                CHECK(std::abs(r) <= 0.25 * (n - 1) * (n - 1) * t * t * t * t + 1e-15);
            }
}

TEST_CASE("log derivative agrees with a finite difference") {
    for (int n : {2, 4, 7})
        for (double b : {0.25, 1.0})
            for (double t : {0.01, 0.3, 1.0, 4.0, 12.0}) {
                const ModelManifold m{n, b};
                const double h = 1e-5 * t;
                const double fd = (log_density(m, t + h) - log_density(m, t - h)) / (2 * h);
                CHECK(density_log_deriv(m, t) == Approx(fd).epsilon(1e-8));
            }
}

TEST_CASE("density is nondecreasing and model profiles pass the profile check") {
    const auto grid = log_grid(1e-4, 20.0, 3000);
    for (double b : {0.0, 0.25, 1.0, 4.0}) {
        const ModelManifold m{5, b};
        double prev = 0.0;
        for (double t : grid) {
            const double j = density(m, t);
            CHECK(j >= prev);
            prev = j;
        }
        CHECK(check_profile(model_profile(m), b, grid) < 0.0);
    }
    // a flat profile is too weak for b = 1
    const DensityProfile flat{3, [](double) { return std::pair<double, double>{1.0, 0.0}; }};
    CHECK(check_profile(flat, 1.0, grid) > 0.0);
    CHECK(check_profile(flat, 0.0, grid) < 0.0);
}
