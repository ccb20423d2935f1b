#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/geometry.hpp"

namespace hardylab {

constexpr int kMaxJetOrder = 15;

// Truncated Taylor series: coeffs[k] = f^(k)(center) / k!.
class Jet {
public:
    Jet() = default;
    Jet(double center, int order);

    static Jet constant(double value, double center, int order);
    static Jet variable(double center, int order);

    double center() const { return center_; }
    int order() const { return order_; }
    double operator[](int k) const { return c_[k]; }
    double& operator[](int k) { return c_[k]; }
    double value() const { return c_[0]; }
    double derivative(int k) const;

    Jet derive() const;
    Jet truncate(int order) const;
    bool finite() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);

private:
    double center_ = 0.0;
    int order_ = 0;
    std::array<double, kMaxJetOrder + 1> c_{};
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, double r);
Jet ipow(const Jet& a, int k);
Jet sqrt(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
// outer is a jet in y centred at inner.value(); result is the jet of outer(inner(x)).
Jet compose(const Jet& outer, const Jet& inner);

// Compactly supported radial profile f(rho).
struct RadialFunction {
    std::string id;
    double support_radius = 1.0;
    // f vanishes identically on [0, inner_radius].
    double inner_radius = 0.0;
    int min_smoothness = 0;
    // f behaves like (ln 1/rho)^log_growth as rho -> 0; nonzero only for the critical extremizer.
    double log_growth = 0.0;
    std::function<Jet(double rho, int order)> jet;
    // Optional representation f(rho) = F(rho^2); returns the jet of F at s when available.
    std::function<std::optional<Jet>(double s, int order)> even_jet;
    // Radii where the profile changes character; used to split integrals.
    std::vector<double> breakpoints;

    double operator()(double rho) const;
};

RadialFunction zero_function(double support_radius = 1.0);

// Jet of f'' + (n-1) ct_b f' from a jet of f; the order drops by two.
Jet laplacian_jet(const ModelManifold& m, const Jet& f);

double radial_derivative(const RadialFunction& f, double rho);
double radial_laplacian(const ModelManifold& m, const RadialFunction& f, double rho);
double radial_laplacian_power(const ModelManifold& m, const RadialFunction& f, int l, double rho);
double drho_laplacian_power(const ModelManifold& m, const RadialFunction& f, int l, double rho);

// Both towers from one jet evaluation: {Delta^l f, d/drho Delta^l f}.
struct LaplacianPair {
    double value;
    double drho;
};
LaplacianPair laplacian_power_pair(const ModelManifold& m, const RadialFunction& f, int l,
                                   double rho);

constexpr int kMaxLaplacianPower = 4;

}  // namespace hardylab
