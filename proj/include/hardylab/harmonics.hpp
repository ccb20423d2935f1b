#pragma once

#include <string>
#include <vector>

#include "hardylab/jets.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

// Spherical-harmonic modes on the hyperbolic ball (b = 1).  Only radial integrals are ever
// formed; the harmonics themselves are orthonormal and never evaluated.

double mode_eigenvalue(int n, int k);

struct ModeSpec {
    int k = 0;
    double eigenvalue = 0.0;
    RadialFunction profile;  // f_k = O(r^k) near the origin
};

ModeSpec make_mode(int n, int k, RadialFunction profile);

// F'' + (n-1) coth(rho) F'
double hyperbolic_radial_laplacian(int n, const RadialFunction& F, double rho);

// Throws ValidityError unless n >= 3 and -2 < beta <= n-4.
void check_mow_params(int n, double beta);
// beta = n-4: admitted by the inequality, but the integration-by-parts route needs beta < n-4.
bool mow_boundary(int n, double beta);

// c_k int f^2 rho^-beta sinh^-4 dV - 2 int f Delta f rho^-beta sinh^-2 dV, dV = sinh^{n-1} drho
QuadratureResult mode_form(int n, double beta, int k, const RadialFunction& f, const QuadratureOptions& opts = {});

struct ModeTerm {
    int k = 0;
    double lhs = 0.0;   // int (Delta f_k)^2 rho^-beta dV
    double rhs = 0.0;   // int (Delta f_k - c_k f_k / sinh^2)^2 rho^-beta dV
    double form = 0.0;  // mode_form(k)
};

struct MowResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // sum of c_k * mode_form(k) = rhs - lhs
    double quad_error = 0.0;
    std::vector<ModeTerm> modes;
    std::string note;
};

constexpr std::size_t kMaxModes = 16;

MowResult mow_compare(int n, double beta, const std::vector<ModeSpec>& modes, const QuadratureOptions& opts = {});

// ((n-2+k)^2 + k^2 - (beta+2)^2) / 2
double leading_coefficient(int n, double beta, int k);
// (n-3) - beta(beta+1)/((l+1)(2l+1)) + beta(n-5)/(2l+1)
double series_coefficient(int n, double beta, int l);

struct CoefficientViolation {
    int l = 0;  // 0 marks the leading coefficient
    double value = 0.0;
};

struct CoefficientCheck {
    double leading = 0.0;
    double min_series = 0.0;
    std::vector<CoefficientViolation> violations;
    bool ok() const { return violations.empty(); }
};

CoefficientCheck coefficient_check(int n, double beta, int k, int l_max);

// The k = 1 pointwise expression whose nonnegativity gives the mode inequality.
double positivity_expression(int n, double beta, double rho);

struct PositivityMin {
    double value = 0.0;
    double rho = 0.0;
};
// Grid points must lie in (0, 30].
PositivityMin pointwise_positivity(int n, double beta, const std::vector<double>& grid);

// int F'^2 rho^{n-beta-3} S^{n-3} - ((n-beta-4)^2/4) int F^2 rho^{n-beta-5} S^{n-5}, S = sinh(rho)/rho.
// Needs beta < n-4.
QuadratureResult radial_weighted_hardy_check(int n, double beta, const RadialFunction& F,
                                             const QuadratureOptions& opts = {});

}  // namespace hardylab
