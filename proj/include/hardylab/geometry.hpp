#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace hardylab {

// Rotationally symmetric model space with sectional curvature K = -b.
struct ModelManifold {
    int n = 2;
    double b = 0.0;
};

void check_manifold(const ModelManifold& m);

double ct(double b, double t);
double dd(double b, double t);
double density(const ModelManifold& m, double t);
double log_density(const ModelManifold& m, double t);
double density_log_deriv(const ModelManifold& m, double t);
double measure_weight(const ModelManifold& m, double t);

double rho_from_r(double r);
double r_from_rho(double rho);

struct CothGap {
    double lhs;
    double rhs;
};

// (t coth t - 1, 3t^2/(pi^2 + t^2)).
CothGap coth_gap_lower_bound(double t);

// Radial density J with its derivative, t > 0.
struct DensityProfile {
    int n = 2;
    std::function<std::pair<double, double>(double)> eval;
};

DensityProfile model_profile(const ModelManifold& m);

// Checks J >= 1, J' >= 0 and J'/J >= (n-1) D_b(t)/t on the grid.
// Returns the first failing radius, or a negative value when all pass.
double check_profile(const DensityProfile& profile, double b, const std::vector<double>& grid,
                     double rel_tol = 1e-12);

}  // namespace hardylab
