#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = true;
};

QuadratureResult& operator+=(QuadratureResult& a, const QuadratureResult& b);

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 2000;
};

// Thrown when the subdivision budget runs out; carries the best estimate reached.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

// Adaptive bisection driven by the embedded Gauss-Kronrod 7/15 pair.
QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10,
                           double abs_tol = 1e-13, int max_subdivisions = 2000);
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts);

struct SingularWeight {
    enum class Kind { none, power, critical_log };
    Kind kind = Kind::none;
    double param = 0.0;

    static SingularWeight none() { return {}; }
    static SingularWeight power(double alpha) { return {Kind::power, alpha}; }
    static SingularWeight critical_log(double p) { return {Kind::critical_log, p}; }

    double operator()(double rho) const;
};

// Integral of f(rho) w(rho) over (0, R).
QuadratureResult integrate_weighted(const Integrand& f, const SingularWeight& w, double R,
                                    double rel_tol = 1e-10, double abs_tol = 1e-13);
QuadratureResult integrate_weighted(const Integrand& f, const SingularWeight& w, double R,
                                    const QuadratureOptions& opts);

// Below this radius the critical-log factor is treated as its limit value.
constexpr double kCriticalFloor = 1e-280;

// Integral of g over (a, b), 0 < a < b, in the coordinate u = ln rho.
QuadratureResult integrate_log(const Integrand& g, double a, double b, const QuadratureOptions& opts);

// Integral of g over (lower, R) in u = ln rho, split at the breakpoints.  With lower = 0 the
// tail toward the origin is summed in unit-free chunks until it stops contributing.
QuadratureResult integrate_radial(const Integrand& g, double lower, double R,
                                  const std::vector<double>& breakpoints, const QuadratureOptions& opts);

// Fixed composite Gauss-Legendre rule on a mesh graded geometrically toward both endpoints.
double oracle_integrate(const Integrand& f, double a, double b);

// v-coordinate of the critical substitution: v = (ln 1/rho)^(1-p)/(p-1).
double critical_v(double rho, double p);
double critical_rho(double v, double p);

}  // namespace hardylab
