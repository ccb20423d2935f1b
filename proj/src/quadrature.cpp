#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

QuadratureResult& operator+=(QuadratureResult& a, const QuadratureResult& b) {
    a.value += b.value;
    a.error_estimate += b.error_estimate;
    a.evaluations += b.evaluations;
    a.converged = a.converged && b.converged;
    return a;
}

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    double err = 0.0, l1 = 0.0;
    const double v = GK15::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (!std::isfinite(v) || !std::isfinite(err))
        throw NonConvergence("integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                             QuadratureResult{v, INFINITY, 15, false});
    // Floor at the rounding level of the panel sum.
    err = std::max(err, 50.0 * DBL_EPSILON * l1);
    return {a, b, v, err};
}

void check_tolerances(double rel_tol, double abs_tol) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be > 0");
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw DomainError("integrate needs finite a < b");
    check_tolerances(opts.rel_tol, opts.abs_tol);

    std::priority_queue<Panel> heap;
    const Panel first = gk15(f, a, b);
    heap.push(first);
    double value = first.value, error = first.error;
    long evaluations = 15;
    int subdivisions = 0;
    std::vector<Panel> frozen;

    auto done = [&] { return error <= std::max(opts.rel_tol * std::abs(value), opts.abs_tol); };
    while (!done() && !heap.empty()) {
        if (subdivisions >= opts.max_subdivisions) {
            QuadratureResult best{value, error, evaluations, false};
            throw NonConvergence("quadrature did not converge within " + std::to_string(opts.max_subdivisions) +
                                     " subdivisions",
                                 best);
        }
        const Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a) || !(mid < p.b)) {
            // Panel too narrow to split further; keep its estimate.
            frozen.push_back(p);
            continue;
        }
        const Panel left = gk15(f, p.a, mid);
        const Panel right = gk15(f, mid, p.b);
        evaluations += 30;
        ++subdivisions;
        value += left.value + right.value - p.value;
        error += left.error + right.error - p.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum from the panels to avoid drift from the running updates.
    double v = 0.0, e = 0.0;
    for (auto h = heap; !h.empty(); h.pop()) {
        v += h.top().value;
        e += h.top().error;
    }
    for (const auto& p : frozen) {
        v += p.value;
        e += p.error;
    }
    QuadratureResult r{v, e, evaluations, true};
    if (!(e <= std::max(opts.rel_tol * std::abs(v), opts.abs_tol))) {
        r.converged = false;
        throw NonConvergence("quadrature stalled below the floating-point resolution", r);
    }
    return r;
}

QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                           int max_subdivisions) {
    return integrate(f, a, b, QuadratureOptions{rel_tol, abs_tol, max_subdivisions});
}

double SingularWeight::operator()(double rho) const {
    switch (kind) {
        case Kind::none:
            return 1.0;
        case Kind::power:
            return std::pow(rho, param);
        case Kind::critical_log: {
            const double l = -std::log(rho);
            return 1.0 / (rho * std::pow(l, param));
        }
    }
    return 1.0;
}

double critical_v(double rho, double p) { return std::pow(-std::log(rho), 1.0 - p) / (p - 1.0); }

double critical_rho(double v, double p) { return std::exp(-std::pow((p - 1.0) * v, -1.0 / (p - 1.0))); }

QuadratureResult integrate_weighted(const Integrand& f, const SingularWeight& w, double R,
                                    const QuadratureOptions& opts) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("integrate_weighted needs 0 < R < inf");
    switch (w.kind) {
        case SingularWeight::Kind::none:
            return integrate(f, 0.0, R, opts);
        case SingularWeight::Kind::power: {
            const double alpha = w.param;
            if (!(alpha > -1.0)) throw ValidityError("power weight needs alpha > -1");
            const double q = std::ceil(2.0 / (1.0 + alpha));
            const double e = q * (alpha + 1.0) - 1.0;
            auto g = [&](double s) { return q * f(std::pow(s, q)) * std::pow(s, e); };
            return integrate(g, 0.0, std::pow(R, 1.0 / q), opts);
        }
        case SingularWeight::Kind::critical_log: {
            const double p = w.param;
            if (!(p > 1.0)) throw ValidityError("critical_log weight needs p > 1");
            if (R > 1.0) throw DomainError("critical_log weight needs R <= 1");
            const double split = std::min(R, 0.5);
            const double v_lo = critical_v(kCriticalFloor, p);
            const double v_hi = critical_v(split, p);
            auto g = [&](double v) { return f(critical_rho(v, p)); };
            QuadratureResult r;
            const double tail = f(kCriticalFloor) * v_lo;
            r.value = tail;
            r.evaluations = 1;
            QuadratureOptions sub = opts;
            sub.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(tail));
            r += integrate(g, v_lo, v_hi, sub);
            if (R > split) {
                auto h = [&](double rho) { return f(rho) * w(rho); };
                r += integrate(h, split, R, opts);
            }
            return r;
        }
    }
    return {};
}

QuadratureResult integrate_weighted(const Integrand& f, const SingularWeight& w, double R, double rel_tol,
                                    double abs_tol) {
    return integrate_weighted(f, w, R, QuadratureOptions{rel_tol, abs_tol, 2000});
}

QuadratureResult integrate_log(const Integrand& g, double a, double b, const QuadratureOptions& opts) {
    if (!(a > 0.0) || !(a < b)) throw DomainError("integrate_log needs 0 < a < b");
    auto h = [&](double u) {
        const double rho = std::exp(u);
        return g(rho) * rho;
    };
    return integrate(h, std::log(a), std::log(b), opts);
}

QuadratureResult integrate_radial(const Integrand& g, double lower, double R,
                                  const std::vector<double>& breakpoints, const QuadratureOptions& opts) {
    if (!(R > lower) || !(lower >= 0.0)) throw DomainError("integrate_radial needs 0 <= lower < R");
    std::vector<double> pts;
    if (lower > 0.0) pts.push_back(lower);
    for (double x : breakpoints)
        if (x > lower && x < R) pts.push_back(x);
    pts.push_back(R);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    QuadratureResult total;
    total.value = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) total += integrate_log(g, pts[i], pts[i + 1], opts);

    if (lower == 0.0) {
        // Chunks of constant length in u; the tail is closed once two chunks are negligible.
        constexpr double chunk = 4.0;
        const double u_min = std::log(kCriticalFloor);
        double u = std::log(pts.front());
        int quiet = 0;
        double last = 0.0;
        while (u > u_min && quiet < 2) {
            QuadratureOptions sub = opts;
            sub.abs_tol = std::max(opts.abs_tol, 0.25 * opts.rel_tol * std::abs(total.value));
            const double lo = std::max(u - chunk, u_min);
            const QuadratureResult c = integrate_log(g, std::exp(lo), std::exp(u), sub);
            total += c;
            last = std::abs(c.value);
            const double negligible = 1e-3 * std::max(opts.rel_tol * std::abs(total.value), opts.abs_tol);
            quiet = last <= negligible ? quiet + 1 : 0;
            u = lo;
        }
        total.error_estimate += last;
    }
    return total;
}

double oracle_integrate(const Integrand& f, double a, double b) {
    using GL = boost::math::quadrature::gauss<double, 30>;
    constexpr double ratio = 0.125;
    constexpr int levels = 120;
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    auto panel = [&](double lo, double hi) {
        if (hi > lo) sum += GL::integrate(f, lo, hi);
    };
    double outer = 1.0;
    for (int k = 0; k < levels; ++k) {
        const double inner = outer * ratio;
        panel(a + h * inner, a + h * outer);
        panel(b - h * outer, b - h * inner);
        outer = inner;
    }
    panel(a, a + h * outer);
    panel(b - h * outer, b);
    return sum;
}

}  // namespace hardylab
