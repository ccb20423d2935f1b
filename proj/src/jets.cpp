#include "hardylab/jets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

Jet::Jet(double center, int order) : center_(center), order_(order) {
    if (order < 0 || order > kMaxJetOrder)
        throw ContractError("jet order " + std::to_string(order) + " outside [0, " +
                            std::to_string(kMaxJetOrder) + "]");
}

Jet Jet::constant(double value, double center, int order) {
    Jet j(center, order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(double center, int order) {
    Jet j(center, order);
    j.c_[0] = center;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const { return c_[k] * boost::math::factorial<double>(k); }

Jet Jet::derive() const {
    if (order_ == 0) throw ContractError("cannot differentiate an order-0 jet");
    Jet d(center_, order_ - 1);
    for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
    return d;
}

Jet Jet::truncate(int order) const {
    Jet t(center_, std::min(order, order_));
    for (int k = 0; k <= t.order_; ++k) t.c_[k] = c_[k];
    return t;
}

bool Jet::finite() const {
    for (int k = 0; k <= order_; ++k)
        if (!std::isfinite(c_[k])) return false;
    return true;
}

Jet& Jet::operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(const Jet& a) { return a * -1.0; }

Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.center(), std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
        r[k] = s;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) throw DomainError("jet division by a jet with zero value");
    Jet q(a.center(), std::min(a.order(), b.order()));
    for (int k = 0; k <= q.order(); ++k) {
        double s = a[k];
        for (int i = 1; i <= k; ++i) s -= b[i] * q[k - i];
        q[k] = s / b[0];
    }
    return q;
}

Jet operator+(Jet a, double s) {
    a[0] += s;
    return a;
}
Jet operator+(double s, Jet a) { return std::move(a) + s; }
Jet operator-(Jet a, double s) {
    a[0] -= s;
    return a;
}
Jet operator-(double s, const Jet& a) { return -a + s; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.center(), a.order()) / a; }

Jet exp(const Jet& a) {
    Jet e(a.center(), a.order());
    e[0] = std::exp(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * e[k - j];
        e[k] = s / k;
    }
    return e;
}

Jet log(const Jet& a) {
    if (!(a[0] > 0.0)) throw DomainError("jet log of a non-positive value");
    Jet l(a.center(), a.order());
    l[0] = std::log(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j < k; ++j) s += j * l[j] * a[k - j];
        l[k] = (a[k] - s / k) / a[0];
    }
    return l;
}

Jet pow(const Jet& a, double r) {
    if (r == std::floor(r) && std::abs(r) <= 64.0) {
        const int k = static_cast<int>(r);
        return k >= 0 ? ipow(a, k) : 1.0 / ipow(a, -k);
    }
    if (!(a[0] > 0.0)) throw DomainError("jet pow with non-integer exponent of a non-positive value");
    Jet p(a.center(), a.order());
    p[0] = std::pow(a[0], r);
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += ((r + 1.0) * j - k) * a[j] * p[k - j];
        p[k] = s / (k * a[0]);
    }
    return p;
}

Jet ipow(const Jet& a, int k) {
    if (k < 0) throw ContractError("ipow needs a non-negative exponent");
    Jet result = Jet::constant(1.0, a.center(), a.order());
    Jet base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

namespace {

void sinh_cosh(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.center(), a.order());
    c = Jet(a.center(), a.order());
    s[0] = std::sinh(a[0]);
    c[0] = std::cosh(a[0]);
    for (int k = 1; k <= a.order(); ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc += j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = cc / k;
    }
}

}  // namespace

Jet sinh(const Jet& a) {
    Jet s, c;
    sinh_cosh(a, s, c);
    return s;
}

Jet cosh(const Jet& a) {
    Jet s, c;
    sinh_cosh(a, s, c);
    return c;
}

Jet tanh(const Jet& a) {
    // t' = (1 - t^2) a'
    Jet t(a.center(), a.order());
    Jet w(a.center(), a.order());
    t[0] = std::tanh(a[0]);
    w[0] = 1.0 - t[0] * t[0];
    for (int k = 1; k <= a.order(); ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a[j] * w[k - j];
        t[k] = s / k;
        double tt = 0.0;
        for (int i = 0; i <= k; ++i) tt += t[i] * t[k - i];
        w[k] = -tt;
    }
    return t;
}

Jet compose(const Jet& outer, const Jet& inner) {
    const int order = std::min(outer.order(), inner.order());
    Jet h = inner.truncate(order);
    h[0] = 0.0;
    // Horner in the increment h = inner - inner(center).
    Jet r = Jet::constant(outer[order], inner.center(), order);
    for (int k = order - 1; k >= 0; --k) r = r * h + outer[k];
    return r;
}

double RadialFunction::operator()(double rho) const { return jet(rho, 0)[0]; }

RadialFunction zero_function(double support_radius) {
    RadialFunction f;
    f.id = "zero";
    f.support_radius = support_radius;
    f.min_smoothness = kMaxJetOrder;
    f.jet = [](double rho, int order) { return Jet(rho, order); };
    f.even_jet = [](double s, int order) { return std::optional<Jet>(Jet(s, order)); };
    return f;
}

namespace {

Jet ct_jet(double b, double rho, int order) {
    const Jet x = Jet::variable(rho, order);
    if (b == 0.0) return 1.0 / x;
    const double s = std::sqrt(b);
    return s / tanh(s * x);
}

// Taylor coefficients of x coth x in powers of x^2.
const std::array<double, 41>& xcothx_coefficients() {
    static const std::array<double, 41> a = [] {
        std::array<double, 41> c{};
        c[0] = 1.0;
        for (int k = 1; k <= 40; ++k)
            c[k] = std::ldexp(boost::math::bernoulli_b2n<double>(k), 2 * k) /
                   boost::math::factorial<double>(2 * k);
        return c;
    }();
    return a;
}

// Jet in s of Q(s) = x coth x with x = sqrt(b s); valid for b s well inside pi^2.
Jet q_jet(double b, double s0, int order) {
    Jet q(s0, order);
    if (b == 0.0) {
        q[0] = 1.0;
        return q;
    }
    const auto& a = xcothx_coefficients();
    const double y = b * s0;
    for (int j = 0; j <= order; ++j) {
        double acc = 0.0;
        double yp = 1.0;
        for (int k = j; k <= 40; ++k) {
            acc += a[k] * boost::math::binomial_coefficient<double>(k, j) * yp;
            yp *= y;
        }
        q[j] = acc * std::pow(b, j);
    }
    return q;
}

constexpr double kEvenSwitch = 0.5;

std::optional<LaplacianPair> even_tower(const ModelManifold& m, const RadialFunction& f, int l,
                                        double rho, bool need_drho) {
    if (!f.even_jet) return std::nullopt;
    if (rho >= kEvenSwitch || std::sqrt(m.b) * rho >= kEvenSwitch) return std::nullopt;
    const double s0 = rho * rho;
    const int order = 2 * l + (need_drho ? 1 : 0);
    auto F = f.even_jet(s0, order);
    if (!F) return std::nullopt;
    const Jet q = q_jet(m.b, s0, order);
    const Jet s = Jet::variable(s0, order);
    Jet g = *F;
    for (int i = 0; i < l; ++i) {
        const Jet d1 = g.derive();
        const Jet d2 = d1.derive();
        g = 4.0 * (s * d2) + 2.0 * ((1.0 + (m.n - 1) * q) * d1.truncate(d2.order()));
    }
    return LaplacianPair{g[0], need_drho ? 2.0 * rho * g[1] : 0.0};
}

void check_tower_args(const RadialFunction& f, int l, double rho, int needed) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("radial operators need rho > 0");
    if (l < 0 || l > kMaxLaplacianPower)
        throw ContractError("Laplacian power " + std::to_string(l) + " outside [0, " +
                            std::to_string(kMaxLaplacianPower) + "]");
    if (f.min_smoothness < needed)
        throw ContractError("profile " + f.id + " has smoothness " + std::to_string(f.min_smoothness) +
                            ", operator needs " + std::to_string(needed));
}

LaplacianPair tower(const ModelManifold& m, const RadialFunction& f, int l, double rho, bool need_drho) {
    check_tower_args(f, l, rho, 2 * l + (need_drho ? 1 : 0));
    check_manifold(m);
    if (rho >= f.support_radius) return {0.0, 0.0};
    if (l >= 2 || (l >= 1 && need_drho)) {
        if (auto r = even_tower(m, f, l, rho, need_drho)) return *r;
    }
    Jet g = f.jet(rho, 2 * l + (need_drho ? 1 : 0));
    for (int i = 0; i < l; ++i) g = laplacian_jet(m, g);
    return {g[0], need_drho ? g[1] : 0.0};
}

}  // namespace

Jet laplacian_jet(const ModelManifold& m, const Jet& f) {
    if (f.order() < 2) throw ContractError("Laplacian needs a jet of order >= 2");
    const Jet d1 = f.derive();
    const Jet d2 = d1.derive();
    const Jet c = ct_jet(m.b, f.center(), d2.order());
    return d2 + (m.n - 1) * (c * d1.truncate(d2.order()));
}

double radial_derivative(const RadialFunction& f, double rho) {
    return tower(ModelManifold{2, 0.0}, f, 0, rho, true).drho;
}

double radial_laplacian(const ModelManifold& m, const RadialFunction& f, double rho) {
    return tower(m, f, 1, rho, false).value;
}

double radial_laplacian_power(const ModelManifold& m, const RadialFunction& f, int l, double rho) {
    if (l < 1) throw ContractError("radial_laplacian_power needs l >= 1");
    return tower(m, f, l, rho, false).value;
}

double drho_laplacian_power(const ModelManifold& m, const RadialFunction& f, int l, double rho) {
    return tower(m, f, l, rho, true).drho;
}

LaplacianPair laplacian_power_pair(const ModelManifold& m, const RadialFunction& f, int l,
                                   double rho) {
    return tower(m, f, l, rho, true);
}

}  // namespace hardylab
