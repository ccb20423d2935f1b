#include "hardylab/corpus.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <system_error>

#include "hardylab/errors.hpp"
#include "hardylab/geometry.hpp"

namespace hardylab {

namespace {

constexpr double kExpGuard = 700.0;

Jet zero_jet(double center, int order) { return Jet(center, order); }

// Jet of g(t/scale) from a jet of g at t/scale.
Jet rescale(const Jet& g, double t, double scale) {
    Jet r(t, g.order());
    double f = 1.0;
    for (int k = 0; k <= g.order(); ++k) {
        r[k] = g[k] * f;
        f /= scale;
    }
    return r;
}

void require_valid(Family fam, const CaseParams& c) {
    const Validity v = validity(fam, c);
    if (!v) throw ValidityError(family_name(fam) + ": " + v.reason);
}

void require_scale(double s, double hi, const char* name) {
    if (!(s >= kScaleFloor) || !(s <= hi))
        throw DomainError(std::string(name) + " = " + format_number(s) + " outside [" + format_number(kScaleFloor) +
                          ", " + format_number(hi) + "]");
}

// phi(rho) (1 - phi(rho/scale)) rho^{-a} with phi = cutoff(a0, b0).
RadialFunction windowed_power(std::string id, double a0, double b0, double scale, double a) {
    RadialFunction f;
    f.id = std::move(id);
    f.support_radius = b0;
    f.inner_radius = a0 * scale;
    f.min_smoothness = kMaxJetOrder;
    f.breakpoints = {a0 * scale, b0 * scale, a0, b0};
    f.jet = [=](double rho, int order) {
        if (rho <= a0 * scale || rho >= b0) return zero_jet(rho, order);
        const Jet outer = cutoff_jet(a0, b0, rho, order);
        const Jet inner = rescale(cutoff_jet(a0, b0, rho / scale, order), rho, scale);
        return outer * (1.0 - inner) * pow(Jet::variable(rho, order), -a);
    };
    return f;
}

using Params = std::map<std::string, double>;

Params parse_params(const std::string& body, const std::string& id, const Params& defaults) {
    Params out = defaults;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        const std::string item = body.substr(pos, comma - pos);
        const size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("corpus id '" + id + "': expected key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (!defaults.count(key)) throw std::invalid_argument("corpus id '" + id + "': unknown key '" + key + "'");
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), x);
        if (ec != std::errc() || ptr != val.data() + val.size() || val.empty())
            throw std::invalid_argument("corpus id '" + id + "': bad number '" + val + "'");
        out[key] = x;
        pos = comma + 1;
    }
    return out;
}

int as_int(double x, const std::string& key) {
    if (x != std::floor(x) || std::abs(x) > 1e6) throw std::invalid_argument(key + " must be an integer");
    return static_cast<int>(x);
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

Jet cutoff_jet(double a, double b, double t, int order) {
    if (t <= a) return Jet::constant(1.0, t, order);
    if (t >= b) return zero_jet(t, order);
    const Jet x = Jet::variable(t, order);
    // phi = 1 / (1 + exp(w)), w = 1/(b-t) - 1/(t-a)
    const Jet w = 1.0 / (b - x) - 1.0 / (x - a);
    if (w.value() > kExpGuard) return zero_jet(t, order);
    if (w.value() < -kExpGuard) return Jet::constant(1.0, t, order);
    if (w.value() <= 0.0) return 1.0 / (1.0 + exp(w));
    const Jet e = exp(-w);
    return e / (1.0 + e);
}

RadialFunction smooth_cutoff(double a, double b) {
    if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) throw DomainError("smooth_cutoff needs 0 < a < b");
    RadialFunction f;
    f.id = "cutoff:a=" + format_number(a) + ",b=" + format_number(b);
    f.support_radius = b;
    f.min_smoothness = kMaxJetOrder;
    f.breakpoints = {a, b};
    f.jet = [a, b](double rho, int order) { return cutoff_jet(a, b, rho, order); };
    f.even_jet = [a, b](double s, int order) -> std::optional<Jet> {
        if (s <= a * a) return Jet::constant(1.0, s, order);
        if (s >= b * b) return zero_jet(s, order);
        const Jet r = sqrt(Jet::variable(s, order));
        return compose(cutoff_jet(a, b, r.value(), order), r);
    };
    return f;
}

RadialFunction polynomial_bump(double R, int m) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("polynomial_bump needs R > 0");
    if (m < 2) throw DomainError("polynomial_bump needs m >= 2");
    RadialFunction f;
    f.id = "bump:R=" + format_number(R) + ",m=" + std::to_string(m);
    f.support_radius = R;
    f.min_smoothness = m - 1;
    f.jet = [R, m](double rho, int order) {
        if (rho >= R) return zero_jet(rho, order);
        const Jet x = Jet::variable(rho, order) / R;
        return ipow(1.0 - x * x, m);
    };
    f.even_jet = [R, m](double s, int order) -> std::optional<Jet> {
        if (s >= R * R) return zero_jet(s, order);
        return ipow(1.0 - Jet::variable(s, order) / (R * R), m);
    };
    return f;
}

std::string extremizer_name(ExtremizerKind k) {
    switch (k) {
        case ExtremizerKind::hardy:
            return "hardy";
        case ExtremizerKind::critical:
            return "critical";
        case ExtremizerKind::onetwo:
            return "onetwo";
        case ExtremizerKind::rellich2:
            return "rellich2";
    }
    return "unknown";
}

ExtremizerKind extremizer_kind(const std::string& name) {
    if (name == "hardy" || name == "hardy_ext") return ExtremizerKind::hardy;
    if (name == "critical" || name == "critical_ext" || name == "crit_ext") return ExtremizerKind::critical;
    if (name == "onetwo" || name == "onetwo_ext") return ExtremizerKind::onetwo;
    if (name == "rellich2" || name == "rellich2_ext") return ExtremizerKind::rellich2;
    throw std::invalid_argument("unknown extremizer family '" + name + "'");
}

double max_scale(ExtremizerKind k, const CaseParams& c) {
    if (k == ExtremizerKind::critical) return (c.p - 1.0) / (2.0 * c.p);
    return 0.25;
}

RadialFunction hardy_extremizer(const CaseParams& c, double eps) {
    require_valid(Family::hardy, c);
    require_scale(eps, 0.25, "eps");
    const double a = (c.n - c.p - c.beta) / c.p;
    return windowed_power("hardy_ext:eps=" + format_number(eps), 1.0, 2.0, eps, a);
}

RadialFunction critical_extremizer(const CaseParams& c, double delta) {
    if (!(c.p > 1.0)) throw ValidityError("critical extremizer needs p > 1");
    require_scale(delta, (c.p - 1.0) / (2.0 * c.p), "delta");
    const double gamma = (c.p - 1.0) / c.p - delta;
    RadialFunction f;
    f.id = "critical_ext:delta=" + format_number(delta);
    f.support_radius = 1.0;
    f.min_smoothness = kMaxJetOrder;
    f.log_growth = gamma;
    f.breakpoints = {0.5};
    f.jet = [gamma](double rho, int order) {
        if (rho >= 1.0) return zero_jet(rho, order);
        const Jet L = -log(Jet::variable(rho, order));
        return pow(L, gamma) * cutoff_jet(0.5, 1.0, rho, order);
    };
    return f;
}

RadialFunction onetwo_extremizer(const CaseParams& c, double delta) {
    require_valid(Family::onetwo, c);
    require_scale(delta, 0.25, "delta");
    return windowed_power("onetwo_ext:delta=" + format_number(delta), 0.5, 1.0, delta,
                          (c.n - c.p - c.beta) / c.p);
}

RadialFunction rellich2_extremizer(const CaseParams& c, double delta) {
    require_valid(Family::rellich2, c);
    require_scale(delta, 0.25, "delta");
    return windowed_power("rellich2_ext:delta=" + format_number(delta), 0.5, 1.0, delta,
                          (c.n - 2.0 * c.p - c.beta) / c.p);
}

RadialFunction extremizer(ExtremizerKind k, const CaseParams& c, double scale) {
    switch (k) {
        case ExtremizerKind::hardy:
            return hardy_extremizer(c, scale);
        case ExtremizerKind::critical:
            return critical_extremizer(c, scale);
        case ExtremizerKind::onetwo:
            return onetwo_extremizer(c, scale);
        case ExtremizerKind::rellich2:
            return rellich2_extremizer(c, scale);
    }
    throw std::invalid_argument("unknown extremizer family");
}

RadialFunction mode_profile(int k, double R, int m) {
    if (k < 0) throw DomainError("mode index k must be >= 0");
    if (!(R > 0.0) || !(R < 1.0)) throw DomainError("mode profile needs 0 < R < 1");
    if (m < 2) throw DomainError("mode profile needs m >= 2");
    RadialFunction f;
    f.id = "mode:k=" + std::to_string(k) + ",R=" + format_number(R) + ",m=" + std::to_string(m);
    const double rho_max = rho_from_r(R);
    f.support_radius = rho_max;
    f.min_smoothness = m - 1;
    f.jet = [=](double rho, int order) {
        if (rho >= rho_max) return zero_jet(rho, order);
        const Jet r = tanh(Jet::variable(rho, order) * 0.5);
        const Jet x = r / R;
        return ipow(r, k) * ipow(1.0 - x * x, m);
    };
    return f;
}

RadialFunction make_corpus(const std::string& id, const CaseParams& c) {
    const size_t colon = id.find(':');
    const std::string name = id.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : id.substr(colon + 1);
    if (name == "zero") {
        if (!body.empty()) throw std::invalid_argument("corpus id 'zero' takes no parameters");
        return zero_function();
    }
    if (name == "bump") {
        auto q = parse_params(body, id, {{"R", 1.0}, {"m", 4.0}});
        return polynomial_bump(q["R"], as_int(q["m"], "m"));
    }
    if (name == "cutoff") {
        auto q = parse_params(body, id, {{"a", 0.3}, {"b", 0.9}});
        return smooth_cutoff(q["a"], q["b"]);
    }
    if (name == "mode") {
        auto q = parse_params(body, id, {{"k", 1.0}, {"R", 0.8}, {"m", 4.0}});
        return mode_profile(as_int(q["k"], "k"), q["R"], as_int(q["m"], "m"));
    }
    if (name == "hardy_ext") {
        auto q = parse_params(body, id, {{"eps", 1e-2}});
        return hardy_extremizer(c, q["eps"]);
    }
    if (name == "critical_ext" || name == "crit_ext" || name == "onetwo_ext" || name == "rellich2_ext") {
        auto q = parse_params(body, id, {{"delta", 0.1}});
        return extremizer(extremizer_kind(name), c, q["delta"]);
    }
    throw std::invalid_argument("unknown corpus family '" + name + "'");
}

}  // namespace hardylab
