#include "hardylab/functionals.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

const double kPi = boost::math::constants::pi<double>();
const double kPi2 = kPi * kPi;

}  // namespace

double remainder_rp(double xi, double eta, double p) {
    if (!(p > 1.0)) throw DomainError("R_p needs p > 1");
    const double axi = std::abs(xi);
    const double signed_pow = xi == 0.0 ? 0.0 : std::copysign(std::pow(axi, p - 1.0), xi);
    const double r = std::pow(std::abs(eta), p) / p + (p - 1.0) / p * std::pow(axi, p) - signed_pow * eta;
    return std::max(r, 0.0);
}

double remainder_rp_integral_form(double xi, double eta, double p) {
    if (!(p > 1.0)) throw DomainError("R_p needs p > 1");
    const double d = xi - eta;
    if (d == 0.0) return 0.0;
    const QuadratureOptions opts{1e-12, 1e-300, 2000};
    double integral = 0.0;
    // |t xi + (1-t) eta| = |eta + t d| vanishes at t0 = -eta/d.
    const double t0 = -eta / d;
    if (t0 > 0.0 && t0 < 1.0) {
        const double scale = std::pow(std::abs(d), p - 2.0);
        auto right = [&](double s) { return (t0 + s) * scale; };
        auto left = [&](double s) { return (t0 - s) * scale; };
        integral += integrate_weighted(right, SingularWeight::power(p - 2.0), 1.0 - t0, opts).value;
        integral += integrate_weighted(left, SingularWeight::power(p - 2.0), t0, opts).value;
    } else {
        auto g = [&](double t) { return std::pow(std::abs(eta + t * d), p - 2.0) * t; };
        integral = integrate(g, 0.0, 1.0, opts).value;
    }
    return (p - 1.0) * integral * d * d;
}

const std::vector<CaseInfo>& case_registry() {
    using F = Family;
    // id, family, display, order, uses_l, critical, quantitative, identity, hyperbolic
    static const std::vector<CaseInfo> reg = {
        {"HARDY_SUB", F::hardy, "weighted Hardy", 1, false, false, false, true, false},
        {"HARDY_QUANT_D", F::hardy, "quantitative Hardy, D_b weight", 1, false, false, true, false, false},
        {"HARDY_QUANT_PI", F::hardy, "quantitative Hardy, 3b(n-1) term", 1, false, false, true, false, false},
        {"CRIT_HARDY", F::critical_hardy, "critical Hardy", 1, false, true, false, true, false},
        {"CRIT_QUANT_D", F::critical_hardy, "quantitative critical Hardy, D_b weight", 1, false, true, true, false,
         false},
        {"CRIT_QUANT_PI", F::critical_hardy, "quantitative critical Hardy, 3b(n-1) term", 1, false, true, true,
         false, false},
        {"CRIT_N", F::critical_n, "critical Hardy with p = n", 1, false, true, false, false, false},
        {"ONETWO", F::onetwo, "first-order Rellich lemma", 1, false, false, false, true, false},
        {"ONETWO_QUANT", F::onetwo, "quantitative first-order Rellich lemma", 1, false, false, true, false, false},
        {"RELLICH_12", F::onetwo, "Rellich, first to second order", 2, false, false, false, false, false},
        {"RELLICH_12_QUANT", F::onetwo, "quantitative Rellich, first to second order", 2, false, false, true, false,
         false},
        {"RELLICH_2", F::rellich2, "weighted Rellich", 2, false, false, false, false, false},
        {"RELLICH_2_QUANT", F::rellich2, "quantitative weighted Rellich", 2, false, false, true, false, false},
        {"CRIT_RELLICH_2", F::critical_rellich2, "critical Rellich", 2, false, true, false, false, false},
        {"CRIT_RELLICH_2_QUANT", F::critical_rellich2, "quantitative critical Rellich", 2, false, true, true, false,
         false},
        {"RELLICH_EVEN", F::rellich_even, "higher-order Rellich, k = 2l", 2, true, false, false, false, false},
        {"RELLICH_EVEN_QUANT", F::rellich_even, "quantitative higher-order Rellich, k = 2l", 2, true, false, true,
         false, false},
        {"RELLICH_ODD", F::rellich_odd, "higher-order Rellich, k = 2l+1", 3, true, false, false, false, false},
        {"RELLICH_ODD_QUANT", F::rellich_odd, "quantitative higher-order Rellich, k = 2l+1", 3, true, false, true,
         false, false},
        {"CRIT_EVEN", F::critical_even, "critical higher-order Rellich, k = 2l", 2, true, true, false, false,
         false},
        {"CRIT_EVEN_QUANT", F::critical_even, "quantitative critical higher-order Rellich, k = 2l", 2, true, true,
         true, false, false},
        {"CRIT_ODD", F::critical_odd, "critical higher-order Rellich, k = 2l+1", 3, true, true, false, false,
         false},
        {"CRIT_ODD_QUANT", F::critical_odd, "quantitative critical higher-order Rellich, k = 2l+1", 3, true, true,
         true, false, false},
        {"HYP_HARDY", F::hyp_hardy, "hyperbolic Hardy with dx improvement", 1, false, false, true, false, true},
        {"HYP_CRIT", F::hyp_critical, "hyperbolic critical Hardy with dx improvement", 1, false, true, true, false,
         true},
        {"KO_RELLICH", F::hyp_rellich, "hyperbolic Rellich, p = 2", 2, false, false, false, false, true},
        {"HYP_IMPROVE", F::hyp_rellich, "improved hyperbolic Rellich, two terms", 2, false, false, true, false,
         true},
        {"AQ", F::hyp_rellich, "weighted Hardy with (pi^2 + rho^2) weight", 1, false, false, false, false, true},
        {"HYP_IMPROVE_SAO", F::hyp_rellich, "improved hyperbolic Rellich, one term", 2, false, false, true, false,
         true},
        {"HYP_IMPROVED_R", F::hyp_improved_rellich, "improved hyperbolic Rellich with dx term", 2, false, false,
         true, false, true},
        {"HYP_HIGH_EVEN", F::hyp_even, "improved hyperbolic higher-order Rellich, k = 2l", 2, true, false, true,
         false, true},
        {"HYP_HIGH_ODD", F::hyp_odd, "improved hyperbolic higher-order Rellich, k = 2l+1", 3, true, false, true,
         false, true},
    };
    return reg;
}

const CaseInfo& case_info(const std::string& id) {
    for (const auto& c : case_registry())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown case id '" + id + "'");
}

namespace {

// Pointwise ingredients shared by all integrands of one case.
struct Ops {
    ModelManifold m;
    RadialFunction f;
    int l = 0;
    double p = 2.0;

    double absp(double x) const { return std::pow(std::abs(x), p); }
    double val(double r) const { return f(r); }
    double d1(double r) const { return radial_derivative(f, r); }
    double lap(double r) const { return radial_laplacian(m, f, r); }
    double lap_l(double r) const { return radial_laplacian_power(m, f, l, r); }
    double dlap_l(double r) const { return drho_laplacian_power(m, f, l, r); }
    // rho^e times the measure density rho^{n-1} J
    double dv(double r, double e) const { return std::pow(r, e + m.n - 1) * density(m, r); }
    double J(double r) const { return density(m, r); }
    double D(double r) const { return dd(m.b, r); }
    double pi_w(double r) const { return 1.0 / (kPi2 + m.b * r * r); }
    // dx / dV on the ball model
    double dx(double r) const {
        const double c = std::cosh(0.5 * r);
        return std::pow(0.5 / (c * c), m.n);
    }
};

using Pointwise = std::function<double(const Ops&, double)>;

class Builder {
public:
    Builder(const InequalityCase& c, const RadialFunction& f, bool critical) : c_(c) {
        auto o = std::make_shared<Ops>();
        o->m = ModelManifold{c.params.n, c.params.b};
        o->f = f;
        o->l = c.params.l;
        o->p = c.params.p;
        ops_ = o;
        gamma_ = f.log_growth;
        upper_ = f.support_radius;
        lower_ = f.inner_radius;
        breakpoints_ = f.breakpoints;
        if (critical && upper_ > 1.0)
            throw ContractError("critical cases need f supported in the unit ball; " + f.id + " has support " +
                                format_number(upper_));
    }

    Term plain(std::string name, double coef, Pointwise g) const {
        Term t = base(std::move(name), coef);
        auto o = ops_;
        t.integrand = [o, g](double r) { return g(*o, r); };
        return t;
    }

    // A plain term whose integrand contains |s|^p; sign changes of s become breakpoints,
    // since |s|^p is only C^1 there unless p is an even integer.
    Term kinked(std::string name, double coef, Pointwise s, Pointwise g) const {
        Term t = plain(std::move(name), coef, std::move(g));
        const double p = ops_->p;
        if (p == std::round(p) && std::fmod(p, 2.0) == 0.0) return t;
        const Ops& o = *ops_;
        auto sign = [&](double r) { return s(o, r); };
        const int count = 256;
        const double lo = lower_ > 0.0 ? lower_ : upper_ * 1e-3;
        double r0 = lo, s0 = sign(lo);
        for (int i = 1; i <= count; ++i) {
            const double r1 = lo + (upper_ - lo) * i / count;
            const double s1 = i == count ? 0.0 : sign(r1);
            if (s0 != 0.0 && s1 != 0.0 && (s0 < 0.0) != (s1 < 0.0)) {
                boost::math::tools::eps_tolerance<double> tol(52);
                std::uintmax_t iters = 200;
                const auto [a, b] = boost::math::tools::bisect(sign, r0, r1, tol, iters);
                t.breakpoints.push_back(0.5 * (a + b));
            }
            if (s1 != 0.0) {
                r0 = r1;
                s0 = s1;
            }
        }
        std::sort(t.breakpoints.begin(), t.breakpoints.end());
        return t;
    }

    // Nominal weight rho^{-1} (ln 1/rho)^{-p}; log growth of f moves into the exponent.
    Term crit(std::string name, double coef, Pointwise s) const {
        Term t = base(std::move(name), coef);
        const double p = ops_->p;
        t.critical = true;
        t.q = p * (1.0 - gamma_);
        auto o = ops_;
        const double shift = -p * gamma_;
        if (shift == 0.0) {
            t.integrand = [o, s](double r) { return s(*o, r); };
        } else {
            // f vanishes at rho = 1 where the log factor blows up
            t.integrand = [o, s, shift](double r) {
                const double v = s(*o, r);
                return v == 0.0 ? 0.0 : v * std::pow(-std::log(r), shift);
            };
        }
        return t;
    }

    // int |D f|^p rho^{k p - n} dV for a k-th order operator D.
    Term crit_rhs(std::string name, int k, Pointwise d) const {
        if (gamma_ == 0.0) {
            return kinked(std::move(name), 1.0, d, [d, k](const Ops& o, double r) {
                return o.absp(d(o, r)) * std::pow(r, k * o.p - 1.0) * o.J(r);
            });
        }
        Term t = base(std::move(name), 1.0);
        t.critical = true;
        t.q = ops_->p * (1.0 - gamma_);
        auto o = ops_;
        const double q = t.q;
        t.integrand = [o, d, k, q](double r) {
            return o->absp(d(*o, r) * std::pow(r, k)) * std::pow(-std::log(r), q) * o->J(r);
        };
        return t;
    }

private:
    Term base(std::string name, double coef) const {
        Term t;
        t.name = std::move(name);
        t.coefficient = coef;
        t.lower = lower_;
        t.upper = upper_;
        t.breakpoints = breakpoints_;
        return t;
    }

    InequalityCase c_;
    std::shared_ptr<const Ops> ops_;
    double gamma_ = 0.0;
    double upper_ = 1.0;
    double lower_ = 0.0;
    std::vector<double> breakpoints_;
};

double L(double r) { return -std::log(r); }

double rho_G(const Ops& o, double r) {
    // rho (f' + (n-1) ct_b f), using rho ct_b = 1 + D_b
    return r * o.d1(r) + (o.m.n - 1) * (1.0 + o.D(r)) * o.val(r);
}

}  // namespace

CaseTerms build_case(const InequalityCase& ic, const RadialFunction& f) {
    const CaseInfo& info = case_info(ic.id);
    CaseTerms out;
    out.c = ic;
    CaseParams& c = out.c.params;
    if (!info.uses_l) c.l = 0;
    const BetaRange br = beta_range(info.family, c.n, c.p, c.l);
    if (br.beta_free) c.beta = br.lower;
    const Validity v = validity(info.family, c);
    if (!v) throw ValidityError(ic.id + ": " + v.reason);
    if (f.min_smoothness < info.order + (info.uses_l ? 2 * (c.l - 1) : 0))
        throw ContractError(ic.id + " needs smoothness " + std::to_string(info.order + (info.uses_l ? 2 * (c.l - 1) : 0)) +
                            ", " + f.id + " has " + std::to_string(f.min_smoothness));

    const int n = c.n;
    const double p = c.p, beta = c.beta, b = c.b;
    const int l = c.l;
    const double pp = p / (p - 1.0);
    Builder B(out.c, f, info.critical);
    const std::string& id = ic.id;

    auto F = [](const Ops& o, double r) { return o.absp(o.val(r)); };
    auto D1 = [](const Ops& o, double r) { return o.absp(o.d1(r)); };
    const Pointwise d1 = [](const Ops& o, double r) { return o.d1(r); };
    auto f_side = [&](double e) {
        return B.plain("f_side", 1.0, [F, e](const Ops& o, double r) { return F(o, r) * o.dv(r, e); });
    };
    auto pi_term = [&](std::string name, double coef, double e) {
        return B.plain(std::move(name), coef,
                       [F, e](const Ops& o, double r) { return F(o, r) * o.dv(r, e) * o.pi_w(r); });
    };
    auto dx_term = [&](std::string name, double coef, double e) {
        return B.plain(std::move(name), coef,
                       [F, e](const Ops& o, double r) { return F(o, r) * o.dv(r, e) * o.dx(r); });
    };
    auto crit_f_side = [&] { return B.crit("f_side", 1.0, [F](const Ops& o, double r) { return F(o, r) * o.J(r); }); };
    auto crit_pi_term = [&](double coef) {
        return B.crit("pi_term", coef, [F](const Ops& o, double r) {
            return F(o, r) * o.J(r) * r * r * L(r) * o.pi_w(r);
        });
    };
    auto grad_side = [&](double e) {
        return B.kinked("derivative_side", 1.0, d1, [D1, e](const Ops& o, double r) { return D1(o, r) * o.dv(r, e); });
    };
    auto lap_side = [&] {
        return B.kinked("derivative_side", 1.0, [](const Ops& o, double r) { return o.lap(r); },
                        [beta](const Ops& o, double r) { return o.absp(o.lap(r)) * o.dv(r, -beta); });
    };
    const double c_hyp = info.hyperbolic ? hyperbolic_improvement_constant(n) : 0.0;
    if (info.hyperbolic && (id == "HYP_HARDY" || id == "HYP_CRIT" || id == "HYP_IMPROVED_R" ||
                            id == "HYP_HIGH_EVEN" || id == "HYP_HIGH_ODD"))
        out.notes.push_back("dx improvement uses c = 2^n C(n) = " + format_number(c_hyp));

    if (id == "HARDY_SUB" || id == "HARDY_QUANT_D" || id == "HARDY_QUANT_PI" || id == "HYP_HARDY") {
        const double a = n - p - beta;
        out.constant = hardy_constant(n, p, beta);
        out.lhs.push_back(f_side(-p - beta));
        out.rhs.push_back(grad_side(-beta));
        if (id == "HARDY_SUB") {
            out.remainders.push_back(B.kinked("R_p", p, d1, [a, beta](const Ops& o, double r) {
                return remainder_rp(o.val(r), -(o.p / a) * r * o.d1(r), o.p) * o.dv(r, -o.p - beta);
            }));
            out.remainders.push_back(B.plain("J_term", p / a * (n - 1), [F, beta](const Ops& o, double r) {
                return F(o, r) * o.D(r) * o.dv(r, -o.p - beta);
            }));
        } else if (id == "HARDY_QUANT_D") {
            out.lhs.push_back(B.plain("D_b_term", (n - 1) * p / a, [F, beta](const Ops& o, double r) {
                return F(o, r) * o.D(r) * o.dv(r, -o.p - beta);
            }));
        } else if (id == "HARDY_QUANT_PI") {
            out.lhs.push_back(pi_term("pi_term", 3.0 * b * (n - 1) * p / a, 2.0 - p - beta));
        } else {
            out.lhs.push_back(dx_term("dx_term", 3.0 * c_hyp * (n - 1) * p / a, 2.0 - p - beta));
        }
    } else if (id == "CRIT_HARDY" || id == "CRIT_QUANT_D" || id == "CRIT_QUANT_PI" || id == "CRIT_N" ||
               id == "HYP_CRIT") {
        out.constant = 1.0 / critical_hardy_constant(p);
        out.lhs.push_back(crit_f_side());
        out.rhs.push_back(B.crit_rhs("derivative_side", 1, [](const Ops& o, double r) { return o.d1(r); }));
        if (id == "CRIT_HARDY") {
            out.remainders.push_back(B.crit("R_p", p, [pp](const Ops& o, double r) {
                return remainder_rp(o.val(r), -pp * r * L(r) * o.d1(r), o.p) * o.J(r);
            }));
            out.remainders.push_back(B.crit("J_term", pp * (n - 1), [F](const Ops& o, double r) {
                return F(o, r) * o.D(r) * L(r) * o.J(r);
            }));
        } else if (id == "CRIT_QUANT_D") {
            out.lhs.push_back(B.crit("D_b_term", (n - 1) * pp, [F](const Ops& o, double r) {
                return F(o, r) * o.D(r) * L(r) * o.J(r);
            }));
        } else if (id == "CRIT_QUANT_PI") {
            out.lhs.push_back(crit_pi_term(3.0 * b * (n - 1) * pp));
        } else if (id == "HYP_CRIT") {
            out.lhs.push_back(B.crit("dx_term", 3.0 * c_hyp * (n - 1) * pp, [F](const Ops& o, double r) {
                return F(o, r) * o.J(r) * r * r * L(r) * o.dx(r);
            }));
        }
    } else if (id == "ONETWO" || id == "ONETWO_QUANT") {
        const double a2 = n * (p - 1.0) + beta;
        out.constant = onetwo_constant(n, p, beta);
        out.lhs.push_back(f_side(-p - beta));
        out.rhs.push_back(B.kinked("derivative_side", 1.0, rho_G, [beta](const Ops& o, double r) {
            return o.absp(rho_G(o, r)) * o.dv(r, -o.p - beta);
        }));
        if (id == "ONETWO") {
            out.remainders.push_back(B.kinked("R_p", p, rho_G, [a2, beta](const Ops& o, double r) {
                return remainder_rp(o.val(r), (o.p / a2) * rho_G(o, r), o.p) * o.dv(r, -o.p - beta);
            }));
            out.remainders.push_back(B.plain("J_term", p * (p - 1.0) / a2 * (n - 1), [F, beta](const Ops& o, double r) {
                return F(o, r) * o.D(r) * o.dv(r, -o.p - beta);
            }));
        } else {
            out.lhs.push_back(pi_term("pi_term", 3.0 * b * (n - 1) * (p - 1.0) * p / a2, 2.0 - p - beta));
        }
    } else if (id == "RELLICH_12" || id == "RELLICH_12_QUANT") {
        const double a2 = n * (p - 1.0) + beta;
        out.constant = onetwo_constant(n, p, beta);
        out.lhs.push_back(B.kinked("f_side", 1.0, d1, [D1, p, beta](const Ops& o, double r) {
            return D1(o, r) * o.dv(r, -p - beta);
        }));
        out.rhs.push_back(lap_side());
        if (id == "RELLICH_12_QUANT")
            out.lhs.push_back(B.kinked("pi_term", 3.0 * b * (n - 1) * (p - 1.0) * p / a2, d1,
                                      [D1, p, beta](const Ops& o, double r) {
                                          return D1(o, r) * o.dv(r, 2.0 - p - beta) * o.pi_w(r);
                                      }));
    } else if (id == "RELLICH_2" || id == "RELLICH_2_QUANT") {
        const double K = rellich2_constant(n, p, beta);
        const double a2 = n * (p - 1.0) + beta;
        out.constant = 1.0 / K;
        out.lhs.push_back(f_side(-2.0 * p - beta));
        out.rhs.push_back(lap_side());
        if (id == "RELLICH_2_QUANT") {
            const double c1 = 3.0 * b * (n - 1) * (p - 1.0) * std::pow(a2 / p, p - 1.0);
            const double c2 = 3.0 * b * (n - 1) * std::pow((n - 2.0 * p - beta) / p, p - 1.0) * std::pow(a2 / p, p);
            out.lhs.push_back(B.kinked("pi_term_grad", c1 / K, d1, [D1, p, beta](const Ops& o, double r) {
                return D1(o, r) * o.dv(r, 2.0 - p - beta) * o.pi_w(r);
            }));
            out.lhs.push_back(pi_term("pi_term", c2 / K, 2.0 - 2.0 * p - beta));
        }
    } else if (id == "KO_RELLICH" || id == "HYP_IMPROVE" || id == "HYP_IMPROVE_SAO" || id == "HYP_IMPROVED_R") {
        const double K = (n + beta) * (n + beta) * (n - 4.0 - beta) * (n - 4.0 - beta) / 16.0;
        out.constant = 1.0 / K;
        out.lhs.push_back(f_side(-4.0 - beta));
        out.rhs.push_back(lap_side());
        if (id == "HYP_IMPROVE") {
            out.lhs.push_back(B.kinked("pi_term_grad", 3.0 * (n - 1) * (n + beta) / 2.0 / K, d1,
                                      [D1, beta](const Ops& o, double r) {
                                          return D1(o, r) * o.dv(r, -beta) * o.pi_w(r);
                                      }));
            out.lhs.push_back(pi_term("pi_term", 3.0 * (n - 1) * (n - 4.0 - beta) * (n + beta) * (n + beta) / 8.0 / K,
                                      -2.0 - beta));
        } else if (id == "HYP_IMPROVE_SAO") {
            out.lhs.push_back(pi_term("pi_term", 3.0 * (n - 1) * (n - 2) * (n + beta) * (n - 4.0 - beta) / 4.0 / K,
                                      -2.0 - beta));
        } else if (id == "HYP_IMPROVED_R") {
            out.lhs.push_back(dx_term(
                "dx_term", 3.0 * c_hyp * (n - 1) * (n - 2) * (n + beta) * (n - 4.0 - beta) / 4.0 / K, -2.0 - beta));
        }
    } else if (id == "AQ") {
        out.constant = 4.0 / ((n - beta - 4.0) * (n - beta - 4.0));
        out.lhs.push_back(pi_term("f_side", 1.0, -2.0 - beta));
        out.rhs.push_back(B.kinked("derivative_side", 1.0, d1, [D1, beta](const Ops& o, double r) {
            return D1(o, r) * o.dv(r, -beta) * o.pi_w(r);
        }));
    } else if (id == "CRIT_RELLICH_2" || id == "CRIT_RELLICH_2_QUANT") {
        out.constant = critical_rellich2_constant(n, p);
        out.lhs.push_back(crit_f_side());
        out.rhs.push_back(B.crit_rhs("derivative_side", 2, [](const Ops& o, double r) { return o.lap(r); }));
        if (id == "CRIT_RELLICH_2_QUANT") {
            const double K = 1.0 / out.constant;
            const double c1 = 3.0 * b * (n - 1) * (p - 1.0) * std::pow(n - 2.0, p - 1.0);
            out.lhs.push_back(B.kinked("pi_term_grad", c1 / K, d1, [D1, p, n](const Ops& o, double r) {
                return D1(o, r) * o.dv(r, p + 2.0 - n) * o.pi_w(r);
            }));
            out.lhs.push_back(crit_pi_term(3.0 * b * (n - 1) * pp));
        }
    } else if (id == "RELLICH_EVEN" || id == "RELLICH_EVEN_QUANT" || id == "HYP_HIGH_EVEN") {
        out.constant = c_even(n, l, beta, p);
        out.lhs.push_back(f_side(-2.0 * l * p - beta));
        out.rhs.push_back(B.kinked("derivative_side", 1.0, [](const Ops& o, double r) { return o.lap_l(r); },
                                  [beta](const Ops& o, double r) {
            return o.absp(o.lap_l(r)) * o.dv(r, -beta);
        }));
        if (id == "RELLICH_EVEN_QUANT")
            out.lhs.push_back(
                pi_term("pi_term", 3.0 * b * (n - 1) * p / (n - 2.0 * l * p - beta), 2.0 - 2.0 * l * p - beta));
        else if (id == "HYP_HIGH_EVEN")
            out.lhs.push_back(dx_term("dx_term", 6.0 * c_hyp * (n - 1) / (n - 4.0 * l - beta), 2.0 - 4.0 * l - beta));
    } else if (id == "RELLICH_ODD" || id == "RELLICH_ODD_QUANT" || id == "HYP_HIGH_ODD") {
        const double k = 2.0 * l + 1.0;
        out.constant = c_odd(n, l, beta, p);
        out.lhs.push_back(f_side(-k * p - beta));
        out.rhs.push_back(B.kinked("derivative_side", 1.0, [](const Ops& o, double r) { return o.dlap_l(r); },
                                  [beta](const Ops& o, double r) {
            return o.absp(o.dlap_l(r)) * o.dv(r, -beta);
        }));
        if (id == "RELLICH_ODD_QUANT")
            out.lhs.push_back(pi_term("pi_term", 3.0 * b * (n - 1) * p / (n - k * p - beta), 2.0 - k * p - beta));
        else if (id == "HYP_HIGH_ODD")
            out.lhs.push_back(dx_term("dx_term", 6.0 * c_hyp * (n - 1) / (n - 2.0 * k - beta), -4.0 * l - beta));
    } else if (id == "CRIT_EVEN" || id == "CRIT_EVEN_QUANT" || id == "CRIT_ODD" || id == "CRIT_ODD_QUANT") {
        const bool even = id.rfind("CRIT_EVEN", 0) == 0;
        out.constant = even ? critical_even_constant(n, l, p) : critical_odd_constant(n, l, p);
        out.lhs.push_back(crit_f_side());
        if (even)
            out.rhs.push_back(B.crit_rhs("derivative_side", 2 * l, [](const Ops& o, double r) { return o.lap_l(r); }));
        else
            out.rhs.push_back(
                B.crit_rhs("derivative_side", 2 * l + 1, [](const Ops& o, double r) { return o.dlap_l(r); }));
        if (info.quantitative) out.lhs.push_back(crit_pi_term(3.0 * b * (n - 1) * pp));
    } else {
        throw std::invalid_argument("no term builder for case '" + id + "'");
    }
    return out;
}

QuadratureResult integrate_term(const Term& t, const QuadratureOptions& opts) {
    if (!(t.upper > t.lower)) return {};
    if (t.critical) return integrate_weighted(t.integrand, SingularWeight::critical_log(t.q), t.upper, opts);
    return integrate_radial(t.integrand, t.lower, t.upper, t.breakpoints, opts);
}

double oracle_term(const Term& t) {
    if (!(t.upper > t.lower)) return 0.0;
    double sum = 0.0;
    if (t.critical) {
        const double split = std::min(t.upper, 0.5);
        auto g = [&](double v) {
            const double r = std::max(critical_rho(v, t.q), 1e-300);
            return t.integrand(r);
        };
        sum += oracle_integrate(g, 0.0, critical_v(split, t.q));
        if (t.upper > split) {
            const SingularWeight w = SingularWeight::critical_log(t.q);
            // Graded nodes round onto rho = 1, where the weight is infinite and f vanishes.
            sum += oracle_integrate(
                [&](double r) {
                    const double g = t.integrand(r);
                    return g == 0.0 ? 0.0 : g * w(r);
                },
                split, t.upper);
        }
        return sum;
    }
    std::vector<double> pts{t.lower};
    for (double x : t.breakpoints)
        if (x > t.lower && x < t.upper) pts.push_back(x);
    pts.push_back(t.upper);
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i]) sum += oracle_integrate(t.integrand, pts[i], pts[i + 1]);
    return sum;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::pass:
            return "pass";
        case Status::fail:
            return "fail";
        case Status::numerical_failure:
            return "numerical-failure";
        case Status::skipped:
            return "skipped";
    }
    return "unknown";
}

double VerificationReport::scale() const { return std::max(std::abs(lhs), std::abs(constant * rhs)); }

namespace {

struct Evaluated {
    double value = 0.0;
    double error = 0.0;
    bool ok = true;
    std::string message;
};

Evaluated evaluate_term(const Term& t, const QuadratureOptions& opts) {
    try {
        const QuadratureResult r = integrate_term(t, opts);
        return {r.value, r.error_estimate, true, {}};
    } catch (const NonConvergence& e) {
        return {e.best().value, e.best().error_estimate, false, t.name + ": " + e.what()};
    }
}

}  // namespace

VerificationReport evaluate_case(const InequalityCase& c, const RadialFunction& f, const QuadratureOptions& opts) {
    return evaluate_terms(build_case(c, f), f.id, opts);
}

VerificationReport evaluate_terms(const CaseTerms& terms, const std::string& corpus_id, const QuadratureOptions& opts) {
    const CaseInfo& info = case_info(terms.c.id);
    VerificationReport r;
    r.c = terms.c;
    r.corpus_id = corpus_id;
    r.constant = terms.constant;
    double budget_err = 0.0, budget_mag = 0.0;
    std::string failures;
    auto run = [&](const Term& t, double extra) {
        const Evaluated e = evaluate_term(t, opts);
        if (!e.ok) failures += (failures.empty() ? "" : "; ") + e.message;
        const double cv = t.coefficient * e.value;
        budget_err += std::abs(t.coefficient * extra) * e.error;
        budget_mag += std::abs(cv * extra);
        return std::pair<double, double>{cv, std::abs(t.coefficient) * e.error};
    };
    for (size_t i = 0; i < terms.lhs.size(); ++i) {
        const auto [v, e] = run(terms.lhs[i], 1.0);
        r.lhs += v;
        if (i == 0)
            r.base_lhs = v;
        else
            r.remainder_terms.push_back({terms.lhs[i].name, v, e});
    }
    r.improvement = r.lhs - r.base_lhs;
    for (const Term& t : terms.rhs) r.rhs += run(t, terms.constant).first;
    double rem = 0.0;
    for (const Term& t : terms.remainders) {
        const auto [v, e] = run(t, 1.0);
        rem += v;
        r.remainder_terms.push_back({t.name, v, e});
    }
    r.slack = r.constant * r.rhs - r.lhs;
    r.quad_error_budget = budget_err + 64.0 * DBL_EPSILON * budget_mag;
    if (info.identity) r.residual = r.lhs - r.constant * r.rhs + rem;
    const double tol = 10.0 * r.quad_error_budget;
    if (!failures.empty()) {
        r.status = Status::numerical_failure;
        r.notes = failures;
    } else if (r.slack < -tol || (r.residual && std::abs(*r.residual) > tol)) {
        r.status = Status::fail;
    } else {
        r.status = Status::pass;
    }
    for (const auto& n : terms.notes) r.notes += (r.notes.empty() ? "" : "; ") + n;
    return r;
}

VerificationReport evaluate_case(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                                 const QuadratureOptions& opts) {
    check_manifold(m);
    InequalityCase cc = c;
    cc.params.n = m.n;
    cc.params.b = m.b;
    return evaluate_case(cc, f, opts);
}

VerificationReport quantitative_case(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                                     const QuadratureOptions& opts) {
    if (!case_info(c.id).quantitative) throw std::invalid_argument(c.id + " is not a quantitative case");
    return evaluate_case(c, m, f, opts);
}

double identity_residual(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                         const QuadratureOptions& opts) {
    if (!case_info(c.id).identity) throw std::invalid_argument(c.id + " has no identity");
    const VerificationReport r = evaluate_case(c, m, f, opts);
    if (r.status == Status::numerical_failure) throw NonConvergence(r.notes, QuadratureResult{*r.residual, INFINITY, 0, false});
    return *r.residual;
}

double hyperbolic_weight_constant(int n) {
    if (n < 2) throw DomainError("hyperbolic_weight_constant needs n >= 2");
    auto log_ratio = [n](double rho) {
        const double x = 0.5 * rho;
        const double log_cosh = x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
        return 2.0 * n * log_cosh - std::log(kPi2 + rho * rho);
    };
    // The ratio tends to 1/pi^2 as rho -> 0; look for anything lower on a log grid.
    double best = -std::log(kPi2);
    double best_rho = 0.0;
    constexpr int kGrid = 2000;
    for (int i = 0; i <= kGrid; ++i) {
        const double rho = std::pow(10.0, -8.0 + 10.0 * i / kGrid);
        const double v = log_ratio(rho);
        if (v < best) {
            best = v;
            best_rho = rho;
        }
    }
    if (best_rho > 0.0) {
        const auto [x, v] =
            boost::math::tools::brent_find_minima(log_ratio, best_rho / 1.01, best_rho * 1.01, 52);
        if (v < best) best = v;
        (void)x;
    }
    return std::exp(best);
}

double hyperbolic_improvement_constant(int n) { return std::ldexp(hyperbolic_weight_constant(n), n); }

SweepResult sharpness_sweep(ExtremizerKind kind, const CaseParams& params, const std::vector<double>& scales,
                            const QuadratureOptions& opts) {
    for (size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1])) throw DomainError("sweep scales must be decreasing");
    std::string id;
    switch (kind) {
        case ExtremizerKind::hardy:
            id = "HARDY_SUB";
            break;
        case ExtremizerKind::critical:
            id = "CRIT_HARDY";
            break;
        case ExtremizerKind::onetwo:
            id = "ONETWO";
            break;
        case ExtremizerKind::rellich2:
            id = "RELLICH_2";
            break;
    }
    SweepResult out;
    out.kind = kind;
    out.params = params;
    for (double s : scales) {
        const RadialFunction f = extremizer(kind, params, s);
        const CaseTerms t = build_case({id, params}, f);
        out.params = t.c.params;
        out.limit = 1.0 / t.constant;
        const QuadratureResult a = integrate_term(t.lhs[0], opts);
        const QuadratureResult d = integrate_term(t.rhs[0], opts);
        SweepRow row;
        row.scale = s;
        row.f_side = a.value;
        row.derivative_side = d.value;
        row.quotient = d.value / a.value;
        row.gap = row.quotient - out.limit;
        row.error = std::abs(row.quotient) * (a.error_estimate / std::abs(a.value) + d.error_estimate / std::abs(d.value)) +
                    4.0 * DBL_EPSILON * std::abs(row.quotient);
        out.rows.push_back(row);
    }
    for (size_t i = 0; i < out.rows.size(); ++i) {
        if (!(out.rows[i].gap > 0.0)) out.gaps_positive = false;
        if (i > 0 && !(out.rows[i].gap < out.rows[i - 1].gap + 2.0 * (out.rows[i].error + out.rows[i - 1].error)))
            out.gaps_decreasing = false;
    }
    return out;
}

}  // namespace hardylab
