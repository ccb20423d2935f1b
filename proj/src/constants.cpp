#include "hardylab/constants.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/factorials.hpp>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

const std::map<std::string, Family>& family_table() {
    static const std::map<std::string, Family> table = {
        {"hardy", Family::hardy},
        {"critical_hardy", Family::critical_hardy},
        {"critical_n", Family::critical_n},
        {"onetwo", Family::onetwo},
        {"rellich12", Family::onetwo},
        {"rellich2", Family::rellich2},
        {"critical_rellich2", Family::critical_rellich2},
        {"rellich_even", Family::rellich_even},
        {"c_even", Family::rellich_even},
        {"rellich_odd", Family::rellich_odd},
        {"c_odd", Family::rellich_odd},
        {"critical_even", Family::critical_even},
        {"critical_odd", Family::critical_odd},
        {"hyp_hardy", Family::hyp_hardy},
        {"hyp_critical", Family::hyp_critical},
        {"hyp_rellich", Family::hyp_rellich},
        {"hyp_improved_rellich", Family::hyp_improved_rellich},
        {"hyp_even", Family::hyp_even},
        {"hyp_odd", Family::hyp_odd},
        {"mow", Family::mow},
        {"MOW", Family::mow},
        {"HARDY_SUB", Family::hardy},
        {"HARDY_QUANT_D", Family::hardy},
        {"HARDY_QUANT_PI", Family::hardy},
        {"CRIT_HARDY", Family::critical_hardy},
        {"CRIT_QUANT_D", Family::critical_hardy},
        {"CRIT_QUANT_PI", Family::critical_hardy},
        {"CRIT_N", Family::critical_n},
        {"ONETWO", Family::onetwo},
        {"ONETWO_QUANT", Family::onetwo},
        {"RELLICH_12", Family::onetwo},
        {"RELLICH_12_QUANT", Family::onetwo},
        {"RELLICH_2", Family::rellich2},
        {"RELLICH_2_QUANT", Family::rellich2},
        {"CRIT_RELLICH_2", Family::critical_rellich2},
        {"CRIT_RELLICH_2_QUANT", Family::critical_rellich2},
        {"RELLICH_EVEN", Family::rellich_even},
        {"RELLICH_EVEN_QUANT", Family::rellich_even},
        {"RELLICH_ODD", Family::rellich_odd},
        {"RELLICH_ODD_QUANT", Family::rellich_odd},
        {"CRIT_EVEN", Family::critical_even},
        {"CRIT_EVEN_QUANT", Family::critical_even},
        {"CRIT_ODD", Family::critical_odd},
        {"CRIT_ODD_QUANT", Family::critical_odd},
        {"HYP_HARDY", Family::hyp_hardy},
        {"HYP_CRIT", Family::hyp_critical},
        {"KO_RELLICH", Family::hyp_rellich},
        {"HYP_IMPROVE", Family::hyp_rellich},
        {"AQ", Family::hyp_rellich},
        {"HYP_IMPROVE_SAO", Family::hyp_rellich},
        {"HYP_IMPROVED_R", Family::hyp_improved_rellich},
        {"HYP_HIGH_EVEN", Family::hyp_even},
        {"HYP_HIGH_ODD", Family::hyp_odd},
    };
    return table;
}

Validity common(const CaseParams& c) {
    if (c.n < 2) return Validity::fail("n >= 2 required");
    if (!std::isfinite(c.p) || !std::isfinite(c.beta)) return Validity::fail("p and beta must be finite");
    if (!(c.b >= 0.0) || !std::isfinite(c.b)) return Validity::fail("b >= 0 required");
    return Validity::pass();
}

Validity p_above_one(const CaseParams& c) {
    if (!(c.p > 1.0)) return Validity::fail("p > 1 required");
    return Validity::pass();
}

Validity p_below(const CaseParams& c, double k, const char* text) {
    if (!(c.p < c.n / k)) return Validity::fail(std::string(text) + " violated");
    return Validity::pass();
}

Validity hyperbolic(const CaseParams& c, bool p_two) {
    if (c.b != 1.0) return Validity::fail("b = 1 required (hyperbolic space)");
    if (p_two && c.p != 2.0) return Validity::fail("p = 2 required");
    return Validity::pass();
}

Validity check_range(const BetaRange& r, double beta) {
    if (!(beta > r.lower))
        return Validity::fail("beta > " + r.lower_source + " violated");
    if (r.upper_inclusive ? !(beta <= r.upper) : !(beta < r.upper))
        return Validity::fail("beta " + std::string(r.upper_inclusive ? "<=" : "<") + " " + r.upper_source +
                              " violated");
    return Validity::pass();
}

#define HL_TRY(expr)              \
    do {                          \
        Validity v_ = (expr);     \
        if (!v_) return v_;       \
    } while (0)

double checked_pow(double base, double p) {
    if (!(base > 0.0)) throw ValidityError("constant factor is not positive (boundary case)");
    return std::pow(base, p);
}

void require(Family f, const CaseParams& c) {
    const Validity v = validity(f, c);
    if (!v) throw ValidityError(family_name(f) + ": " + v.reason);
}

}  // namespace

Family family_of(const std::string& case_id) {
    const auto& t = family_table();
    auto it = t.find(case_id);
    if (it == t.end()) throw std::invalid_argument("unknown case id '" + case_id + "'");
    return it->second;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::hardy: return "hardy";
        case Family::critical_hardy: return "critical_hardy";
        case Family::critical_n: return "critical_n";
        case Family::onetwo: return "onetwo";
        case Family::rellich2: return "rellich2";
        case Family::critical_rellich2: return "critical_rellich2";
        case Family::rellich_even: return "rellich_even";
        case Family::rellich_odd: return "rellich_odd";
        case Family::critical_even: return "critical_even";
        case Family::critical_odd: return "critical_odd";
        case Family::hyp_hardy: return "hyp_hardy";
        case Family::hyp_critical: return "hyp_critical";
        case Family::hyp_rellich: return "hyp_rellich";
        case Family::hyp_improved_rellich: return "hyp_improved_rellich";
        case Family::hyp_even: return "hyp_even";
        case Family::hyp_odd: return "hyp_odd";
        case Family::mow: return "mow";
    }
    return "unknown";
}

BetaRange beta_range(Family f, int n, double p, int l) {
    const double inf = std::numeric_limits<double>::infinity();
    switch (f) {
        case Family::hardy:
        case Family::hyp_hardy:
            return {-inf, n - p, false, "-inf", "n-p"};
        case Family::onetwo:
            return {-n * (p - 1), n - p, false, "-n(p-1)", "n-p"};
        case Family::rellich2:
            return {-n * (p - 1), n - 2 * p, false, "-n(p-1)", "n-2p"};
        case Family::rellich_even:
            return {-n * (p - 1), n - 2 * l * p, false, "-n(p-1)", "n-2lp"};
        case Family::rellich_odd: {
            // Two printed lower bounds; the tighter one is enforced.
            const double iterated = n - (n + 1) * p;
            const double stated = -n * p;
            if (iterated >= stated)
                return {iterated, n - (2 * l + 1) * p, false, "n-(n+1)p (iterated bound)", "n-(2l+1)p"};
            return {stated, n - (2 * l + 1) * p, false, "n-n(p+1) (stated bound)", "n-(2l+1)p"};
        }
        case Family::hyp_rellich:
        case Family::hyp_improved_rellich:
            return {-2.0, n - 4.0, false, "-2", "n-4"};
        case Family::hyp_even:
            return {-2.0, n - 4.0 * l, false, "-2", "n-4l"};
        case Family::hyp_odd:
            return {-2.0, n - 2.0 * (2 * l + 1), false, "-2", "n-2(2l+1)"};
        case Family::mow:
            return {-2.0, n - 4.0, true, "-2", "n-4"};
        case Family::critical_hardy:
        case Family::critical_n:
        case Family::hyp_critical:
            return {n - p, n - p, false, "n-p", "n-p", true};
        case Family::critical_rellich2:
            return {n - 2 * p, n - 2 * p, false, "n-2p", "n-2p", true};
        case Family::critical_even:
            return {n - 2 * l * p, n - 2 * l * p, false, "n-2lp", "n-2lp", true};
        case Family::critical_odd:
            return {n - (2 * l + 1) * p, n - (2 * l + 1) * p, false, "n-(2l+1)p", "n-(2l+1)p", true};
    }
    return {-inf, inf, false, "-inf", "inf"};
}

Validity validity(Family f, const CaseParams& c) {
    HL_TRY(common(c));
    const int n = c.n;
    const int l = c.l;
    switch (f) {
        case Family::hardy:
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 1.0, "p < n"));
            break;
        case Family::critical_hardy:
            HL_TRY(p_above_one(c));
            return Validity::pass();
        case Family::critical_n:
            HL_TRY(p_above_one(c));
            if (c.p != n) return Validity::fail("p = n required");
            return Validity::pass();
        case Family::onetwo:
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 1.0, "p < n"));
            break;
        case Family::rellich2:
            if (n < 3) return Validity::fail("n >= 3 required");
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 2.0, "p < n/2"));
            break;
        case Family::critical_rellich2:
            if (n < 3) return Validity::fail("n >= 3 required");
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 1.0, "p < n"));
            return Validity::pass();
        case Family::rellich_even:
            if (n < 3) return Validity::fail("n >= 3 required");
            if (l < 1) return Validity::fail("l >= 1 required");
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 2.0 * l, "p < n/(2l)"));
            break;
        case Family::rellich_odd: {
            if (n < 3) return Validity::fail("n >= 3 required");
            if (l < 1) return Validity::fail("l >= 1 required");
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 2.0 * l + 1, "p < n/(2l+1)"));
            // Report the stated bound first when it is the one that fails.
            if (!(c.beta > -n * c.p)) return Validity::fail("beta > n-n(p+1) violated (stated bound)");
            break;
        }
        case Family::critical_even:
        case Family::critical_odd: {
            if (n < 3) return Validity::fail("n >= 3 required");
            if (l < 1) return Validity::fail("l >= 1 required");
            HL_TRY(p_above_one(c));
            const double k = f == Family::critical_even ? 2.0 * l : 2.0 * l + 1;
            HL_TRY(p_below(c, k, f == Family::critical_even ? "p < n/(2l)" : "p < n/(2l+1)"));
            if (!(n - 2 * (l - 1) - 2 > 0)) return Validity::fail("n-2i-2 > 0 for i < l required");
            return Validity::pass();
        }
        case Family::hyp_hardy:
            HL_TRY(hyperbolic(c, false));
            HL_TRY(p_above_one(c));
            HL_TRY(p_below(c, 1.0, "p < n"));
            break;
        case Family::hyp_critical:
            HL_TRY(hyperbolic(c, false));
            HL_TRY(p_above_one(c));
            return Validity::pass();
        case Family::hyp_rellich:
            if (n < 3) return Validity::fail("n >= 3 required");
            HL_TRY(hyperbolic(c, true));
            break;
        case Family::hyp_improved_rellich:
            if (n < 4) return Validity::fail("n >= 4 required");
            HL_TRY(hyperbolic(c, true));
            break;
        case Family::hyp_even:
        case Family::hyp_odd: {
            if (n < 3) return Validity::fail("n >= 3 required");
            if (l < 1) return Validity::fail("l >= 1 required");
            HL_TRY(hyperbolic(c, true));
            const int k = f == Family::hyp_even ? 2 * l : 2 * l + 1;
            if (!(2 * k < n)) return Validity::fail("order k < n/2 required");
            HL_TRY(check_range(beta_range(f, n, c.p, l), c.beta));
            CaseParams base = c;
            return validity(f == Family::hyp_even ? Family::rellich_even : Family::rellich_odd, base);
        }
        case Family::mow:
            if (n < 3) return Validity::fail("n >= 3 required");
            break;
    }
    return check_range(beta_range(f, n, c.p, l), c.beta);
}

Validity validity(const std::string& case_id, const CaseParams& c) { return validity(family_of(case_id), c); }

double hardy_constant(int n, double p, double beta) {
    require(Family::hardy, {n, p, beta, 0.0, 0});
    return std::pow(p / (n - p - beta), p);
}

double critical_hardy_constant(double p) {
    if (!(p > 1.0)) throw ValidityError("critical_hardy: p > 1 required");
    return std::pow((p - 1.0) / p, p);
}

double onetwo_constant(int n, double p, double beta) {
    require(Family::onetwo, {n, p, beta, 0.0, 0});
    return std::pow(p / (n * (p - 1.0) + beta), p);
}

double rellich2_constant(int n, double p, double beta) {
    require(Family::rellich2, {n, p, beta, 0.0, 0});
    return std::pow((n * (p - 1.0) + beta) * (n - 2.0 * p - beta) / (p * p), p);
}

double c_even(int n, int l, double beta, double p) {
    require(Family::rellich_even, {n, p, beta, 0.0, l});
    if (l >= 3) {
        double s = 0.0;
        for (int i = 0; i < l; ++i) {
            const double a = n - 2.0 * p - beta - 2.0 * i * p;
            const double c = n * (p - 1.0) + beta + 2.0 * i * p;
            if (!(a > 0.0) || !(c > 0.0)) throw ValidityError("c_even: vanishing factor (boundary case)");
            s += 2.0 * std::log(p) - std::log(a) - std::log(c);
        }
        return std::exp(p * s);
    }
    double prod = 1.0;
    for (int i = 0; i < l; ++i)
        prod *= p * p / ((n - 2.0 * p - beta - 2.0 * i * p) * (n * (p - 1.0) + beta + 2.0 * i * p));
    return checked_pow(prod, p);
}

double c_odd(int n, int l, double beta, double p) {
    require(Family::rellich_odd, {n, p, beta, 0.0, l});
    return checked_pow(p / (n - p - beta), p) * c_even(n, l, p + beta, p);
}

double critical_rellich2_constant(int n, double p) {
    require(Family::critical_rellich2, {n, p, 0.0, 0.0, 0});
    return std::pow(p / ((p - 1.0) * (n - 2.0)), p);
}

namespace {

// Only the formula's own requirements; the p < n/k range belongs to the inequality.
void require_critical_higher(const char* name, int n, int l, double p) {
    const std::string who(name);
    if (n < 3) throw ValidityError(who + ": n >= 3 required");
    if (l < 1) throw ValidityError(who + ": l >= 1 required");
    if (!(p > 1.0)) throw ValidityError(who + ": p > 1 required");
    if (!(n - 2 * (l - 1) - 2 > 0)) throw ValidityError(who + ": n-2i-2 > 0 for i < l required");
}

double critical_higher(int n, int l, double p, double lead) {
    const double pp = p / (p - 1.0);
    if (l >= 3) {
        double s = std::log(pp) + std::log(lead);
        for (int i = 0; i < l; ++i) s -= std::log(n - 2.0 * i - 2.0);
        return std::exp(p * s);
    }
    double prod = pp * lead;
    for (int i = 0; i < l; ++i) prod /= n - 2.0 * i - 2.0;
    return checked_pow(prod, p);
}

}  // namespace

double critical_even_constant(int n, int l, double p) {
    require_critical_higher("critical_even", n, l, p);
    return critical_higher(n, l, p, std::ldexp(1.0, 1 - l) / boost::math::factorial<double>(l - 1));
}

double critical_odd_constant(int n, int l, double p) {
    require_critical_higher("critical_odd", n, l, p);
    return critical_higher(n, l, p, 1.0 / (std::ldexp(1.0, l) * boost::math::factorial<double>(l)));
}

}  // namespace hardylab
