// One PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/constants.hpp"
#include "hardylab/corpus.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/functionals.hpp"
#include "hardylab/geometry.hpp"
#include "hardylab/harmonics.hpp"
#include "hardylab/quadrature.hpp"

using namespace hardylab;

namespace {

// Pinned tolerances.
constexpr double kIdentityRel = 1e-8;
constexpr double kSlackRel = 1e-9;
constexpr double kCriticalWindow = 0.05;
constexpr double kClosedFormValue = 1e-11;
constexpr double kClosedFormSlack = 1e-10;
constexpr double kReciprocity = 1e-14;
constexpr double kIteration = 1e-14;
constexpr double kCriticalEven = 1e-15;
constexpr double kModeFloor = -1e-9;
constexpr double kRadialSlack = 1e-9;
constexpr double kOracleRel = 1e-9;
constexpr double kOracleAbs = 1e-14;
constexpr double kCriticalLog = 1e-11;
constexpr double kRuntimeSeconds = 60.0;

const std::vector<int> kN{3, 4, 5, 8};
const std::vector<double> kP{1.5, 2.0, 3.0};
const std::vector<double> kB{0.0, 1.0};
const std::vector<int> kL{1, 2};

std::vector<double> betas(int n, double p) { return {-1.0, 0.0, 1.0, (n - p) / 2.0}; }

std::vector<RadialFunction> corpus() {
    return {polynomial_bump(1.0, 4), polynomial_bump(1.0, 6), smooth_cutoff(0.3, 0.9)};
}

struct Tally {
    bool ok = true;
    long checked = 0;
    long skipped = 0;
    double worst = 0.0;  // largest violation ratio seen (<= 1 passes)
    std::string first_failure;

    void fail(const std::string& what) {
        if (ok) first_failure = what;
        ok = false;
    }
    void ratio(double r) { worst = std::max(worst, r); }
};

void report(int id, const std::string& title, const Tally& t, const std::string& detail) {
    std::printf("criterion %d: %s  %s (%s)\n", id, t.ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    if (!t.ok) std::printf("  first failure: %s\n", t.first_failure.c_str());
}

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string cell_name(const std::string& id, const CaseParams& c, const std::string& corpus_id) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s n=%d p=%g beta=%g b=%g l=%d %s", id.c_str(), c.n, c.p, c.beta, c.b, c.l,
                  corpus_id.c_str());
    return buf;
}

// Every term integrated in criteria 1-4 goes through here.
struct OracleLog {
    Tally t;
    void check(const CaseTerms& terms, const std::string& where, const QuadratureOptions& opts) {
        for (const auto* side : {&terms.lhs, &terms.rhs, &terms.remainders})
            for (const Term& term : *side) {
                const double q = integrate_term(term, opts).value;
                const double o = oracle_term(term);
                const double tol = kOracleRel * std::max(std::abs(o), std::abs(q)) + kOracleAbs;
                ++t.checked;
                t.ratio(std::abs(q - o) / tol);
                if (!(std::abs(q - o) <= tol))
                    t.fail(where + " term " + term.name + ": quad " + fmt("%.17g", q) + " oracle " + fmt("%.17g", o));
            }
    }
};

std::optional<CaseTerms> try_build(const InequalityCase& c, const RadialFunction& f) {
    try {
        return build_case(c, f);
    } catch (const ValidityError&) {
    } catch (const ContractError&) {
    }
    return std::nullopt;
}

// criterion 1
Tally identity_suite(OracleLog& oracle) {
    Tally t;
    const auto fs = corpus();
    for (const char* id : {"HARDY_SUB", "CRIT_HARDY", "ONETWO"})
        for (int n : kN)
            for (double p : kP)
                for (double beta : betas(n, p))
                    for (double b : kB)
                        for (const RadialFunction& f : fs) {
                            const InequalityCase c{id, {n, p, beta, b, 0}};
                            const auto terms = try_build(c, f);
                            if (!terms) {
                                ++t.skipped;
                                continue;
                            }
                            const std::string where = cell_name(id, c.params, f.id);
                            const VerificationReport r = evaluate_terms(*terms, f.id);
                            oracle.check(*terms, where, {});
                            ++t.checked;
                            if (r.status == Status::numerical_failure || !r.residual) {
                                t.fail(where + ": " + status_name(r.status) + " " + r.notes);
                                continue;
                            }
                            const double tol = kIdentityRel * r.scale();
                            t.ratio(std::abs(*r.residual) / tol);
                            if (!(std::abs(*r.residual) <= tol))
                                t.fail(where + ": residual " + fmt("%.3g", *r.residual));
                        }
    return t;
}

// criterion 2
Tally inequality_suite(OracleLog& oracle, long& quantitative_checked) {
    Tally t;
    const auto fs = corpus();
    for (const CaseInfo& info : case_registry())
        for (int n : kN)
            for (double p : kP)
                for (double beta : betas(n, p))
                    for (double b : kB)
                        for (int l : kL) {
                            if (!info.uses_l && l != kL.front()) continue;
                            for (const RadialFunction& f : fs) {
                                const InequalityCase c{info.id, {n, p, beta, b, info.uses_l ? l : 0}};
                                const auto terms = try_build(c, f);
                                if (!terms) {
                                    ++t.skipped;
                                    continue;
                                }
                                const std::string where = cell_name(info.id, c.params, f.id);
                                const VerificationReport r = evaluate_terms(*terms, f.id);
                                oracle.check(*terms, where, {});
                                ++t.checked;
                                if (r.status == Status::numerical_failure) {
                                    t.fail(where + ": numerical failure " + r.notes);
                                    continue;
                                }
                                const double tol = kSlackRel * r.scale();
                                if (r.slack < 0.0) t.ratio(-r.slack / tol);
                                if (!(r.slack >= -tol)) t.fail(where + ": slack " + fmt("%.3g", r.slack));
                                if (info.quantitative && b == 1.0) {
                                    ++quantitative_checked;
                                    // base slack minus the improvement is the reported slack
                                    const double base_slack = r.constant * r.rhs - r.base_lhs;
                                    if (!(r.improvement > 0.0))
                                        t.fail(where + ": improvement " + fmt("%.3g", r.improvement) + " not positive");
                                    if (!(base_slack - r.improvement >= -tol))
                                        t.fail(where + ": base slack minus improvement " +
                                               fmt("%.3g", base_slack - r.improvement));
                                }
                            }
                        }
    return t;
}

const char* case_for(ExtremizerKind k) {
    switch (k) {
        case ExtremizerKind::hardy:
            return "HARDY_SUB";
        case ExtremizerKind::critical:
            return "CRIT_HARDY";
        case ExtremizerKind::onetwo:
            return "ONETWO";
        case ExtremizerKind::rellich2:
            return "RELLICH_2";
    }
    return "";
}

// criterion 3
Tally sharpness(OracleLog& oracle, std::string& detail) {
    Tally t;
    struct Sweep {
        ExtremizerKind kind;
        CaseParams c;
        std::vector<double> scales;
        double window;  // > 0: last quotient must lie within this distance of the limit
    };
    const std::vector<Sweep> sweeps{
        {ExtremizerKind::hardy, {4, 2.0, 0.0, 0.0, 0}, {1e-1, 1e-3, 1e-6}, 0.0},
        {ExtremizerKind::hardy, {4, 2.0, 0.0, 1.0, 0}, {1e-1, 1e-3, 1e-6}, 0.0},
        {ExtremizerKind::critical, {3, 2.0, 1.0, 0.0, 0}, {0.2, 0.1, 0.05, 0.02}, kCriticalWindow},
        {ExtremizerKind::onetwo, {3, 2.0, 0.0, 0.0, 0}, {1e-1, 1e-3, 1e-6}, 0.0},
        {ExtremizerKind::rellich2, {5, 2.0, 0.0, 0.0, 0}, {1e-1, 1e-3, 1e-6}, 0.0},
    };
    for (const Sweep& s : sweeps) {
        const SweepResult r = sharpness_sweep(s.kind, s.c, s.scales);
        const std::string name = extremizer_name(s.kind) + fmt(" b=%g", s.c.b);
        for (size_t i = 0; i < r.rows.size(); ++i) {
            ++t.checked;
            if (!(r.rows[i].gap > 0.0)) t.fail(name + ": gap " + fmt("%.6g", r.rows[i].gap) + " not positive");
            if (i > 0 && !(r.rows[i].gap < r.rows[i - 1].gap)) t.fail(name + ": gap did not decrease");
            const InequalityCase c{case_for(s.kind), s.c};
            const RadialFunction f = extremizer(s.kind, s.c, s.scales[i]);
            if (const auto terms = try_build(c, f)) oracle.check(*terms, name + " " + f.id, {});
        }
        const double last = r.rows.back().quotient;
        if (s.window > 0.0 && !(std::abs(last - r.limit) <= s.window))
            t.fail(name + ": quotient " + fmt("%.6g", last) + " outside the window");
        detail += (detail.empty() ? "" : "; ") + name + fmt(" -> %.5g", last) + fmt(" (limit %.5g)", r.limit);
    }
    return t;
}

// criterion 4
Tally closed_form(OracleLog& oracle) {
    Tally t;
    const QuadratureOptions tight{1e-13, 1e-16, 2000};
    const double v = 128.0 / 315.0;
    const InequalityCase c{"HARDY_SUB", {3, 2.0, 0.0, 0.0, 0}};
    const RadialFunction f = polynomial_bump(1.0, 2);
    const CaseTerms terms = build_case(c, f);
    const VerificationReport r = evaluate_terms(terms, f.id, tight);
    oracle.check(terms, "closed form", tight);
    t.checked = 3;
    if (!(std::abs(r.lhs - v) <= kClosedFormValue)) t.fail("lhs " + fmt("%.17g", r.lhs));
    if (!(std::abs(r.rhs - v) <= kClosedFormValue)) t.fail("rhs " + fmt("%.17g", r.rhs));
    if (!(std::abs(r.slack - 3 * v) <= kClosedFormSlack)) t.fail("slack " + fmt("%.17g", r.slack));
    t.ratio(std::max({std::abs(r.lhs - v) / kClosedFormValue, std::abs(r.rhs - v) / kClosedFormValue,
                      std::abs(r.slack - 3 * v) / kClosedFormSlack}));
    return t;
}

// criterion 5
Tally elementary_fact(double& min_gap) {
    Tally t;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const int count = 100000;
    min_gap = INFINITY;
    for (double b : {1.0, 0.0, 0.25, 4.0})
        for (int i = 0; i < count; ++i) {
            const double x = 1e-6 * std::pow(50.0 / 1e-6, (i + 1.0) / count);
            const double gap = dd(b, x) - 3.0 * b * x * x / (pi2 + b * x * x);
            if (b == 1.0) min_gap = std::min(min_gap, gap);
            ++t.checked;
            if (!(gap >= 0.0)) t.fail(fmt("b = %g", b) + fmt(" t = %.17g", x) + fmt(" gap %.3g", gap));
        }
    return t;
}

// criterion 6
Tally constants_consistency() {
    Tally t;
    for (int n : kN)
        for (double p : kP) {
            for (double beta : betas(n, p)) {
                const CaseParams c{n, p, beta, 0.0, 1};
                if (validity(Family::rellich_even, c) && validity(Family::rellich2, c)) {
                    const double r = c_even(n, 1, beta, p) * rellich2_constant(n, p, beta);
                    ++t.checked;
                    t.ratio(std::abs(r - 1.0) / kReciprocity);
                    if (!(std::abs(r - 1.0) <= kReciprocity))
                        t.fail(cell_name("reciprocity", c, "") + fmt(" off by %.3g", r - 1.0));
                } else {
                    ++t.skipped;
                }
                for (int l : {2, 3}) {
                    const CaseParams cl{n, p, beta, 0.0, l};
                    if (!validity(Family::rellich_even, cl)) {
                        ++t.skipped;
                        continue;
                    }
                    const double whole = c_even(n, l, beta, p);
                    const double split = c_even(n, 1, beta, p) * c_even(n, l - 1, beta + 2 * p, p);
                    const double rel = std::abs(whole - split) / whole;
                    ++t.checked;
                    t.ratio(rel / kIteration);
                    if (!(rel <= kIteration)) t.fail(cell_name("iteration", cl, "") + fmt(" rel %.3g", rel));
                }
            }
            if (validity(Family::critical_rellich2, {n, p, 0.0, 0.0, 0})) {
                const double a = critical_even_constant(n, 1, p), b = critical_rellich2_constant(n, p);
                ++t.checked;
                if (!(std::abs(a - b) <= kCriticalEven * b))
                    t.fail(fmt("critical even n=%g", n) + fmt(" p=%g", p) + fmt(" diff %.3g", a - b));
            } else {
                ++t.skipped;
            }
        }
    return t;
}

// criterion 7
Tally mow_suite(double& min_form) {
    Tally t;
    min_form = INFINITY;
    std::vector<double> grid;
    for (int i = 1; i <= 10000; ++i) grid.push_back(30.0 * i / 10000);
    for (int n = 4; n <= 8; ++n)
        for (double beta : {-1.9, -1.0, 0.0, 1.0, std::min(2.0, n - 4.0)}) {
            if (beta > n - 4.0) {
                ++t.skipped;
                continue;
            }
            const std::string where = fmt("n=%g", n) + fmt(" beta=%g", beta);
            for (int k = 1; k <= 10; ++k) {
                for (const RadialFunction& f : {mode_profile(k, 0.8, 4), mode_profile(k, 0.5, 6)}) {
                    const QuadratureResult q = mode_form(n, beta, k, f);
                    ++t.checked;
                    min_form = std::min(min_form, q.value);
                    if (!(q.value >= kModeFloor)) t.fail(where + " " + f.id + fmt(" mode_form %.3g", q.value));
                }
                const CoefficientCheck cc = coefficient_check(n, beta, k, 100);
                ++t.checked;
                if (!cc.ok()) t.fail(where + fmt(" k=%g coefficient violation", k));
            }
            for (const RadialFunction& f : {mode_profile(0, 0.8, 4), mode_profile(0, 0.5, 6)}) {
                const MowResult r = mow_compare(n, beta, {make_mode(n, 0, f)});
                ++t.checked;
                if (!(std::abs(r.slack) <= kRadialSlack && std::abs(r.rhs - r.lhs) <= kRadialSlack))
                    t.fail(where + " radial " + f.id + fmt(" rhs-lhs %.3g", r.rhs - r.lhs));
            }
            const PositivityMin pm = pointwise_positivity(n, beta, grid);
            ++t.checked;
            if (!(pm.value > 0.0)) t.fail(where + fmt(" positivity min %.3g", pm.value));
        }
    return t;
}

// criterion 9
Tally hyperbolic(std::string& detail) {
    Tally t;
    const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
    for (int n = 3; n <= 8; ++n) {
        const double c = hyperbolic_weight_constant(n);
        ++t.checked;
        if (!(c > 0.0 && c <= inv_pi2)) t.fail(fmt("C(%g)", n) + fmt(" = %.17g", c));
        if (n == 3 || n == 8) detail += fmt(" C(%g)", n) + fmt("=%.10g", c);
    }
    const auto fs = corpus();
    for (int n : kN)
        for (double p : kP)
            for (double beta : betas(n, p))
                for (const RadialFunction& f : fs) {
                    const InequalityCase c{"HYP_HARDY", {n, p, beta, 1.0, 0}};
                    const auto terms = try_build(c, f);
                    if (!terms) {
                        ++t.skipped;
                        continue;
                    }
                    const VerificationReport r = evaluate_terms(*terms, f.id);
                    ++t.checked;
                    if (!(r.status == Status::pass && r.slack >= 0.0))
                        t.fail(cell_name("HYP_HARDY", c.params, f.id) + fmt(" slack %.3g", r.slack));
                }
    return t;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    bool all = true;
    OracleLog oracle;

    const Tally c1 = identity_suite(oracle);
    const double c1_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Tally c1_timed = c1;
    if (c1_seconds > kRuntimeSeconds) c1_timed.fail(fmt("runtime %.1f s", c1_seconds));
    report(1, "identity residuals within 1e-8 relative", c1_timed,
           std::to_string(c1.checked) + " cells, " + std::to_string(c1.skipped) + " invalid skipped, worst " +
               fmt("%.3g of tolerance", c1.worst) + fmt(", %.1f s", c1_seconds));
    all &= c1_timed.ok;

    long quantitative = 0;
    const Tally c2 = inequality_suite(oracle, quantitative);
    report(2, "every case has slack >= -1e-9 relative; quantitative improvements covered", c2,
           std::to_string(c2.checked) + " cells, " + std::to_string(quantitative) + " quantitative at b = 1, " +
               std::to_string(c2.skipped) + " invalid skipped");
    all &= c2.ok;

    std::string c3_detail;
    const Tally c3 = sharpness(oracle, c3_detail);
    report(3, "extremizer gaps positive and decreasing", c3, c3_detail);
    all &= c3.ok;

    const Tally c4 = closed_form(oracle);
    report(4, "closed-form Hardy example", c4, fmt("worst %.3g of tolerance", c4.worst));
    all &= c4.ok;

    double min_gap = 0.0;
    const Tally c5 = elementary_fact(min_gap);
    report(5, "t coth t - 1 >= 3t^2/(pi^2+t^2), rescaled for b in {0.25, 4}", c5,
           std::to_string(c5.checked) + " points, min gap at b = 1 " + fmt("%.3g", min_gap));
    all &= c5.ok;

    const Tally c6 = constants_consistency();
    report(6, "reciprocity, iteration and critical l = 1 consistency", c6,
           std::to_string(c6.checked) + " checks, worst " + fmt("%.3g of tolerance", c6.worst));
    all &= c6.ok;

    double min_form = 0.0;
    const Tally c7 = mow_suite(min_form);
    report(7, "mode forms, radial equality, coefficients, pointwise positivity", c7,
           std::to_string(c7.checked) + " checks, min mode_form " + fmt("%.3g", min_form));
    all &= c7.ok;

    Tally c8 = oracle.t;
    const double crit = integrate_weighted([](double) { return 1.0; }, SingularWeight::critical_log(2.0), 0.5).value;
    const double inv_ln2 = 1.0 / std::numbers::ln2;
    if (!(std::abs(crit - inv_ln2) <= kCriticalLog * inv_ln2)) c8.fail(fmt("critical_log %.17g", crit));
    report(8, "quadrature agrees with the graded oracle to 1e-9 relative", c8,
           std::to_string(c8.checked) + " integrals, worst " + fmt("%.3g of tolerance", c8.worst) +
               fmt(", critical_log error %.2g", std::abs(crit - inv_ln2)));
    all &= c8.ok;

    std::string c9_detail;
    const Tally c9 = hyperbolic(c9_detail);
    report(9, "hyperbolic weight constant in (0, 1/pi^2] and nonnegative hyperbolic Hardy slack", c9,
           std::to_string(c9.checked) + " checks," + c9_detail);
    all &= c9.ok;

    return all ? 0 : 1;
}
