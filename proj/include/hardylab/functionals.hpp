#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardylab/constants.hpp"
#include "hardylab/corpus.hpp"
#include "hardylab/geometry.hpp"
#include "hardylab/jets.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

// (1/p)|eta|^p + ((p-1)/p)|xi|^p - |xi|^{p-2} xi eta
double remainder_rp(double xi, double eta, double p);
// (p-1) int_0^1 |t xi + (1-t) eta|^{p-2} t dt |xi - eta|^2
double remainder_rp_integral_form(double xi, double eta, double p);

struct CaseInfo {
    std::string id;
    Family family;
    std::string display;   // descriptive name of the printed inequality
    int order;             // derivative order k of the rhs (2l / 2l+1 for l-bearing cases)
    bool uses_l = false;
    bool critical = false;
    bool quantitative = false;
    bool identity = false;
    bool hyperbolic = false;
};

const std::vector<CaseInfo>& case_registry();
const CaseInfo& case_info(const std::string& id);

struct InequalityCase {
    std::string id;
    CaseParams params;
};

// One radial integral.  Plain terms carry the full integrand in rho (measure included);
// critical terms carry a bounded factor s with integrand s(rho) rho^{-1} (ln 1/rho)^{-q}.
struct Term {
    std::string name;
    double coefficient = 1.0;
    bool critical = false;
    double q = 0.0;
    Integrand integrand;
    double lower = 0.0;
    double upper = 1.0;
    std::vector<double> breakpoints;
};

// Everything evaluate_case integrates, normalized to lhs <= constant * rhs.
struct CaseTerms {
    InequalityCase c;
    double constant = 0.0;
    std::vector<Term> lhs;         // lhs[0] is the base f-side; the rest are improvement terms
    std::vector<Term> rhs;
    std::vector<Term> remainders;  // identity: lhs = constant*rhs - sum(remainders)
    std::vector<std::string> notes;
};

// Throws ValidityError for invalid parameters and ContractError when f cannot be used.
CaseTerms build_case(const InequalityCase& c, const RadialFunction& f);

QuadratureResult integrate_term(const Term& t, const QuadratureOptions& opts = {});
// Independent value from the fixed graded rule; tests only.
double oracle_term(const Term& t);

struct NamedValue {
    std::string name;
    double value = 0.0;
    double error = 0.0;
};

enum class Status { pass, fail, numerical_failure, skipped };
std::string status_name(Status s);

struct VerificationReport {
    InequalityCase c;
    std::string corpus_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    double slack = 0.0;          // constant*rhs - lhs
    double base_lhs = 0.0;       // f-side without improvement terms
    double improvement = 0.0;    // lhs - base_lhs
    std::vector<NamedValue> remainder_terms;
    std::optional<double> residual;
    double quad_error_budget = 0.0;
    Status status = Status::pass;
    std::string notes;

    double scale() const;  // max(|lhs|, |constant*rhs|)
};

VerificationReport evaluate_case(const InequalityCase& c, const RadialFunction& f,
                                 const QuadratureOptions& opts = {});
// Evaluates prebuilt terms; the constant may have been edited by the caller.
VerificationReport evaluate_terms(const CaseTerms& terms, const std::string& corpus_id,
                                  const QuadratureOptions& opts = {});
// The manifold overrides c.params.n and c.params.b.
VerificationReport evaluate_case(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                                 const QuadratureOptions& opts = {});
// Same as evaluate_case for quantitative ids; rejects the others.
VerificationReport quantitative_case(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                                     const QuadratureOptions& opts = {});
// Signed residual for HARDY_SUB, CRIT_HARDY and ONETWO.
double identity_residual(const InequalityCase& c, const ModelManifold& m, const RadialFunction& f,
                         const QuadratureOptions& opts = {});

// inf_{rho > 0} cosh(rho/2)^{2n} / (pi^2 + rho^2)
double hyperbolic_weight_constant(int n);
// 2^n C(n): the constant c with int g dV/(pi^2 + rho^2) >= c int g dx on the ball.
double hyperbolic_improvement_constant(int n);

struct SweepRow {
    double scale = 0.0;
    double f_side = 0.0;          // int |f|^p ... (diverges as scale -> 0)
    double derivative_side = 0.0;
    double quotient = 0.0;        // derivative_side / f_side
    double gap = 0.0;             // quotient - sharp limit
    double error = 0.0;           // quadrature error carried to the quotient
};

struct SweepResult {
    ExtremizerKind kind;
    CaseParams params;
    double limit = 0.0;
    std::vector<SweepRow> rows;
    bool gaps_positive = true;
    bool gaps_decreasing = true;
    bool ok() const { return gaps_positive && gaps_decreasing; }
};

// Scales must be decreasing.  Gaps count as decreasing when each step drops by more than -2 errors.
SweepResult sharpness_sweep(ExtremizerKind kind, const CaseParams& params, const std::vector<double>& scales,
                            const QuadratureOptions& opts = {});

}  // namespace hardylab
