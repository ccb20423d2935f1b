#pragma once

#include <string>
#include <vector>

namespace hardylab {

struct CaseParams {
    int n = 3;
    double p = 2.0;
    double beta = 0.0;
    double b = 0.0;
    int l = 0;
};

struct Validity {
    bool ok = true;
    std::string reason;

    static Validity pass() { return {}; }
    static Validity fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const { return ok; }
};

// Parameter families; each registry case maps onto one of them.
enum class Family {
    hardy,
    critical_hardy,
    critical_n,
    onetwo,
    rellich2,
    critical_rellich2,
    rellich_even,
    rellich_odd,
    critical_even,
    critical_odd,
    hyp_hardy,
    hyp_critical,
    hyp_rellich,
    hyp_improved_rellich,
    hyp_even,
    hyp_odd,
    mow,
};

// Accepts a family name ("hardy", "rellich_even", ...) or a registry id ("HARDY_SUB", ...).
// Throws std::invalid_argument for unknown ids.
Family family_of(const std::string& case_id);
std::string family_name(Family f);

Validity validity(Family f, const CaseParams& c);
Validity validity(const std::string& case_id, const CaseParams& c);

// Open interval of admissible beta for fixed (n, p, l); each end names where it comes from.
struct BetaRange {
    double lower;
    double upper;
    bool upper_inclusive = false;
    std::string lower_source;
    std::string upper_source;
    bool beta_free = false;  // critical families: the weight is fixed by n and p
};
BetaRange beta_range(Family f, int n, double p, int l);

double hardy_constant(int n, double p, double beta);
double critical_hardy_constant(double p);
double onetwo_constant(int n, double p, double beta);
double rellich2_constant(int n, double p, double beta);
double c_even(int n, int l, double beta, double p);
double c_odd(int n, int l, double beta, double p);
double critical_rellich2_constant(int n, double p);
// These two check only what the formula needs (n >= 3, l >= 1, p > 1, n-2i-2 > 0);
// validity() adds the p < n/k range of the inequality.
double critical_even_constant(int n, int l, double p);
double critical_odd_constant(int n, int l, double p);

}  // namespace hardylab
