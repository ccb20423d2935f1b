#pragma once

#include <string>

#include "hardylab/constants.hpp"
#include "hardylab/jets.hpp"

namespace hardylab {

// Smallest admissible extremizer scale.
constexpr double kScaleFloor = 1e-8;

// Jet in t of phi(t) = H(b-t)/(H(b-t)+H(t-a)), H(s) = exp(-1/s) for s > 0.
Jet cutoff_jet(double a, double b, double t, int order);

RadialFunction smooth_cutoff(double a, double b);
RadialFunction polynomial_bump(double R, int m);

enum class ExtremizerKind { hardy, critical, onetwo, rellich2 };

std::string extremizer_name(ExtremizerKind k);
ExtremizerKind extremizer_kind(const std::string& name);

// phi_{1,2}(rho) (1 - phi_{1,2}(rho/eps)) rho^{-(n-p-beta)/p}
RadialFunction hardy_extremizer(const CaseParams& c, double eps);
// (ln 1/rho)^{(p-1)/p - delta} phi_{1/2,1}(rho)
RadialFunction critical_extremizer(const CaseParams& c, double delta);
RadialFunction onetwo_extremizer(const CaseParams& c, double delta);
RadialFunction rellich2_extremizer(const CaseParams& c, double delta);
RadialFunction extremizer(ExtremizerKind k, const CaseParams& c, double scale);

// Largest admissible scale for the family; scales lie in [kScaleFloor, max].
double max_scale(ExtremizerKind k, const CaseParams& c);

// Ball-model mode profile r^k (1 - (r/R)^2)^m with r = tanh(rho/2), 0 < R < 1.
RadialFunction mode_profile(int k, double R, int m);

// Builds a corpus member from its id, e.g. "bump:R=1,m=4", "cutoff:a=0.3,b=0.9",
// "hardy_ext:eps=1e-4", "critical_ext:delta=0.1", "onetwo_ext:delta=0.01",
// "rellich2_ext:delta=0.01", "mode:k=1,R=0.8,m=4", "zero".
// Extremizers take their exponents from c.  Throws std::invalid_argument on malformed ids.
RadialFunction make_corpus(const std::string& id, const CaseParams& c = {});

// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace hardylab
