#pragma once

#include <array>
#include <string>
#include <vector>

#include "mnar/prob_core.hpp"

namespace mnar {

// Monotone contrasts g(p1, p0): strictly increasing in p1, strictly
// decreasing in p0 on (0,1)^2. This monotonicity is what makes the
// cross-composition of bounds valid.
enum class ContrastKind { RiskRatio, RiskDifference, OddsRatio, OddsDifference };

const char* contrast_name(ContrastKind kind);
ContrastKind parse_contrast(const std::string& name);  // rr/rd/or/od

// Extended-real contrast value; boundary cases map to +/-inf, genuinely
// indeterminate forms (0/0, inf/inf, inf-inf) throw UndefinedContrast.
double contrast(ContrastKind kind, double p1, double p0);

// p(D_e=1) = sum_u p(D=1|E=e,U=u) p(U=u), i.e. adjustment for U.
double true_potential(const CausalModel& model, int e);

// Adjustment for U|R=0 in place of U.
double complete_case(const ObservedLaw& law, int e);

// Mixture weights q(u) combining complete-case strata with imputed-case
// strata: q(u) = p(U=u|R=0)p(R=0)
//             + p(R=1) sum_{d,e} p(U=u|D=d,E=e,R=0) p(D=d,E=e|R=1).
std::vector<double> mi_weights(const ObservedLaw& law);

// Adjustment with q(u) in place of p(U=u).
double multiple_imputation(const ObservedLaw& law, int e);

// Point estimate that plugs an auxiliary p(U|E) table (rows e=0,1) into
// the slot of the non-recoverable p(U|E,R=1).
double fusion_estimate(const ObservedLaw& law,
                       const std::array<std::vector<double>, 2>& p_u_given_e,
                       int e);

}  // namespace mnar
