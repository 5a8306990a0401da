#pragma once

#include <utility>

#include "mnar/estimands.hpp"
#include "mnar/prob_core.hpp"

namespace mnar {

struct PotentialOutcomeBounds {
  int e = 0;
  Interval interval;  // on [0,1]
};

// m(e) = min_u p(D=1|E=e,U=u,R=0), M(e) = max_u.
std::pair<double, double> stratum_extremes(const ObservedLaw& law, int e);

// Assumption-free bounds of p(D_e=1):
//   lb = p(D=1,E=e) + A(e) p(R=0,E=1-e) + p(R=1,E=1-e) m(e)
//   ub = min(1, same with M(e))
// where A(e) = p(D_e=1|E=1-e,R=0). The lower bound is structurally
// nonnegative and is asserted, not clamped.
PotentialOutcomeBounds po_bounds(const ObservedLaw& law, int e);

// Cross-composition: lb = g(LB(1), UB(0)), ub = g(UB(1), LB(0)).
Interval contrast_bounds(const ObservedLaw& law, ContrastKind kind);

}  // namespace mnar
