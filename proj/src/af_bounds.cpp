#include "mnar/af_bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace mnar {

std::pair<double, double> stratum_extremes(const ObservedLaw& law, int e) {
  double lo = law.p_d1_given_eur0(e, 0);
  double hi = lo;
  for (int u = 1; u < law.u_card; ++u) {
    const double v = law.p_d1_given_eur0(e, u);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

PotentialOutcomeBounds po_bounds(const ObservedLaw& law, int e) {
  const auto [m, big_m] = stratum_extremes(law, e);
  const double base =
      law.p_d1_e(e) + law.adjusted_other_arm(e) * law.p_re(0, 1 - e);
  const double r1_other = law.p_re(1, 1 - e);
  PotentialOutcomeBounds out;
  out.e = e;
  out.interval.lb = base + r1_other * m;
  out.interval.ub = std::min(1.0, base + r1_other * big_m);
  if (out.interval.lb < 0.0 || out.interval.lb > out.interval.ub) {
    throw std::logic_error("po_bounds invariant violated");
  }
  return out;
}

Interval contrast_bounds(const ObservedLaw& law, ContrastKind kind) {
  const PotentialOutcomeBounds b1 = po_bounds(law, 1);
  const PotentialOutcomeBounds b0 = po_bounds(law, 0);
  return {contrast(kind, b1.interval.lb, b0.interval.ub),
          contrast(kind, b1.interval.ub, b0.interval.lb)};
}

}  // namespace mnar
