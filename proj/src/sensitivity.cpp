#include "mnar/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mnar {

namespace {

double sa_base(const ObservedLaw& law, int e) {
  return law.p_d1_e(e) + law.adjusted_other_arm(e) * law.p_re(0, 1 - e);
}

double sa_lb_value(const ObservedLaw& law, int e, double alpha_other) {
  return sa_base(law, e) +
         law.p_re(1, 1 - e) * alpha_other * law.stratum_sum(e);
}

double sa_ub_value(const ObservedLaw& law, int e, double beta_other) {
  return std::min(1.0, sa_base(law, e) +
                           law.p_re(1, 1 - e) * beta_other * law.stratum_sum(e));
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

}  // namespace

void validate_params(const SensitivityParams& params) {
  for (int e = 0; e < 2; ++e) {
    const double a = params.alpha[e];
    const double b = params.beta[e];
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
      throw InvalidProbability("sensitivity parameter outside [0,1]");
    }
    if (a > b) {
      throw InvalidProbability("alpha(" + std::to_string(e) + ") > beta(" +
                               std::to_string(e) + ")");
    }
  }
}

SensitivityParams global_params(double alpha, double beta) {
  SensitivityParams params{{alpha, alpha}, {beta, beta}};
  validate_params(params);
  return params;
}

FeasibleRegion feasible_region(const ObservedLaw& law, int e) {
  FeasibleRegion region;
  region.e = e;
  if (law.p_e_r1(e) <= kStructuralTol) {
    region.unconstrained = true;
    region.alpha_max = 1.0;
    region.beta_min = 0.0;
    return region;
  }
  const double c =
      std::min(1.0, law.p_d1_given_er1(e) / law.stratum_sum(e));
  region.alpha_max = c;
  region.beta_min = c;
  return region;
}

SensitivityParams true_sensitivity_params(const CausalModel& model) {
  const JointTable joint = full_joint(model);
  SensitivityParams params;
  for (int e = 0; e < 2; ++e) {
    double mass = 0.0;
    for (int u = 0; u < model.u_card; ++u) {
      mass += joint.at(0, e, u, 1) + joint.at(1, e, u, 1);
    }
    if (mass <= kStructuralTol) {
      throw ZeroConditioningEvent("p(E=" + std::to_string(e) + ",R=1) ~ 0");
    }
    double lo = 1.0, hi = 0.0;
    for (int u = 0; u < model.u_card; ++u) {
      const double p = (joint.at(0, e, u, 1) + joint.at(1, e, u, 1)) / mass;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    params.alpha[e] = lo;
    params.beta[e] = hi;
  }
  return params;
}

SensitivityParams analyst_params(const SensitivityParams& true_params,
                                 double f) {
  if (!(f > 0.0)) throw InvalidProbability("analyst factor must be > 0");
  SensitivityParams out;
  for (int e = 0; e < 2; ++e) {
    out.alpha[e] = std::min(1.0, true_params.alpha[e] / f);
    out.beta[e] = std::min(1.0, true_params.beta[e] * f);
  }
  return out;
}

PotentialOutcomeBounds sa_po_bounds(const ObservedLaw& law, int e,
                                    const SensitivityParams& params) {
  PotentialOutcomeBounds out;
  out.e = e;
  out.interval.lb = sa_lb_value(law, e, params.alpha[1 - e]);
  out.interval.ub = sa_ub_value(law, e, params.beta[1 - e]);
  return out;
}

Interval sa_contrast_bounds(const ObservedLaw& law, ContrastKind kind,
                            const SensitivityParams& params) {
  return {contrast(kind, sa_lb_value(law, 1, params.alpha[0]),
                   sa_ub_value(law, 0, params.beta[1])),
          contrast(kind, sa_ub_value(law, 1, params.beta[0]),
                   sa_lb_value(law, 0, params.alpha[1]))};
}

GridPair sensitivity_grid(const ObservedLaw& law, ContrastKind kind,
                          int resolution) {
  if (resolution < 2) throw InvalidProbability("grid resolution must be >= 2");
  const FeasibleRegion r0 = feasible_region(law, 0);
  const FeasibleRegion r1 = feasible_region(law, 1);

  GridPair grids;
  if (r0.unconstrained || r1.unconstrained) {
    // No R=1 mass on one arm: the bounds no longer depend on the
    // corresponding parameter, collapse to a single exact cell.
    for (auto* grid : {&grids.lower, &grids.upper}) {
      grid->degenerate = true;
      grid->axis1 = {0.0};
      grid->axis2 = {1.0};
    }
    grids.lower.values = {contrast(kind, sa_lb_value(law, 1, 0.0),
                                   sa_ub_value(law, 0, 1.0))};
    grids.upper.values = {contrast(kind, sa_ub_value(law, 1, 1.0),
                                   sa_lb_value(law, 0, 0.0))};
    return grids;
  }

  grids.lower.axis1 = linspace(0.0, r0.alpha_max, resolution);       // alpha(0)
  grids.lower.axis2 = linspace(r1.beta_min, 1.0, resolution);        // beta(1)
  grids.upper.axis1 = linspace(0.0, r1.alpha_max, resolution);       // alpha(1)
  grids.upper.axis2 = linspace(r0.beta_min, 1.0, resolution);        // beta(0)
  grids.lower.values.reserve(static_cast<std::size_t>(resolution) * resolution);
  grids.upper.values.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (double a0 : grids.lower.axis1) {
    const double lb1 = sa_lb_value(law, 1, a0);
    for (double b1 : grids.lower.axis2) {
      grids.lower.values.push_back(contrast(kind, lb1, sa_ub_value(law, 0, b1)));
    }
  }
  for (double a1 : grids.upper.axis1) {
    const double lb0 = sa_lb_value(law, 0, a1);
    for (double b0 : grids.upper.axis2) {
      grids.upper.values.push_back(contrast(kind, sa_ub_value(law, 1, b0), lb0));
    }
  }
  return grids;
}

void write_grid_csv(const SensitivityGrid& grid, std::ostream& os) {
  os << "axis1,axis2,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
    for (std::size_t j = 0; j < grid.axis2.size(); ++j) {
      os << grid.axis1[i] << ',' << grid.axis2[j] << ',' << grid.at(i, j)
         << '\n';
    }
  }
}

}  // namespace mnar
