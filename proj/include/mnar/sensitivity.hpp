#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "mnar/af_bounds.hpp"
#include "mnar/estimands.hpp"
#include "mnar/prob_core.hpp"

namespace mnar {

// Analyst stand-ins for alpha(e) = min_u p(U=u|E=e,R=1) and
// beta(e) = max_u p(U=u|E=e,R=1). Invariant: 0 <= alpha(e) <= beta(e) <= 1.
struct SensitivityParams {
  std::array<double, 2> alpha{};  // indexed by e
  std::array<double, 2> beta{};
};

void validate_params(const SensitivityParams& params);

// Two-parameter simplification: a single global (alpha, beta) pair applied
// to both exposure levels.
SensitivityParams global_params(double alpha, double beta);

// Data-driven constraint c(e) = min(1, p(D=1|E=e,R=1) / S(e)):
// valid choices satisfy alpha(e) <= c(e) <= beta(e). When p(E=e,R=1) ~ 0
// the region is vacuous (alpha_max = 1, beta_min = 0, unconstrained flag).
struct FeasibleRegion {
  int e = 0;
  double alpha_max = 1.0;
  double beta_min = 0.0;
  bool unconstrained = false;
};

FeasibleRegion feasible_region(const ObservedLaw& law, int e);

// Extracts the true (alpha*, beta*) from the generating model.
// Throws ZeroConditioningEvent when p(E=e,R=1) ~ 0 for some e.
SensitivityParams true_sensitivity_params(const CausalModel& model);

// Perturbation by analyst factor f: alpha(e) = min(1, alpha*(e)/f),
// beta(e) = min(1, beta*(e)*f). f < 1 risky, f = 1 optimal, f > 1 conservative.
SensitivityParams analyst_params(const SensitivityParams& true_params, double f);

// Bounds of p(D_e=1) with the third term of the assumption-free bounds
// replaced by p(R=1,E=1-e) * alpha(1-e) * S(e) (lb) resp. beta(1-e) * S(e)
// (ub, capped at 1).
PotentialOutcomeBounds sa_po_bounds(const ObservedLaw& law, int e,
                                    const SensitivityParams& params);

// lb = g(sa_lb(1), sa_ub(0)) -- depends only on alpha(0), beta(1);
// ub = g(sa_ub(1), sa_lb(0)) -- depends only on alpha(1), beta(0).
Interval sa_contrast_bounds(const ObservedLaw& law, ContrastKind kind,
                            const SensitivityParams& params);

// Rectangular sweep of one contrast bound over its two parameters.
// axis1-major (row-major) value layout; degenerate 1x1 when a needed
// feasible region is vacuous.
struct SensitivityGrid {
  std::vector<double> axis1;   // alpha values
  std::vector<double> axis2;   // beta values
  std::vector<double> values;  // axis1-major, size axis1.size()*axis2.size()
  bool degenerate = false;

  double at(std::size_t i, std::size_t j) const {
    return values[i * axis2.size() + j];
  }
};

struct GridPair {
  SensitivityGrid lower;  // over (alpha(0), beta(1)) in [0,c(0)] x [c(1),1]
  SensitivityGrid upper;  // over (alpha(1), beta(0)) in [0,c(1)] x [c(0),1]
};

GridPair sensitivity_grid(const ObservedLaw& law, ContrastKind kind,
                          int resolution);

// CSV: header `axis1,axis2,value`, rows in row-major order, full precision.
void write_grid_csv(const SensitivityGrid& grid, std::ostream& os);

}  // namespace mnar
