#pragma once

#include <array>
#include <vector>

#include "mnar/errors.hpp"

namespace mnar {

// Centralized tolerance constants.
inline constexpr double kStructuralTol = 1e-12;  // normalization / positivity floor
inline constexpr double kDerivedTol = 1e-10;     // derived identities

// Generative law for binary exposure E, binary outcome D, categorical
// confounder U with K levels, and missingness indicator R for U.
// p(R|E,U) cannot depend on D by construction (outcome-independent MNAR).
struct CausalModel {
  int u_card = 0;
  std::vector<double> p_u;                           // p(U=u), length K
  std::vector<double> p_e1_given_u;                  // p(E=1|U=u), length K
  std::array<std::vector<double>, 2> p_d1_given_eu;  // [e][u] = p(D=1|E=e,U=u)
  std::array<std::vector<double>, 2> p_r1_given_eu;  // [e][u] = p(R=1|E=e,U=u)
};

// Throws InvalidProbability / NotNormalized / PositivityViolation.
void validate_model(const CausalModel& model);

// Full joint p(D=d, E=e, U=u, R=r).
struct JointTable {
  int u_card = 0;
  std::vector<double> cells;  // index ((d*2+e)*K+u)*2+r

  double at(int d, int e, int u, int r) const {
    return cells[static_cast<std::size_t>(((d * 2 + e) * u_card + u) * 2 + r)];
  }
  double& at(int d, int e, int u, int r) {
    return cells[static_cast<std::size_t>(((d * 2 + e) * u_card + u) * 2 + r)];
  }
};

JointTable full_joint(const CausalModel& model);

// The identifiable pair {p(D,E,U,R=0), p(D,E,R=1)}: the only input the
// bounds machinery needs. Stored as joints so the two tables jointly
// normalize; conditionals are derived on demand.
struct ObservedLaw {
  int u_card = 0;
  std::vector<double> p_deu_r0;                 // [d][e][u], index (d*2+e)*K+u
  std::array<std::array<double, 2>, 2> p_de_r1{};  // [d][e]

  double deu_r0(int d, int e, int u) const {
    return p_deu_r0[static_cast<std::size_t>((d * 2 + e) * u_card + u)];
  }
  double& deu_r0(int d, int e, int u) {
    return p_deu_r0[static_cast<std::size_t>((d * 2 + e) * u_card + u)];
  }

  // Marginals of the stored joints.
  double p_r0() const;
  double p_r1() const;
  double p_de_r0(int d, int e) const;  // p(D=d,E=e,R=0)
  double p_e_r0(int e) const;          // p(E=e,R=0)
  double p_e_r1(int e) const;          // p(E=e,R=1)
  double p_re(int r, int e) const;     // p(R=r,E=e)
  double p_d1_e(int e) const;          // p(D=1,E=e), reconstructed across R

  // Conditionals. R=0 conditioning events are positive by invariant;
  // R=1 events throw ZeroConditioningEvent when their mass is <= 1e-12.
  double p_d1_given_eur0(int e, int u) const;       // p(D=1|E=e,U=u,R=0)
  double p_u_given_er0(int u, int e) const;         // p(U=u|E=e,R=0)
  double p_u_given_r0(int u) const;                 // p(U=u|R=0)
  double p_d1_given_er1(int e) const;               // p(D=1|E=e,R=1)
  double p_de_given_r1(int d, int e) const;         // p(D=d,E=e|R=1)
  double p_u_given_der0(int u, int d, int e) const; // p(U=u|D=d,E=e,R=0)

  // p(D_e=1|E=1-e,R=0) = sum_u p(D=1|E=e,U=u,R=0) p(U=u|E=1-e,R=0),
  // the adjustment term shared by Eq.-1-style decompositions.
  double adjusted_other_arm(int e) const;

  // S(e) = sum_u p(D=1|E=e,U=u,R=0).
  double stratum_sum(int e) const;
};

void validate_law(const ObservedLaw& law);

ObservedLaw observed_law(const CausalModel& model);

// Closed extended-real interval [lb, ub]; carrier for every bound pair.
struct Interval {
  double lb = 0.0;
  double ub = 0.0;
};

// The ternary-U worked example used throughout the docs and golden tests.
CausalModel example_model();

}  // namespace mnar
