#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mnar/sensitivity.hpp"
#include "mnar/sim_harness.hpp"
#include "test_util.hpp"

using namespace mnar;
using mnar::testutil::round2;

TEST_CASE("true sensitivity params of the example model") {
  const SensitivityParams p = true_sensitivity_params(example_model());
  CHECK(round2(p.alpha[0]) == 0.05);
  CHECK(round2(p.alpha[1]) == 0.22);
  CHECK(round2(p.beta[0]) == 0.82);
  CHECK(round2(p.beta[1]) == 0.49);
  CHECK(p.alpha[0] == doctest::Approx(0.05348615).epsilon(1e-6));
  CHECK(p.beta[1] == doctest::Approx(0.48780488).epsilon(1e-6));
}

TEST_CASE("degenerate and uniform confounders") {
  const SensitivityParams single =
      true_sensitivity_params(mnar::testutil::single_stratum_model());
  CHECK(single.alpha[0] == doctest::Approx(1.0));
  CHECK(single.beta[1] == doctest::Approx(1.0));

  CausalModel uniform;
  uniform.u_card = 3;
  uniform.p_u = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  uniform.p_e1_given_u = {0.5, 0.5, 0.5};
  uniform.p_d1_given_eu = {{{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}};
  uniform.p_r1_given_eu = {{{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}};
  const SensitivityParams p = true_sensitivity_params(uniform);
  for (int e = 0; e < 2; ++e) {
    CHECK(p.alpha[e] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(p.beta[e] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("params without R=1 mass are unavailable") {
  CHECK_THROWS_AS(
      true_sensitivity_params(mnar::testutil::no_missingness_model()),
      ZeroConditioningEvent);
}

TEST_CASE("feasible regions of the example law") {
  const ObservedLaw law = observed_law(example_model());
  const FeasibleRegion r1 = feasible_region(law, 1);
  CHECK_FALSE(r1.unconstrained);
  CHECK(r1.alpha_max == doctest::Approx(law.p_d1_given_er1(1) / 1.3).epsilon(1e-12));
  CHECK(r1.alpha_max == doctest::Approx(0.326454033771107).epsilon(1e-10));
  const FeasibleRegion r0 = feasible_region(law, 0);
  CHECK(r0.alpha_max == doctest::Approx(0.48896005393561426).epsilon(1e-10));
}

TEST_CASE("vacuous region is flagged, not raised") {
  const ObservedLaw law = observed_law(mnar::testutil::no_missingness_model());
  const FeasibleRegion r = feasible_region(law, 0);
  CHECK(r.unconstrained);
  CHECK(r.alpha_max == 1.0);
  CHECK(r.beta_min == 0.0);
}

TEST_CASE("certain outcome strata put c(e) at p(D=1|E,R=1)/K") {
  // With p(D=1|E=e,U,R=0) pushed near 1 the stratum sum approaches K.
  CausalModel model = example_model();
  model.p_d1_given_eu = {{{0.999, 0.999, 0.999}, {0.999, 0.999, 0.999}}};
  const ObservedLaw law = observed_law(model);
  for (int e = 0; e < 2; ++e) {
    CHECK(feasible_region(law, e).alpha_max ==
          doctest::Approx(law.p_d1_given_er1(e) / (3 * 0.999)).epsilon(1e-12));
  }
}

TEST_CASE("true params lie in the feasible region") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const CausalModel model = sample_model(41, i, 3, Mechanism::MNAR);
    const ObservedLaw law = observed_law(model);
    const SensitivityParams p = true_sensitivity_params(model);
    for (int e = 0; e < 2; ++e) {
      const FeasibleRegion r = feasible_region(law, e);
      CHECK(p.alpha[e] <= r.alpha_max + kDerivedTol);
      CHECK(p.beta[e] >= r.beta_min - kDerivedTol);
    }
  }
}

TEST_CASE("analyst factor perturbation") {
  SensitivityParams truth;
  truth.alpha = {0.05, 0.2};
  truth.beta = {0.82, 0.5};
  const SensitivityParams same = analyst_params(truth, 1.0);
  CHECK(same.alpha[0] == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(same.beta[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(analyst_params(truth, 1.2).alpha[0] ==
        doctest::Approx(0.05 / 1.2).epsilon(1e-12));
  CHECK(analyst_params(truth, 1.3).beta[0] == 1.0);  // capped
}

TEST_CASE("lower-bound point pinned at alpha(0)=beta(1)=0.4") {
  const ObservedLaw law = observed_law(example_model());
  SensitivityParams params = true_sensitivity_params(example_model());
  params.alpha[0] = 0.4;
  params.beta[1] = 0.4;
  const Interval iv = sa_contrast_bounds(law, ContrastKind::RiskRatio, params);
  // Exact value of the composed bound; excludes the true value 0.875,
  // illustrating the risk of optimistic parameter choices.
  CHECK(iv.lb == doctest::Approx(1.0588037396416177).epsilon(1e-12));
  CHECK(iv.lb > 0.875);
}

TEST_CASE("SA interval at true params covers the example truth") {
  const ObservedLaw law = observed_law(example_model());
  const SensitivityParams truth = true_sensitivity_params(example_model());
  const Interval iv = sa_contrast_bounds(law, ContrastKind::RiskRatio, truth);
  CHECK(iv.lb <= 0.875);
  CHECK(iv.ub >= 0.875);
  // The interval read off the sweep figure is about [0.6, 1.7].
  CHECK(iv.lb == doctest::Approx(0.6276).epsilon(1e-3));
  CHECK(iv.ub == doctest::Approx(1.6336).epsilon(1e-3));
}

TEST_CASE("zero alpha relaxes the lower bound below the AF one") {
  const ObservedLaw law = observed_law(example_model());
  for (int e = 0; e < 2; ++e) {
    SensitivityParams params = global_params(0.0, 1.0);
    const PotentialOutcomeBounds sa = sa_po_bounds(law, e, params);
    const PotentialOutcomeBounds af = po_bounds(law, e);
    CHECK(sa.interval.lb <= af.interval.lb + kStructuralTol);
    CHECK(sa.interval.ub >= af.interval.ub - kStructuralTol);
  }
}

TEST_CASE("coverage at true params on random models") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const CausalModel model = sample_model(42, i, 3, Mechanism::MNAR);
    const ObservedLaw law = observed_law(model);
    const SensitivityParams truth = true_sensitivity_params(model);
    for (int e = 0; e < 2; ++e) {
      const PotentialOutcomeBounds b = sa_po_bounds(law, e, truth);
      const double tp = true_potential(model, e);
      CHECK(b.interval.lb <= tp + kDerivedTol);
      CHECK(b.interval.ub >= tp - kDerivedTol);
    }
  }
}

TEST_CASE("extreme params contain the true-param interval") {
  const ObservedLaw law = observed_law(example_model());
  const SensitivityParams truth = true_sensitivity_params(example_model());
  const Interval tight = sa_contrast_bounds(law, ContrastKind::RiskRatio, truth);
  const Interval loose =
      sa_contrast_bounds(law, ContrastKind::RiskRatio, global_params(0.0, 1.0));
  CHECK(loose.lb <= tight.lb + kStructuralTol);
  CHECK(loose.ub >= tight.ub - kStructuralTol);
}

TEST_CASE("conservative factors nest the intervals") {
  const ObservedLaw law = observed_law(example_model());
  const SensitivityParams truth = true_sensitivity_params(example_model());
  Interval prev = sa_contrast_bounds(law, ContrastKind::RiskRatio,
                                     analyst_params(truth, 1.0));
  for (double f : {1.1, 1.2, 1.5}) {
    const Interval next = sa_contrast_bounds(law, ContrastKind::RiskRatio,
                                             analyst_params(truth, f));
    CHECK(next.lb <= prev.lb + kStructuralTol);
    CHECK(next.ub >= prev.ub - kStructuralTol);
    prev = next;
  }
}

TEST_CASE("bound monotonicity in each parameter") {
  const ObservedLaw law = observed_law(example_model());
  const auto lb_at = [&](double a0, double b1) {
    SensitivityParams p = global_params(0.0, 1.0);
    p.alpha[0] = a0;
    p.beta[1] = b1;
    return sa_contrast_bounds(law, ContrastKind::RiskRatio, p).lb;
  };
  const auto ub_at = [&](double a1, double b0) {
    SensitivityParams p = global_params(0.0, 1.0);
    p.alpha[1] = a1;
    p.beta[0] = b0;
    return sa_contrast_bounds(law, ContrastKind::RiskRatio, p).ub;
  };
  CHECK(lb_at(0.3, 0.5) >= lb_at(0.2, 0.5));
  CHECK(lb_at(0.2, 0.6) <= lb_at(0.2, 0.5));
  CHECK(ub_at(0.1, 0.9) >= ub_at(0.1, 0.8));
  CHECK(ub_at(0.2, 0.8) <= ub_at(0.1, 0.8));
}

TEST_CASE("grid corners agree with direct evaluation") {
  const ObservedLaw law = observed_law(example_model());
  const GridPair grids = sensitivity_grid(law, ContrastKind::RiskRatio, 2);
  const FeasibleRegion r0 = feasible_region(law, 0);
  const FeasibleRegion r1 = feasible_region(law, 1);
  SensitivityParams p = global_params(0.0, 1.0);
  p.alpha[0] = r0.alpha_max;
  p.beta[1] = r1.beta_min;
  CHECK(grids.lower.at(1, 0) ==
        doctest::Approx(sa_contrast_bounds(law, ContrastKind::RiskRatio, p).lb)
            .epsilon(1e-12));
  p = global_params(0.0, 1.0);
  CHECK(grids.lower.at(0, 1) ==
        doctest::Approx(sa_contrast_bounds(law, ContrastKind::RiskRatio, p).lb)
            .epsilon(1e-12));
  p.alpha[1] = r1.alpha_max;
  p.beta[0] = r0.beta_min;
  CHECK(grids.upper.at(1, 0) ==
        doctest::Approx(sa_contrast_bounds(law, ContrastKind::RiskRatio, p).ub)
            .epsilon(1e-12));
}

TEST_CASE("lower-bound grid is monotone along both axes") {
  const ObservedLaw law = observed_law(example_model());
  const GridPair grids = sensitivity_grid(law, ContrastKind::RiskRatio, 25);
  const SensitivityGrid& g = grids.lower;
  for (std::size_t i = 0; i < g.axis1.size(); ++i) {
    for (std::size_t j = 0; j + 1 < g.axis2.size(); ++j) {
      CHECK(g.at(i, j + 1) <= g.at(i, j) + kStructuralTol);
    }
  }
  for (std::size_t j = 0; j < g.axis2.size(); ++j) {
    for (std::size_t i = 0; i + 1 < g.axis1.size(); ++i) {
      CHECK(g.at(i + 1, j) >= g.at(i, j) - kStructuralTol);
    }
  }
}

TEST_CASE("degenerate grid without missingness") {
  const ObservedLaw law = observed_law(mnar::testutil::no_missingness_model());
  const GridPair grids = sensitivity_grid(law, ContrastKind::RiskRatio, 11);
  CHECK(grids.lower.degenerate);
  CHECK(grids.lower.values.size() == 1);
  const double truth = contrast(
      ContrastKind::RiskRatio, true_potential(mnar::testutil::no_missingness_model(), 1),
      true_potential(mnar::testutil::no_missingness_model(), 0));
  CHECK(grids.lower.values[0] == doctest::Approx(truth).epsilon(1e-10));
  CHECK(grids.upper.values[0] == doctest::Approx(truth).epsilon(1e-10));
}

TEST_CASE("grid CSV format") {
  const ObservedLaw law = observed_law(example_model());
  const GridPair grids = sensitivity_grid(law, ContrastKind::RiskRatio, 3);
  std::ostringstream os;
  write_grid_csv(grids.lower, os);
  const std::string csv = os.str();
  CHECK(csv.rfind("axis1,axis2,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + 9 cells
}
