#include <doctest.h>

#include <cmath>
#include <limits>

#include "mnar/estimands.hpp"
#include "mnar/sim_harness.hpp"
#include "test_util.hpp"

using namespace mnar;
using mnar::testutil::round2;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

const ContrastKind kAllKinds[] = {ContrastKind::RiskRatio,
                                  ContrastKind::RiskDifference,
                                  ContrastKind::OddsRatio,
                                  ContrastKind::OddsDifference};
}  // namespace

TEST_CASE("true potentials of the example model") {
  const CausalModel model = example_model();
  CHECK(true_potential(model, 1) == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(true_potential(model, 0) == doctest::Approx(0.56).epsilon(1e-12));
  CHECK(round2(true_potential(model, 1) / true_potential(model, 0)) == 0.88);
}

TEST_CASE("constant outcome conditional collapses the adjustment") {
  CausalModel model = example_model();
  model.p_d1_given_eu[1] = {0.3, 0.3, 0.3};
  CHECK(true_potential(model, 1) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("contrast values") {
  CHECK(contrast(ContrastKind::RiskDifference, 0.3, 0.3) == 0.0);
  CHECK(contrast(ContrastKind::RiskRatio, 0.49, 0.56) ==
        doctest::Approx(0.875).epsilon(1e-12));
  CHECK(contrast(ContrastKind::OddsRatio, 0.5, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contrast boundary behavior on the extended reals") {
  CHECK(contrast(ContrastKind::RiskRatio, 0.2, 0.0) == kInf);
  CHECK(contrast(ContrastKind::OddsRatio, 1.0, 0.5) == kInf);
  CHECK(contrast(ContrastKind::OddsRatio, 0.5, 1.0) == 0.0);
  CHECK(contrast(ContrastKind::OddsDifference, 1.0, 0.5) == kInf);
  CHECK(contrast(ContrastKind::OddsDifference, 0.5, 1.0) == -kInf);
  CHECK_THROWS_AS(contrast(ContrastKind::RiskRatio, 0.0, 0.0),
                  UndefinedContrast);
  CHECK_THROWS_AS(contrast(ContrastKind::OddsRatio, 1.0, 1.0),
                  UndefinedContrast);
  CHECK_THROWS_AS(contrast(ContrastKind::OddsDifference, 1.0, 1.0),
                  UndefinedContrast);
}

TEST_CASE("contrasts are monotone on a grid") {
  for (ContrastKind kind : kAllKinds) {
    for (int i = 1; i < 10; ++i) {
      for (int j = 1; j < 10; ++j) {
        const double p1 = i / 10.0;
        const double p0 = j / 10.0;
        const double g = contrast(kind, p1, p0);
        CHECK(contrast(kind, p1 + 0.05, p0) > g);
        CHECK(contrast(kind, p1, p0 + 0.05) < g);
      }
    }
  }
}

TEST_CASE("complete case analysis on the example law") {
  const ObservedLaw law = observed_law(example_model());
  const double rr = complete_case(law, 1) / complete_case(law, 0);
  CHECK(round2(rr) == 3.94);
  CHECK(rr == doctest::Approx(3.939742721733242).epsilon(1e-12));
}

TEST_CASE("single stratum reduces CC to the stratum conditional") {
  const CausalModel model = mnar::testutil::single_stratum_model();
  const ObservedLaw law = observed_law(model);
  for (int e = 0; e < 2; ++e) {
    CHECK(complete_case(law, e) ==
          doctest::Approx(law.p_d1_given_eur0(e, 0)).epsilon(1e-12));
  }
}

TEST_CASE("CC and MI are unbiased under MCAR") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const CausalModel model = sample_model(21, i, 3, Mechanism::MCAR);
    const ObservedLaw law = observed_law(model);
    for (int e = 0; e < 2; ++e) {
      CHECK(std::abs(complete_case(law, e) - true_potential(model, e)) < 1e-10);
      CHECK(std::abs(multiple_imputation(law, e) - true_potential(model, e)) <
            1e-10);
    }
  }
}

TEST_CASE("MI is unbiased under MAR") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const CausalModel model = sample_model(22, i, 3, Mechanism::MAR);
    const ObservedLaw law = observed_law(model);
    for (int e = 0; e < 2; ++e) {
      CHECK(std::abs(multiple_imputation(law, e) - true_potential(model, e)) <
            1e-10);
    }
  }
}

TEST_CASE("multiple imputation on the example law") {
  const ObservedLaw law = observed_law(example_model());
  const auto q = mi_weights(law);
  CHECK(round2(q[0]) == 0.70);
  const double rr = multiple_imputation(law, 1) / multiple_imputation(law, 0);
  CHECK(round2(rr) == 2.01);
  CHECK(rr == doctest::Approx(2.01120664656826).epsilon(1e-11));
}

TEST_CASE("fusion with the true p(U|E) is exact under MAR") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CausalModel model = sample_model(23, i, 3, Mechanism::MAR);
    const ObservedLaw law = observed_law(model);
    std::array<std::vector<double>, 2> aux;
    for (int e = 0; e < 2; ++e) {
      aux[e].resize(3);
      double pe = 0.0;
      for (int u = 0; u < 3; ++u) {
        const double w = e == 1 ? model.p_e1_given_u[u] : 1 - model.p_e1_given_u[u];
        aux[e][u] = model.p_u[u] * w;
        pe += aux[e][u];
      }
      for (double& v : aux[e]) v /= pe;
    }
    for (int e = 0; e < 2; ++e) {
      CHECK(std::abs(fusion_estimate(law, aux, e) - true_potential(model, e)) <
            1e-10);
    }
  }
}

TEST_CASE("fusion with the exact p(U|E,R=1) reproduces the truth") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CausalModel model = sample_model(24, i, 3, Mechanism::MNAR);
    const JointTable joint = full_joint(model);
    const ObservedLaw law = observed_law(model);
    std::array<std::vector<double>, 2> aux;
    bool ok = true;
    for (int e = 0; e < 2; ++e) {
      double mass = 0.0;
      aux[e].resize(3);
      for (int u = 0; u < 3; ++u) {
        aux[e][u] = joint.at(0, e, u, 1) + joint.at(1, e, u, 1);
        mass += aux[e][u];
      }
      if (mass <= kStructuralTol) {
        ok = false;
        break;
      }
      for (double& v : aux[e]) v /= mass;
    }
    if (!ok) continue;
    for (int e = 0; e < 2; ++e) {
      CHECK(std::abs(fusion_estimate(law, aux, e) - true_potential(model, e)) <
            1e-10);
    }
  }
}

TEST_CASE("fusion ignores the auxiliary table without missingness") {
  const ObservedLaw law = observed_law(mnar::testutil::no_missingness_model());
  const std::array<std::vector<double>, 2> a{{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
  const std::array<std::vector<double>, 2> b{
      {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.25, 0.25}}};
  for (int e = 0; e < 2; ++e) {
    CHECK(fusion_estimate(law, a, e) ==
          doctest::Approx(fusion_estimate(law, b, e)).epsilon(1e-14));
  }
}

TEST_CASE("fusion rejects an unnormalized auxiliary table") {
  const ObservedLaw law = observed_law(example_model());
  const std::array<std::vector<double>, 2> bad{{{0.5, 0.4, 0.2}, {0.3, 0.3, 0.4}}};
  CHECK_THROWS_AS(fusion_estimate(law, bad, 1), NotNormalized);
}
