#include "mnar/prob_core.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace mnar {

namespace {

void check_unit(double v, const std::string& what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidProbability(what + " = " + std::to_string(v) +
                             " outside [0,1]");
  }
}

}  // namespace

void validate_model(const CausalModel& model) {
  const int k = model.u_card;
  if (k < 1) throw InvalidProbability("u_card must be >= 1");
  if (static_cast<int>(model.p_u.size()) != k ||
      static_cast<int>(model.p_e1_given_u.size()) != k) {
    throw InvalidProbability("vector length does not match u_card");
  }
  for (int e = 0; e < 2; ++e) {
    if (static_cast<int>(model.p_d1_given_eu[e].size()) != k ||
        static_cast<int>(model.p_r1_given_eu[e].size()) != k) {
      throw InvalidProbability("matrix row length does not match u_card");
    }
  }

  double sum_u = 0.0;
  for (int u = 0; u < k; ++u) {
    check_unit(model.p_u[u], "p_u");
    check_unit(model.p_e1_given_u[u], "p_e1_given_u");
    sum_u += model.p_u[u];
    for (int e = 0; e < 2; ++e) {
      check_unit(model.p_d1_given_eu[e][u], "p_d1_given_eu");
      check_unit(model.p_r1_given_eu[e][u], "p_r1_given_eu");
    }
  }
  if (std::abs(sum_u - 1.0) > kStructuralTol) {
    throw NotNormalized("p_u sums to " + std::to_string(sum_u));
  }

  // Positivity: every cell of the implied p(D,E,U,R=0) must exceed the floor.
  for (int d = 0; d < 2; ++d) {
    for (int e = 0; e < 2; ++e) {
      for (int u = 0; u < k; ++u) {
        const double pe =
            e == 1 ? model.p_e1_given_u[u] : 1.0 - model.p_e1_given_u[u];
        const double pd = d == 1 ? model.p_d1_given_eu[e][u]
                                 : 1.0 - model.p_d1_given_eu[e][u];
        const double pr0 = 1.0 - model.p_r1_given_eu[e][u];
        const double cell = model.p_u[u] * pe * pd * pr0;
        if (cell <= kStructuralTol) {
          throw PositivityViolation("p(D=" + std::to_string(d) +
                                    ",E=" + std::to_string(e) +
                                    ",U=" + std::to_string(u) + ",R=0) = " +
                                    std::to_string(cell));
        }
      }
    }
  }
}

JointTable full_joint(const CausalModel& model) {
  validate_model(model);
  const int k = model.u_card;
  JointTable joint;
  joint.u_card = k;
  joint.cells.assign(static_cast<std::size_t>(2 * 2 * k * 2), 0.0);
  for (int d = 0; d < 2; ++d) {
    for (int e = 0; e < 2; ++e) {
      for (int u = 0; u < k; ++u) {
        const double pe =
            e == 1 ? model.p_e1_given_u[u] : 1.0 - model.p_e1_given_u[u];
        const double pd = d == 1 ? model.p_d1_given_eu[e][u]
                                 : 1.0 - model.p_d1_given_eu[e][u];
        for (int r = 0; r < 2; ++r) {
          const double pr = r == 1 ? model.p_r1_given_eu[e][u]
                                   : 1.0 - model.p_r1_given_eu[e][u];
          joint.at(d, e, u, r) = model.p_u[u] * pe * pd * pr;
        }
      }
    }
  }
  return joint;
}

ObservedLaw observed_law(const CausalModel& model) {
  const JointTable joint = full_joint(model);
  const int k = model.u_card;
  ObservedLaw law;
  law.u_card = k;
  law.p_deu_r0.assign(static_cast<std::size_t>(2 * 2 * k), 0.0);
  for (int d = 0; d < 2; ++d) {
    for (int e = 0; e < 2; ++e) {
      double r1_sum = 0.0;
      for (int u = 0; u < k; ++u) {
        law.deu_r0(d, e, u) = joint.at(d, e, u, 0);
        r1_sum += joint.at(d, e, u, 1);
      }
      law.p_de_r1[d][e] = r1_sum;
    }
  }
  return law;
}

void validate_law(const ObservedLaw& law) {
  const int k = law.u_card;
  if (k < 1) throw InvalidProbability("u_card must be >= 1");
  if (static_cast<int>(law.p_deu_r0.size()) != 2 * 2 * k) {
    throw InvalidProbability("p_deu_r0 size does not match u_card");
  }
  double total = 0.0;
  for (double v : law.p_deu_r0) {
    if (v < 0.0) throw InvalidProbability("negative entry in p_deu_r0");
    if (v <= kStructuralTol) {
      throw PositivityViolation("p_deu_r0 cell = " + std::to_string(v));
    }
    total += v;
  }
  for (int d = 0; d < 2; ++d) {
    for (int e = 0; e < 2; ++e) {
      const double v = law.p_de_r1[d][e];
      if (v < 0.0) throw InvalidProbability("negative entry in p_de_r1");
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw NotNormalized("law tables sum to " + std::to_string(total));
  }
}

double ObservedLaw::p_r0() const {
  double s = 0.0;
  for (double v : p_deu_r0) s += v;
  return s;
}

double ObservedLaw::p_r1() const {
  return p_de_r1[0][0] + p_de_r1[0][1] + p_de_r1[1][0] + p_de_r1[1][1];
}

double ObservedLaw::p_de_r0(int d, int e) const {
  double s = 0.0;
  for (int u = 0; u < u_card; ++u) s += deu_r0(d, e, u);
  return s;
}

double ObservedLaw::p_e_r0(int e) const {
  return p_de_r0(0, e) + p_de_r0(1, e);
}

double ObservedLaw::p_e_r1(int e) const {
  return p_de_r1[0][e] + p_de_r1[1][e];
}

double ObservedLaw::p_re(int r, int e) const {
  return r == 0 ? p_e_r0(e) : p_e_r1(e);
}

double ObservedLaw::p_d1_e(int e) const {
  return p_de_r0(1, e) + p_de_r1[1][e];
}

double ObservedLaw::p_d1_given_eur0(int e, int u) const {
  return deu_r0(1, e, u) / (deu_r0(0, e, u) + deu_r0(1, e, u));
}

double ObservedLaw::p_u_given_er0(int u, int e) const {
  return (deu_r0(0, e, u) + deu_r0(1, e, u)) / p_e_r0(e);
}

double ObservedLaw::p_u_given_r0(int u) const {
  double s = 0.0;
  for (int d = 0; d < 2; ++d)
    for (int e = 0; e < 2; ++e) s += deu_r0(d, e, u);
  return s / p_r0();
}

double ObservedLaw::p_d1_given_er1(int e) const {
  const double denom = p_e_r1(e);
  if (denom <= kStructuralTol) {
    throw ZeroConditioningEvent("p(E=" + std::to_string(e) + ",R=1) ~ 0");
  }
  return p_de_r1[1][e] / denom;
}

double ObservedLaw::p_de_given_r1(int d, int e) const {
  const double denom = p_r1();
  if (denom <= kStructuralTol) {
    throw ZeroConditioningEvent("p(R=1) ~ 0");
  }
  return p_de_r1[d][e] / denom;
}

double ObservedLaw::p_u_given_der0(int u, int d, int e) const {
  const double denom = p_de_r0(d, e);
  if (denom <= kStructuralTol) {
    throw ZeroConditioningEvent("p(D=" + std::to_string(d) +
                                ",E=" + std::to_string(e) + ",R=0) ~ 0");
  }
  return deu_r0(d, e, u) / denom;
}

double ObservedLaw::adjusted_other_arm(int e) const {
  double s = 0.0;
  for (int u = 0; u < u_card; ++u) {
    s += p_d1_given_eur0(e, u) * p_u_given_er0(u, 1 - e);
  }
  return s;
}

double ObservedLaw::stratum_sum(int e) const {
  double s = 0.0;
  for (int u = 0; u < u_card; ++u) s += p_d1_given_eur0(e, u);
  return s;
}

CausalModel example_model() {
  CausalModel model;
  model.u_card = 3;
  model.p_u = {0.4, 0.5, 0.1};
  model.p_e1_given_u = {0.3, 0.1, 0.2};
  model.p_d1_given_eu = {{{0.1, 0.9, 0.7}, {0.8, 0.3, 0.2}}};
  model.p_r1_given_eu = {{{0.1, 0.95, 0.85}, {0.2, 0.8, 0.9}}};
  return model;
}

}  // namespace mnar
