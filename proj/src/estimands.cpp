#include "mnar/estimands.hpp"

#include <cmath>
#include <limits>

namespace mnar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double odds(double p) { return p == 1.0 ? kInf : p / (1.0 - p); }

}  // namespace

const char* contrast_name(ContrastKind kind) {
  switch (kind) {
    case ContrastKind::RiskRatio: return "risk_ratio";
    case ContrastKind::RiskDifference: return "risk_difference";
    case ContrastKind::OddsRatio: return "odds_ratio";
    case ContrastKind::OddsDifference: return "odds_difference";
  }
  return "?";
}

ContrastKind parse_contrast(const std::string& name) {
  if (name == "rr" || name == "risk_ratio") return ContrastKind::RiskRatio;
  if (name == "rd" || name == "risk_difference")
    return ContrastKind::RiskDifference;
  if (name == "or" || name == "odds_ratio") return ContrastKind::OddsRatio;
  if (name == "od" || name == "odds_difference")
    return ContrastKind::OddsDifference;
  throw ParseError("unknown contrast '" + name + "' (expected rr/rd/or/od)");
}

double contrast(ContrastKind kind, double p1, double p0) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p0 >= 0.0 && p0 <= 1.0)) {
    throw InvalidProbability("contrast arguments outside [0,1]");
  }
  switch (kind) {
    case ContrastKind::RiskRatio:
      if (p0 == 0.0) {
        if (p1 == 0.0) throw UndefinedContrast("risk ratio 0/0");
        return kInf;
      }
      return p1 / p0;
    case ContrastKind::RiskDifference:
      return p1 - p0;
    case ContrastKind::OddsRatio: {
      const double o1 = odds(p1);
      const double o0 = odds(p0);
      if (std::isinf(o1) && std::isinf(o0))
        throw UndefinedContrast("odds ratio inf/inf");
      if (std::isinf(o1)) return kInf;
      if (std::isinf(o0)) return 0.0;
      if (o0 == 0.0) {
        if (o1 == 0.0) throw UndefinedContrast("odds ratio 0/0");
        return kInf;
      }
      return o1 / o0;
    }
    case ContrastKind::OddsDifference: {
      const double o1 = odds(p1);
      const double o0 = odds(p0);
      if (std::isinf(o1) && std::isinf(o0))
        throw UndefinedContrast("odds difference inf-inf");
      if (std::isinf(o1)) return kInf;
      if (std::isinf(o0)) return -kInf;
      return o1 - o0;
    }
  }
  throw UndefinedContrast("unreachable");
}

double true_potential(const CausalModel& model, int e) {
  double s = 0.0;
  for (int u = 0; u < model.u_card; ++u) {
    s += model.p_d1_given_eu[e][u] * model.p_u[u];
  }
  return s;
}

double complete_case(const ObservedLaw& law, int e) {
  double s = 0.0;
  for (int u = 0; u < law.u_card; ++u) {
    s += law.p_d1_given_eur0(e, u) * law.p_u_given_r0(u);
  }
  return s;
}

std::vector<double> mi_weights(const ObservedLaw& law) {
  const double r0 = law.p_r0();
  const double r1 = law.p_r1();
  std::vector<double> q(static_cast<std::size_t>(law.u_card), 0.0);
  for (int u = 0; u < law.u_card; ++u) {
    q[static_cast<std::size_t>(u)] = law.p_u_given_r0(u) * r0;
  }
  if (r1 > kStructuralTol) {
    for (int d = 0; d < 2; ++d) {
      for (int e = 0; e < 2; ++e) {
        const double w = law.p_de_given_r1(d, e);
        if (w == 0.0) continue;
        for (int u = 0; u < law.u_card; ++u) {
          q[static_cast<std::size_t>(u)] += r1 * law.p_u_given_der0(u, d, e) * w;
        }
      }
    }
  }
  return q;
}

double multiple_imputation(const ObservedLaw& law, int e) {
  const std::vector<double> q = mi_weights(law);
  double s = 0.0;
  for (int u = 0; u < law.u_card; ++u) {
    s += law.p_d1_given_eur0(e, u) * q[static_cast<std::size_t>(u)];
  }
  return s;
}

double fusion_estimate(const ObservedLaw& law,
                       const std::array<std::vector<double>, 2>& p_u_given_e,
                       int e) {
  for (int a = 0; a < 2; ++a) {
    if (static_cast<int>(p_u_given_e[a].size()) != law.u_card) {
      throw InvalidProbability("auxiliary table row length mismatch");
    }
    double row = 0.0;
    for (double v : p_u_given_e[a]) {
      if (!(v >= 0.0 && v <= 1.0))
        throw InvalidProbability("auxiliary table entry outside [0,1]");
      row += v;
    }
    if (std::abs(row - 1.0) > kStructuralTol) {
      throw NotNormalized("auxiliary p(U|E=" + std::to_string(a) +
                          ") sums to " + std::to_string(row));
    }
  }
  // Auxiliary p(U|E=1-e) stands in for p(U|E=1-e,R=1) in the R=1 term.
  double imputed = 0.0;
  for (int u = 0; u < law.u_card; ++u) {
    imputed += law.p_d1_given_eur0(e, u) * p_u_given_e[1 - e][u];
  }
  return law.p_d1_e(e) + law.adjusted_other_arm(e) * law.p_re(0, 1 - e) +
         law.p_re(1, 1 - e) * imputed;
}

}  // namespace mnar
