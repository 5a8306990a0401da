#include "mnar/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <thread>

#include "mnar/af_bounds.hpp"

namespace mnar {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t draw_seed(std::uint64_t master_seed, std::uint64_t draw_index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(draw_index));
}

bool positivity_ok(const CausalModel& model) {
  for (int d = 0; d < 2; ++d) {
    for (int e = 0; e < 2; ++e) {
      for (int u = 0; u < model.u_card; ++u) {
        const double pe =
            e == 1 ? model.p_e1_given_u[u] : 1.0 - model.p_e1_given_u[u];
        const double pd = d == 1 ? model.p_d1_given_eu[e][u]
                                 : 1.0 - model.p_d1_given_eu[e][u];
        const double cell =
            model.p_u[u] * pe * pd * (1.0 - model.p_r1_given_eu[e][u]);
        if (cell <= kStructuralTol) return false;
      }
    }
  }
  return true;
}

double null_value(ContrastKind kind) {
  return (kind == ContrastKind::RiskRatio || kind == ContrastKind::OddsRatio)
             ? 1.0
             : 0.0;
}

// Splits [0, n) into per-thread ranges; Acc must be default-constructible
// and combinable via merge(). Counts are integers, so aggregation is
// independent of scheduling.
template <typename Acc, typename Body>
Acc parallel_draws(std::int64_t n, int threads, const Body& body) {
  int nthreads = threads > 0
                     ? threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, 64));
  if (n < 1024) nthreads = 1;

  std::vector<Acc> accs(static_cast<std::size_t>(nthreads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  const std::int64_t chunk = (n + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    const std::int64_t lo = t * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&body, &accs, t, lo, hi] {
      for (std::int64_t i = lo; i < hi; ++i) {
        body(static_cast<std::uint64_t>(i), accs[static_cast<std::size_t>(t)]);
      }
    });
  }
  for (auto& th : pool) th.join();
  Acc total;
  for (const Acc& a : accs) total.merge(a);
  return total;
}

std::string format_rows(const char* fmt, double a, double b, double c,
                        double d) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

}  // namespace

const char* mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::MCAR: return "MCAR";
    case Mechanism::MAR: return "MAR";
    case Mechanism::MNAR: return "MNAR";
    case Mechanism::MNARex: return "MNARex";
  }
  return "?";
}

Mechanism parse_mechanism(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(c));
  if (s == "mcar") return Mechanism::MCAR;
  if (s == "mar") return Mechanism::MAR;
  if (s == "mnar") return Mechanism::MNAR;
  if (s == "mnarex") return Mechanism::MNARex;
  throw ParseError("unknown mechanism '" + name + "'");
}

CausalModel sample_model(std::uint64_t master_seed, std::uint64_t draw_index,
                         int u_card, Mechanism mechanism) {
  if (u_card < 2) throw InvalidProbability("u_card must be >= 2");
  if (mechanism == Mechanism::MNARex && u_card != 3) {
    throw InvalidProbability("MNARex requires u_card = 3");
  }
  std::mt19937_64 rng(draw_seed(master_seed, draw_index));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  CausalModel model;
  model.u_card = u_card;
  const auto k = static_cast<std::size_t>(u_card);
  model.p_u.resize(k);
  model.p_e1_given_u.resize(k);
  for (auto& row : model.p_d1_given_eu) row.resize(k);
  for (auto& row : model.p_r1_given_eu) row.resize(k);

  do {
    double sum = 0.0;
    for (auto& v : model.p_u) {
      v = unif(rng);
      sum += v;
    }
    for (auto& v : model.p_u) v /= sum;
    for (auto& v : model.p_e1_given_u) v = unif(rng);
    for (auto& row : model.p_d1_given_eu)
      for (auto& v : row) v = unif(rng);
    switch (mechanism) {
      case Mechanism::MNAR:
        for (auto& row : model.p_r1_given_eu)
          for (auto& v : row) v = unif(rng);
        break;
      case Mechanism::MAR:
        for (auto& row : model.p_r1_given_eu) {
          const double v = unif(rng);
          std::fill(row.begin(), row.end(), v);
        }
        break;
      case Mechanism::MCAR: {
        const double v = unif(rng);
        for (auto& row : model.p_r1_given_eu)
          std::fill(row.begin(), row.end(), v);
        break;
      }
      case Mechanism::MNARex:
        model.p_r1_given_eu = {{{0.1, 0.95, 0.85}, {0.2, 0.8, 0.9}}};
        break;
    }
  } while (!positivity_ok(model));
  return model;
}

ClassificationFlags classify(const CausalModel& model, const SimConfig& config) {
  const ObservedLaw law = observed_law(model);
  const ContrastKind kind = config.contrast;
  const double c_true = contrast(kind, true_potential(model, 1),
                                 true_potential(model, 0));
  const Interval af = contrast_bounds(law, kind);
  if (c_true < af.lb - kDerivedTol || c_true > af.ub + kDerivedTol) {
    throw std::logic_error("assumption-free bounds missed the true contrast");
  }
  const double c_cc = contrast(kind, complete_case(law, 1),
                               complete_case(law, 0));
  const double c_mi = contrast(kind, multiple_imputation(law, 1),
                               multiple_imputation(law, 0));
  const double null = null_value(kind);

  ClassificationFlags flags;
  auto fill = [&](double c_m, MethodFlags& out) {
    out.biased =
        std::abs(c_m - c_true) > config.bias_tol * std::max(1.0, std::abs(c_true));
    out.wrong_log_sign = (c_m - null) * (c_true - null) < 0.0;
    out.out_of_bounds =
        c_m < af.lb - kStructuralTol || c_m > af.ub + kStructuralTol;
    out.both = out.wrong_log_sign && out.out_of_bounds;
  };
  fill(c_cc, flags.cc);
  fill(c_mi, flags.mi);
  return flags;
}

namespace {

struct Table1Acc {
  std::int64_t cc[4] = {0, 0, 0, 0};
  std::int64_t mi[4] = {0, 0, 0, 0};
  void merge(const Table1Acc& o) {
    for (int i = 0; i < 4; ++i) {
      cc[i] += o.cc[i];
      mi[i] += o.mi[i];
    }
  }
};

}  // namespace

std::vector<Table1Row> run_table1(const SimConfig& config,
                                  const std::vector<Mechanism>& mechanisms) {
  std::vector<Table1Row> rows;
  for (Mechanism mech : mechanisms) {
    SimConfig local = config;
    local.mechanism = mech;
    const Table1Acc acc = parallel_draws<Table1Acc>(
        config.n_draws, config.threads,
        [&local, mech](std::uint64_t i, Table1Acc& a) {
          const CausalModel model =
              sample_model(local.master_seed, i, local.u_card, mech);
          const ClassificationFlags f = classify(model, local);
          a.cc[0] += f.cc.biased;
          a.cc[1] += f.cc.wrong_log_sign;
          a.cc[2] += f.cc.out_of_bounds;
          a.cc[3] += f.cc.both;
          a.mi[0] += f.mi.biased;
          a.mi[1] += f.mi.wrong_log_sign;
          a.mi[2] += f.mi.out_of_bounds;
          a.mi[3] += f.mi.both;
        });
    const double n = static_cast<double>(config.n_draws);
    rows.push_back({mech, "CC", 100.0 * acc.cc[0] / n, 100.0 * acc.cc[1] / n,
                    100.0 * acc.cc[2] / n, 100.0 * acc.cc[3] / n});
    rows.push_back({mech, "MI", 100.0 * acc.mi[0] / n, 100.0 * acc.mi[1] / n,
                    100.0 * acc.mi[2] / n, 100.0 * acc.mi[3] / n});
  }
  return rows;
}

namespace {

struct Table2Acc {
  std::vector<std::int64_t> counts;  // 4 per factor
  std::int64_t excluded = 0;
  std::int64_t counted = 0;
  void merge(const Table2Acc& o) {
    if (counts.empty()) counts.assign(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    excluded += o.excluded;
    counted += o.counted;
  }
};

}  // namespace

std::vector<Table2Row> run_table2(const SimConfig& config,
                                  const std::vector<double>& factors) {
  const std::size_t nf = factors.size();
  Table2Acc total = parallel_draws<Table2Acc>(
      config.n_draws, config.threads,
      [&config, &factors, nf](std::uint64_t i, Table2Acc& a) {
        if (a.counts.empty()) a.counts.assign(nf * 4, 0);
        const CausalModel model =
            sample_model(config.master_seed, i, config.u_card, Mechanism::MNAR);
        const ObservedLaw law = observed_law(model);
        for (int e = 0; e < 2; ++e) {
          if (law.p_e_r1(e) <= kStructuralTol) {
            ++a.excluded;
            return;
          }
        }
        const ContrastKind kind = config.contrast;
        const double c_true = contrast(kind, true_potential(model, 1),
                                       true_potential(model, 0));
        const Interval af = contrast_bounds(law, kind);
        const SensitivityParams truth = true_sensitivity_params(model);
        ++a.counted;
        for (std::size_t j = 0; j < nf; ++j) {
          const double f = factors[j];
          const SensitivityParams params = analyst_params(truth, f);
          const Interval sa = sa_contrast_bounds(law, kind, params);
          const bool included =
              c_true >= sa.lb - kDerivedTol && c_true <= sa.ub + kDerivedTol;
          if (f >= 1.0 && !included) {
            throw std::logic_error(
                "conservative analyst bounds missed the true contrast");
          }
          const bool lbn = sa.lb > af.lb + kStructuralTol;
          const bool ubn = sa.ub < af.ub - kStructuralTol;
          a.counts[j * 4 + 0] += included;
          a.counts[j * 4 + 1] += lbn;
          a.counts[j * 4 + 2] += ubn;
          a.counts[j * 4 + 3] += lbn && ubn;
        }
      });

  std::vector<Table2Row> rows;
  const double n = static_cast<double>(std::max<std::int64_t>(1, total.counted));
  if (total.counts.empty()) total.counts.assign(nf * 4, 0);
  for (std::size_t j = 0; j < nf; ++j) {
    rows.push_back({factors[j], 100.0 * total.counts[j * 4 + 0] / n,
                    100.0 * total.counts[j * 4 + 1] / n,
                    100.0 * total.counts[j * 4 + 2] / n,
                    100.0 * total.counts[j * 4 + 3] / n, total.excluded});
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "mechanism,method,biased,wrong_log_sign,out_bounds,both\n";
  for (const Table1Row& r : rows) {
    out += mechanism_name(r.mechanism);
    out += ',';
    out += r.method;
    out += ',';
    out += format_rows("%.6f,%.6f,%.6f,%.6f\n", r.biased, r.wrong_log_sign,
                       r.out_bounds, r.both);
  }
  return out;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::string out = "factor,included,lb_narrower,ub_narrower,both_narrower\n";
  for (const Table2Row& r : rows) {
    char head[32];
    std::snprintf(head, sizeof(head), "%g,", r.factor);
    out += head;
    out += format_rows("%.6f,%.6f,%.6f,%.6f\n", r.included, r.lb_narrower,
                       r.ub_narrower, r.both_narrower);
  }
  return out;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::string out =
      "Missingness  Method   Biased  Wrong log-sign  Out bounds    Both\n";
  for (const Table1Row& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %-6s %8.1f %15.1f %11.1f %7.1f\n",
                  mechanism_name(r.mechanism), r.method.c_str(), r.biased,
                  r.wrong_log_sign, r.out_bounds, r.both);
    out += buf;
  }
  return out;
}

std::string table2_text(const std::vector<Table2Row>& rows) {
  std::string out =
      "Factor   Included  LB narrower  UB narrower  Both narrower\n";
  for (const Table2Row& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-8g %8.1f %12.1f %12.1f %14.1f\n",
                  r.factor, r.included, r.lb_narrower, r.ub_narrower,
                  r.both_narrower);
    out += buf;
  }
  return out;
}

}  // namespace mnar
