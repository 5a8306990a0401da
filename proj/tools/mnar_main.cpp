#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mnar/af_bounds.hpp"
#include "mnar/estimands.hpp"
#include "mnar/json_io.hpp"
#include "mnar/prob_core.hpp"
#include "mnar/sensitivity.hpp"
#include "mnar/sim_harness.hpp"

namespace {

using nlohmann::json;

json num(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json interval_json(const mnar::Interval& iv) {
  return json{{"lb", num(iv.lb)}, {"ub", num(iv.ub)}};
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mnar::ParseError("cannot write '" + path + "'");
  out << content;
}

int default_threads() {
  if (const char* env = std::getenv("MNAR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library picks hardware concurrency
}

void print_pair(const char* label, double value) {
  std::printf("%-28s %.6f  (%.2f)\n", label, value, value);
}

int cmd_example(mnar::ContrastKind kind, bool as_json) {
  const mnar::CausalModel model = mnar::example_model();
  const mnar::ObservedLaw law = mnar::observed_law(model);
  const double p1 = mnar::true_potential(model, 1);
  const double p0 = mnar::true_potential(model, 0);
  const double c_true = mnar::contrast(kind, p1, p0);
  const double c_cc = mnar::contrast(kind, mnar::complete_case(law, 1),
                                     mnar::complete_case(law, 0));
  const double c_mi = mnar::contrast(kind, mnar::multiple_imputation(law, 1),
                                     mnar::multiple_imputation(law, 0));
  const mnar::Interval af = mnar::contrast_bounds(law, kind);
  if (as_json) {
    json out{{"contrast", mnar::contrast_name(kind)},
             {"true", num(c_true)},
             {"complete_case", num(c_cc)},
             {"multiple_imputation", num(c_mi)},
             {"af_bounds", interval_json(af)},
             {"model", mnar::model_to_json(model)},
             {"law", mnar::law_to_json(law)}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::printf("contrast: %s\n", mnar::contrast_name(kind));
  print_pair("true", c_true);
  print_pair("complete case", c_cc);
  print_pair("multiple imputation", c_mi);
  std::printf("%-28s [%.6f, %.6f]  ([%.2f, %.2f])\n", "assumption-free bounds",
              af.lb, af.ub, af.lb, af.ub);
  return 0;
}

int cmd_sa_example(bool as_json) {
  const mnar::CausalModel model = mnar::example_model();
  const mnar::ObservedLaw law = mnar::observed_law(model);
  const auto kind = mnar::ContrastKind::RiskRatio;
  const mnar::SensitivityParams truth = mnar::true_sensitivity_params(model);
  const mnar::FeasibleRegion r0 = mnar::feasible_region(law, 0);
  const mnar::FeasibleRegion r1 = mnar::feasible_region(law, 1);
  const mnar::Interval at_truth = mnar::sa_contrast_bounds(law, kind, truth);
  // Risky point choice on the lower-bound surface.
  mnar::SensitivityParams risky = truth;
  risky.alpha[0] = 0.4;
  risky.beta[1] = 0.4;
  const mnar::Interval at_risky = mnar::sa_contrast_bounds(law, kind, risky);
  if (as_json) {
    json out{{"contrast", mnar::contrast_name(kind)},
             {"true_params", mnar::params_to_json(truth)},
             {"feasible_c", {r0.alpha_max, r1.alpha_max}},
             {"sa_bounds_at_true_params", interval_json(at_truth)},
             {"lower_bound_at_0.4_0.4", num(at_risky.lb)},
             {"model", mnar::model_to_json(model)},
             {"law", mnar::law_to_json(law)}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::printf("contrast: %s\n", mnar::contrast_name(kind));
  std::printf("true params  alpha(0)=%.6f (%.2f)  alpha(1)=%.6f (%.2f)\n",
              truth.alpha[0], truth.alpha[0], truth.alpha[1], truth.alpha[1]);
  std::printf("             beta(0)=%.6f (%.2f)   beta(1)=%.6f (%.2f)\n",
              truth.beta[0], truth.beta[0], truth.beta[1], truth.beta[1]);
  std::printf("feasible     c(0)=%.6f  c(1)=%.6f\n", r0.alpha_max, r1.alpha_max);
  std::printf("SA bounds at true params     [%.6f, %.6f]  ([%.2f, %.2f])\n",
              at_truth.lb, at_truth.ub, at_truth.lb, at_truth.ub);
  std::printf("lower bound at alpha(0)=beta(1)=0.4: %.6f  (%.2f)\n",
              at_risky.lb, at_risky.lb);
  return 0;
}

int cmd_eval(const std::string& file, mnar::ContrastKind kind,
             const std::string& params_file, bool as_json) {
  mnar::CausalModel model;
  bool had_model = false;
  const mnar::ObservedLaw law = mnar::load_law_file(file, &model, &had_model);
  const mnar::Interval af = mnar::contrast_bounds(law, kind);
  const double cc = mnar::contrast(kind, mnar::complete_case(law, 1),
                                   mnar::complete_case(law, 0));
  const double mi = mnar::contrast(kind, mnar::multiple_imputation(law, 1),
                                   mnar::multiple_imputation(law, 0));
  json out{{"contrast", mnar::contrast_name(kind)},
           {"af_bounds", interval_json(af)},
           {"complete_case", num(cc)},
           {"multiple_imputation", num(mi)}};
  if (had_model) {
    out["true"] = num(mnar::contrast(kind, mnar::true_potential(model, 1),
                                     mnar::true_potential(model, 0)));
  }
  if (!params_file.empty()) {
    const mnar::SensitivityParams params =
        mnar::params_from_json(mnar::load_json_file(params_file));
    mnar::validate_params(params);
    bool infeasible = false;
    for (int e = 0; e < 2; ++e) {
      const mnar::FeasibleRegion region = mnar::feasible_region(law, e);
      if (region.unconstrained) continue;
      if (params.alpha[e] > region.alpha_max + mnar::kStructuralTol ||
          params.beta[e] < region.beta_min - mnar::kStructuralTol) {
        infeasible = true;
        std::fprintf(stderr,
                     "warning: sensitivity params for e=%d outside feasible "
                     "region (c=%.6f)\n",
                     e, region.alpha_max);
      }
    }
    out["sa_bounds"] = interval_json(mnar::sa_contrast_bounds(law, kind, params));
    out["params_outside_feasible_region"] = infeasible;
  }
  if (as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::printf("contrast: %s\n", mnar::contrast_name(kind));
    std::printf("%-28s [%.6f, %.6f]\n", "assumption-free bounds", af.lb, af.ub);
    if (out.contains("sa_bounds")) {
      std::printf("%-28s [%s, %s]\n", "sensitivity bounds",
                  out["sa_bounds"]["lb"].dump().c_str(),
                  out["sa_bounds"]["ub"].dump().c_str());
    }
    print_pair("complete case", cc);
    print_pair("multiple imputation", mi);
    if (out.contains("true")) print_pair("true", out["true"].get<double>());
  }
  return 0;
}

int cmd_grid(const std::string& file, mnar::ContrastKind kind, int resolution,
             const std::string& lower_out, const std::string& upper_out) {
  const mnar::ObservedLaw law = mnar::load_law_file(file, nullptr, nullptr);
  const mnar::GridPair grids = mnar::sensitivity_grid(law, kind, resolution);
  std::ostringstream lo, hi;
  mnar::write_grid_csv(grids.lower, lo);
  mnar::write_grid_csv(grids.upper, hi);
  write_text(lower_out, lo.str());
  write_text(upper_out, hi.str());
  if (grids.lower.degenerate) {
    std::fprintf(stderr,
                 "note: a feasible region is vacuous; emitted degenerate "
                 "1x1 grids with the exact bounds\n");
  }
  return 0;
}

int cmd_simulate(const mnar::SimConfig& config,
                 const std::vector<std::string>& mech_names,
                 const std::string& out_path, bool text) {
  std::vector<mnar::Mechanism> mechanisms;
  for (const std::string& m : mech_names)
    mechanisms.push_back(mnar::parse_mechanism(m));
  const std::vector<mnar::Table1Row> rows = mnar::run_table1(config, mechanisms);
  write_text(out_path, mnar::table1_csv(rows));
  if (text) std::cout << mnar::table1_text(rows);
  return 0;
}

int cmd_sa_simulate(const mnar::SimConfig& config,
                    const std::vector<double>& factors,
                    const std::string& out_path, bool text) {
  const std::vector<mnar::Table2Row> rows = mnar::run_table2(config, factors);
  write_text(out_path, mnar::table2_csv(rows));
  if (text) std::cout << mnar::table2_text(rows);
  if (!rows.empty() && rows.front().excluded > 0) {
    std::fprintf(stderr, "note: %lld draws excluded (vacuous p(E=e,R=1))\n",
                 static_cast<long long>(rows.front().excluded));
  }
  return 0;
}

int cmd_fuse(const std::string& law_file, const std::string& aux_file,
             mnar::ContrastKind kind, bool as_json) {
  const mnar::ObservedLaw law = mnar::load_law_file(law_file, nullptr, nullptr);
  const auto aux = mnar::aux_table_from_json(mnar::load_json_file(aux_file));
  const double p1 = mnar::fusion_estimate(law, aux, 1);
  const double p0 = mnar::fusion_estimate(law, aux, 0);
  const double c = mnar::contrast(kind, p1, p0);
  if (as_json) {
    json out{{"contrast", mnar::contrast_name(kind)},
             {"potential_e1", num(p1)},
             {"potential_e0", num(p0)},
             {"estimate", num(c)}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::printf("fusion p(D_1=1)=%.6f  p(D_0=1)=%.6f  %s=%.6f\n", p1, p0,
                mnar::contrast_name(kind), c);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-identification bounds and sensitivity analysis for "
               "causal contrasts under outcome-independent MNAR confounding"};
  app.require_subcommand(1);

  std::string contrast_name = "rr";
  bool as_json = false;
  std::string input_file, params_file, aux_file, out_path;
  std::string lower_out = "lower.csv", upper_out = "upper.csv";
  int resolution = 101;
  bool text = false;
  mnar::SimConfig config;
  config.threads = default_threads();
  std::vector<std::string> mech_names = {"mcar", "mar", "mnar", "mnarex"};
  std::vector<double> factors = {0.9, 1.0, 1.1, 1.2};

  auto add_contrast = [&](CLI::App* sub) {
    sub->add_option("--contrast", contrast_name, "rr, rd, or, od");
  };

  CLI::App* example = app.add_subcommand(
      "example", "Built-in worked example: naive pseudo-estimands vs bounds");
  add_contrast(example);
  example->add_flag("--json", as_json, "machine-readable report");

  CLI::App* sa_example = app.add_subcommand(
      "sa-example", "Built-in worked example: sensitivity analysis");
  sa_example->add_flag("--json", as_json, "machine-readable report");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a model or law file");
  eval->add_option("file", input_file, "model or law JSON")->required();
  add_contrast(eval);
  eval->add_option("--params", params_file, "sensitivity params JSON");
  eval->add_flag("--json", as_json, "machine-readable report");

  CLI::App* grid = app.add_subcommand("grid", "Sensitivity bound grids as CSV");
  grid->add_option("file", input_file, "model or law JSON")->required();
  add_contrast(grid);
  grid->add_option("--resolution", resolution, "points per axis (>= 2)");
  grid->add_option("--lower-out", lower_out, "lower-bound grid CSV path");
  grid->add_option("--upper-out", upper_out, "upper-bound grid CSV path");

  auto add_sim_flags = [&](CLI::App* sub) {
    sub->add_option("--n-draws", config.n_draws, "number of random models");
    sub->add_option("--seed", config.master_seed, "master seed");
    sub->add_option("--u-card", config.u_card, "confounder cardinality");
    sub->add_option("--threads", config.threads,
                    "worker threads (default MNAR_THREADS or hardware)");
    sub->add_option("--out", out_path, "CSV output path ('-' = stdout)");
    sub->add_flag("--text", text, "also print an aligned table");
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "Naive-method bias experiment");
  add_sim_flags(simulate);
  simulate->add_option("--mechanisms", mech_names,
                       "subset of mcar,mar,mnar,mnarex")
      ->delimiter(',');

  CLI::App* sa_simulate =
      app.add_subcommand("sa-simulate", "Analyst-factor experiment");
  add_sim_flags(sa_simulate);
  sa_simulate->add_option("--factors", factors, "analyst factors")
      ->delimiter(',');

  CLI::App* fuse = app.add_subcommand(
      "fuse", "Point estimate from a law plus an auxiliary p(U|E) table");
  fuse->add_option("law", input_file, "law JSON")->required();
  fuse->add_option("aux", aux_file, "auxiliary p(U|E) JSON")->required();
  add_contrast(fuse);
  fuse->add_flag("--json", as_json, "machine-readable report");

  try {
    app.parse(argc, argv);
    const mnar::ContrastKind kind = mnar::parse_contrast(contrast_name);
    if (example->parsed()) return cmd_example(kind, as_json);
    if (sa_example->parsed()) return cmd_sa_example(as_json);
    if (eval->parsed()) return cmd_eval(input_file, kind, params_file, as_json);
    if (grid->parsed())
      return cmd_grid(input_file, kind, resolution, lower_out, upper_out);
    if (simulate->parsed())
      return cmd_simulate(config, mech_names, out_path, text);
    if (sa_simulate->parsed())
      return cmd_sa_simulate(config, factors, out_path, text);
    if (fuse->parsed()) return cmd_fuse(input_file, aux_file, kind, as_json);
    return 1;
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex);
    return code == 0 ? 0 : 1;
  } catch (const mnar::Error& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "internal error: %s\n", ex.what());
    return 2;
  }
}
