#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mnar/estimands.hpp"
#include "mnar/prob_core.hpp"
#include "mnar/sensitivity.hpp"

namespace mnar {

// MNARex keeps p(R|E,U) fixed to the worked example's ternary table.
enum class Mechanism { MCAR, MAR, MNAR, MNARex };

const char* mechanism_name(Mechanism m);
Mechanism parse_mechanism(const std::string& name);

struct SimConfig {
  std::int64_t n_draws = 100000;
  int u_card = 3;
  Mechanism mechanism = Mechanism::MNAR;
  std::uint64_t master_seed = 0;
  ContrastKind contrast = ContrastKind::RiskRatio;
  double bias_tol = 1e-9;  // relative
  int threads = 0;         // 0 = hardware concurrency
};

// Deterministic in (master_seed, draw_index, u_card, mechanism): every
// parameter is drawn Uniform[0,1] from a per-draw substream; p(U) is K
// iid uniforms normalized by their sum; positivity violations resample.
CausalModel sample_model(std::uint64_t master_seed, std::uint64_t draw_index,
                         int u_card, Mechanism mechanism);

struct MethodFlags {
  bool biased = false;
  bool wrong_log_sign = false;
  bool out_of_bounds = false;
  bool both = false;  // wrong_log_sign AND out_of_bounds
};

struct ClassificationFlags {
  MethodFlags cc;
  MethodFlags mi;
};

ClassificationFlags classify(const CausalModel& model, const SimConfig& config);

struct Table1Row {
  Mechanism mechanism{};
  std::string method;  // "CC" or "MI"
  double biased = 0.0;
  double wrong_log_sign = 0.0;
  double out_bounds = 0.0;
  double both = 0.0;
};

std::vector<Table1Row> run_table1(const SimConfig& config,
                                  const std::vector<Mechanism>& mechanisms);

struct Table2Row {
  double factor = 0.0;
  double included = 0.0;
  double lb_narrower = 0.0;
  double ub_narrower = 0.0;
  double both_narrower = 0.0;
  std::int64_t excluded = 0;  // draws with a vacuous p(E=e,R=1)
};

std::vector<Table2Row> run_table2(const SimConfig& config,
                                  const std::vector<double>& factors);

std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table2_csv(const std::vector<Table2Row>& rows);
std::string table1_text(const std::vector<Table1Row>& rows);
std::string table2_text(const std::vector<Table2Row>& rows);

}  // namespace mnar
