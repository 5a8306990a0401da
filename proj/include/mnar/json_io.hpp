#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mnar/prob_core.hpp"
#include "mnar/sensitivity.hpp"

namespace mnar {

// JSON schemas:
//   model: u_card, p_u, p_e1_given_u, p_d1_given_eu, p_r1_given_eu
//          (matrices as nested arrays, e outer)
//   law:   u_card, p_deu_r0 (nested [d][e][u]), p_de_r1 ([d][e])
//   params: alpha [a0,a1], beta [b0,b1]
//   auxiliary: p_u_given_e (nested [e][u])

nlohmann::json model_to_json(const CausalModel& model);
CausalModel model_from_json(const nlohmann::json& j);

nlohmann::json law_to_json(const ObservedLaw& law);
ObservedLaw law_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const SensitivityParams& params);
SensitivityParams params_from_json(const nlohmann::json& j);

std::array<std::vector<double>, 2> aux_table_from_json(const nlohmann::json& j);

// Reads a JSON file holding either a model or a law (detected by keys);
// a model is converted via observed_law. Throws ParseError on anything
// else; `had_model` reports which form was found.
ObservedLaw load_law_file(const std::string& path, CausalModel* model_out,
                          bool* had_model);

nlohmann::json load_json_file(const std::string& path);

}  // namespace mnar
