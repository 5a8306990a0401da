#include "mnar/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace mnar {

using nlohmann::json;

namespace {

std::vector<double> vec_from(const json& j, const char* key, int expect) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ParseError(std::string("missing or non-array field '") + key + "'");
  }
  std::vector<double> out = j[key].get<std::vector<double>>();
  if (expect >= 0 && static_cast<int>(out.size()) != expect) {
    throw ParseError(std::string("field '") + key + "' has wrong length");
  }
  return out;
}

std::array<std::vector<double>, 2> mat_from(const json& j, const char* key,
                                            int cols) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
    throw ParseError(std::string("field '") + key +
                     "' must be an array of two rows");
  }
  std::array<std::vector<double>, 2> out;
  for (int e = 0; e < 2; ++e) {
    out[e] = j[key][e].get<std::vector<double>>();
    if (static_cast<int>(out[e].size()) != cols) {
      throw ParseError(std::string("row of '") + key + "' has wrong length");
    }
  }
  return out;
}

}  // namespace

json model_to_json(const CausalModel& model) {
  return json{{"u_card", model.u_card},
              {"p_u", model.p_u},
              {"p_e1_given_u", model.p_e1_given_u},
              {"p_d1_given_eu",
               {model.p_d1_given_eu[0], model.p_d1_given_eu[1]}},
              {"p_r1_given_eu",
               {model.p_r1_given_eu[0], model.p_r1_given_eu[1]}}};
}

CausalModel model_from_json(const json& j) {
  CausalModel model;
  try {
    model.u_card = j.at("u_card").get<int>();
    model.p_u = vec_from(j, "p_u", model.u_card);
    model.p_e1_given_u = vec_from(j, "p_e1_given_u", model.u_card);
    model.p_d1_given_eu = mat_from(j, "p_d1_given_eu", model.u_card);
    model.p_r1_given_eu = mat_from(j, "p_r1_given_eu", model.u_card);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad model JSON: ") + ex.what());
  }
  return model;
}

json law_to_json(const ObservedLaw& law) {
  json r0 = json::array();
  for (int d = 0; d < 2; ++d) {
    json by_e = json::array();
    for (int e = 0; e < 2; ++e) {
      json by_u = json::array();
      for (int u = 0; u < law.u_card; ++u) by_u.push_back(law.deu_r0(d, e, u));
      by_e.push_back(std::move(by_u));
    }
    r0.push_back(std::move(by_e));
  }
  json r1 = json::array();
  for (int d = 0; d < 2; ++d) {
    r1.push_back(json::array({law.p_de_r1[d][0], law.p_de_r1[d][1]}));
  }
  return json{{"u_card", law.u_card}, {"p_deu_r0", std::move(r0)},
              {"p_de_r1", std::move(r1)}};
}

ObservedLaw law_from_json(const json& j) {
  ObservedLaw law;
  try {
    law.u_card = j.at("u_card").get<int>();
    const json& r0 = j.at("p_deu_r0");
    if (!r0.is_array() || r0.size() != 2) {
      throw ParseError("p_deu_r0 must have d as the outermost index");
    }
    law.p_deu_r0.assign(static_cast<std::size_t>(2 * 2 * law.u_card), 0.0);
    for (int d = 0; d < 2; ++d) {
      for (int e = 0; e < 2; ++e) {
        const auto row = r0[d][e].get<std::vector<double>>();
        if (static_cast<int>(row.size()) != law.u_card) {
          throw ParseError("p_deu_r0 row has wrong length");
        }
        for (int u = 0; u < law.u_card; ++u) law.deu_r0(d, e, u) = row[u];
      }
    }
    const json& r1 = j.at("p_de_r1");
    for (int d = 0; d < 2; ++d) {
      for (int e = 0; e < 2; ++e) {
        law.p_de_r1[d][e] = r1.at(d).at(e).get<double>();
      }
    }
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad law JSON: ") + ex.what());
  }
  return law;
}

json params_to_json(const SensitivityParams& params) {
  return json{{"alpha", {params.alpha[0], params.alpha[1]}},
              {"beta", {params.beta[0], params.beta[1]}}};
}

SensitivityParams params_from_json(const json& j) {
  SensitivityParams params;
  try {
    const auto a = vec_from(j, "alpha", 2);
    const auto b = vec_from(j, "beta", 2);
    params.alpha = {a[0], a[1]};
    params.beta = {b[0], b[1]};
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad params JSON: ") + ex.what());
  }
  return params;
}

std::array<std::vector<double>, 2> aux_table_from_json(const json& j) {
  try {
    if (!j.contains("p_u_given_e")) {
      throw ParseError("auxiliary file needs a 'p_u_given_e' table");
    }
    const json& t = j["p_u_given_e"];
    if (!t.is_array() || t.size() != 2) {
      throw ParseError("p_u_given_e must have two rows (e=0, e=1)");
    }
    return {t[0].get<std::vector<double>>(), t[1].get<std::vector<double>>()};
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad auxiliary JSON: ") + ex.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParseError("cannot parse '" + path + "': " + ex.what());
  }
  return j;
}

ObservedLaw load_law_file(const std::string& path, CausalModel* model_out,
                          bool* had_model) {
  const json j = load_json_file(path);
  if (j.contains("p_deu_r0")) {
    if (had_model) *had_model = false;
    ObservedLaw law = law_from_json(j);
    validate_law(law);
    return law;
  }
  if (j.contains("p_d1_given_eu")) {
    CausalModel model = model_from_json(j);
    validate_model(model);
    if (model_out) *model_out = model;
    if (had_model) *had_model = true;
    return observed_law(model);
  }
  throw ParseError("'" + path + "' is neither a model nor a law file");
}

}  // namespace mnar
