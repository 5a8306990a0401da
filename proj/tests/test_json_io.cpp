#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "mnar/json_io.hpp"
#include "mnar/sim_harness.hpp"
#include "test_util.hpp"

using namespace mnar;
using nlohmann::json;

TEST_CASE("model JSON round trip is exact") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const CausalModel model = sample_model(51, i, 3, Mechanism::MNAR);
    const CausalModel back =
        model_from_json(json::parse(model_to_json(model).dump()));
    CHECK(back.p_u == model.p_u);
    CHECK(back.p_e1_given_u == model.p_e1_given_u);
    CHECK(back.p_d1_given_eu == model.p_d1_given_eu);
    CHECK(back.p_r1_given_eu == model.p_r1_given_eu);
  }
}

TEST_CASE("law JSON round trip is exact") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const ObservedLaw law = observed_law(sample_model(52, i, 4, Mechanism::MNAR));
    const ObservedLaw back = law_from_json(json::parse(law_to_json(law).dump()));
    CHECK(back.p_deu_r0 == law.p_deu_r0);
    CHECK(back.p_de_r1 == law.p_de_r1);
  }
}

TEST_CASE("params JSON round trip") {
  const SensitivityParams p = true_sensitivity_params(example_model());
  const SensitivityParams back =
      params_from_json(json::parse(params_to_json(p).dump()));
  CHECK(back.alpha == p.alpha);
  CHECK(back.beta == p.beta);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(model_from_json(json{{"u_card", 3}}), ParseError);
  CHECK_THROWS_AS(law_from_json(json{{"u_card", 3}}), ParseError);
  CHECK_THROWS_AS(params_from_json(json{{"alpha", {0.1}}}), ParseError);
  CHECK_THROWS_AS(aux_table_from_json(json{{"rows", 2}}), ParseError);
}

TEST_CASE("load_law_file accepts both forms") {
  const CausalModel model = example_model();
  const ObservedLaw expect = observed_law(model);

  const char* model_path = "test_model_tmp.json";
  const char* law_path = "test_law_tmp.json";
  {
    std::ofstream(model_path) << model_to_json(model).dump();
    std::ofstream(law_path) << law_to_json(expect).dump();
  }
  bool had_model = false;
  const ObservedLaw from_model = load_law_file(model_path, nullptr, &had_model);
  CHECK(had_model);
  CHECK(from_model.p_deu_r0 == expect.p_deu_r0);
  const ObservedLaw from_law = load_law_file(law_path, nullptr, &had_model);
  CHECK_FALSE(had_model);
  CHECK(from_law.p_de_r1 == expect.p_de_r1);
  CHECK_THROWS_AS(load_law_file("does_not_exist.json", nullptr, nullptr),
                  ParseError);
  std::remove(model_path);
  std::remove(law_path);
}
