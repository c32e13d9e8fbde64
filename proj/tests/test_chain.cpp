#include <doctest.h>

#include <cmath>

#include "chainspectra/chain.hpp"
#include "chainspectra/config.hpp"
#include "chainspectra/error.hpp"

using namespace chainspectra;

TEST_CASE("two-bond chain: betas, actions, vertex coefficients") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.75});
  CHECK(c.bonds() == 2);
  CHECK(c.beta(1) == 1.0);
  CHECK(c.beta(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.bond_action(2) == doctest::Approx(0.5));
  CHECK(c.total_action() == doctest::Approx(1.5).epsilon(1e-15));
  const auto v = c.vertex_coefficients(1);
  CHECK(v.r == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(v.t == doctest::Approx(std::sqrt(8.0) / 3.0).epsilon(1e-15));
  CHECK(v.r * v.r + v.t * v.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(c.vertex_coefficients(0), ValidationError);
  CHECK_THROWS_AS(c.vertex_coefficients(2), ValidationError);
}

TEST_CASE("chain validation rejects malformed geometry") {
  CHECK_THROWS_AS(Chain::build({0}, {}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0.5, 1}, {0}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, 1, 1}, {0, 0}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, 2, 1}, {0, 0}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, 1, 2}, {0}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, 1}, {1.0}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, 1}, {-0.1}), ValidationError);
  CHECK_THROWS_AS(Chain::build({0, NAN}, {0}), ValidationError);
  CHECK_THROWS_AS(Chain::from_betas({0, 1}, {0.0}), ValidationError);
  CHECK_NOTHROW(Chain::from_betas({0, 1}, {1.0}));
}

TEST_CASE("config parsing") {
  const Chain c = parse_chain_config(R"({"vertices": [0, 1, 2], "lambdas": [0, 0.75]})");
  CHECK(c.total_action() == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_chain_config("{"), ValidationError);
  CHECK_THROWS_AS(parse_chain_config(R"({"vertices": [0, 1]})"), ValidationError);
  CHECK_THROWS_AS(parse_chain_config(R"({"vertices": [0, 1], "lambdas": ["a"]})"), ValidationError);
  CHECK_THROWS_AS(parse_chain_config(R"({"vertices": [0, 1], "lambdas": [0], "extra": 1})"), ValidationError);
  CHECK_THROWS_AS(parse_chain_config(R"([0, 1])"), ValidationError);
  CHECK_THROWS_AS(load_chain_config("/nonexistent/chain.json"), ValidationError);
}
