#include <doctest.h>

#include <cmath>

#include "chainspectra/error.hpp"
#include "chainspectra/montecarlo.hpp"
#include "oracles.hpp"

using namespace chainspectra;

TEST_CASE("zero contrast never reflects inside") {
  const Chain c = Chain::build({0, 1, 2, 4}, {0.3, 0.3, 0.3});
  const auto s = simulate(c, 20000, 1);
  for (const auto& v : s.vertices) {
    CHECK(v.encounters > 0);
    CHECK(v.reflections == 0);
  }
}

TEST_CASE("two-bond reflection frequency and memorylessness") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.75});
  const auto s = simulate(c, 400000, 42);
  REQUIRE(s.vertices.size() == 1);
  const auto& v = s.vertices[0];
  CHECK(v.encounters >= 100000);
  CHECK(v.reflection_probability == doctest::Approx(1.0 / 9.0));
  CHECK(std::abs(v.frequency() - 1.0 / 9.0) < 3.0 * v.sigma());
  CHECK(s.memory[0].chi_square() < 9.0);
  std::uint64_t total = 0;
  for (auto o : s.occupation) total += o;
  CHECK(total == s.steps);
}

TEST_CASE("reproducible and independent of thread count") {
  const Chain c = Chain::build({0, 1, 1.5, 3}, {0, 0.6, 0.2});
  const auto a = simulate(c, 50000, 9, 1);
  const auto b = simulate(c, 50000, 9, 4);
  const auto d = simulate(c, 50000, 10, 1);
  CHECK(a == b);
  CHECK_FALSE(a == d);
}

TEST_CASE("occupation approaches the stationary distribution") {
  const Chain c = Chain::build({0, 1, 1.5, 3}, {0, 0.6, 0.2});
  const auto s = simulate(c, 2000000, 5);
  const auto pi = oracle::stationary({c.betas().begin(), c.betas().end()});
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double freq = static_cast<double>(s.occupation[i]) / static_cast<double>(s.steps);
    CHECK(freq == doctest::Approx(pi[i]).epsilon(0.02));
  }
}

TEST_CASE("chi-square statistic") {
  MemoryTable t;
  t.counts = {{{50, 50}, {50, 50}}};
  CHECK(t.chi_square() == 0.0);
  t.counts = {{{100, 0}, {0, 100}}};
  CHECK(t.chi_square() == doctest::Approx(200.0));
  t.counts = {{{0, 0}, {3, 4}}};
  CHECK(t.chi_square() == 0.0);
}

TEST_CASE("returns to the start are recorded") {
  const Chain c = Chain::build({0, 1}, {0});
  const auto s = simulate(c, 1000, 3, 1, 1);
  CHECK(s.return_lengths[2] == 500);
  CHECK_THROWS_AS(simulate(c, 0, 1), ValidationError);
}
