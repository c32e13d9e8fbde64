#include "chainspectra/montecarlo.hpp"

#include <cmath>
#include <random>

#include "chainspectra/error.hpp"
#include "chainspectra/parallel.hpp"

namespace chainspectra {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random bits, so the stream is fixed by the engine alone and not by the
// standard library's distribution implementation.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct WalkerResult {
  std::vector<std::uint64_t> encounters, reflections, occupation, returns;
  std::vector<MemoryTable> memory;
  std::uint64_t wall_hits = 0;
};

WalkerResult walk(const Chain& chain, const std::vector<double>& reflect_p, std::uint64_t steps,
                  std::uint64_t seed) {
  const std::size_t n = chain.bonds();
  const std::size_t states = 2 * n;
  WalkerResult w;
  w.encounters.assign(n - 1, 0);
  w.reflections.assign(n - 1, 0);
  w.memory.assign(n - 1, {});
  w.occupation.assign(states, 0);
  w.returns.assign(kMaxReturnLength, 0);

  std::mt19937_64 rng(splitmix64(seed));
  auto state = static_cast<std::size_t>(rng() % states);
  const std::size_t start = state;
  std::uint64_t since_start = 0;
  int previous = -1;  // last interior event, -1 before the first

  for (std::uint64_t step = 0; step < steps; ++step) {
    ++w.occupation[state];
    const std::size_t bond = state / 2;
    const bool rightward = state % 2 == 0;
    const bool at_wall = rightward ? bond + 1 == n : bond == 0;
    if (at_wall) {
      ++w.wall_hits;
      state ^= 1;
    } else {
      const std::size_t v = rightward ? bond + 1 : bond;  // 1-based interior vertex
      const bool reflect = uniform(rng) < reflect_p[v - 1];
      ++w.encounters[v - 1];
      if (reflect) {
        ++w.reflections[v - 1];
        state ^= 1;
      } else {
        state = rightward ? 2 * (bond + 1) : 2 * (bond - 1) + 1;
      }
      const int event = reflect ? 1 : 0;
      if (previous >= 0) ++w.memory[v - 1].counts[previous][event];
      previous = event;
    }
    ++since_start;
    if (state == start) {
      ++w.returns[std::min<std::uint64_t>(since_start, kMaxReturnLength - 1)];
      since_start = 0;
    }
  }
  return w;
}

}  // namespace

double VertexStats::sigma() const noexcept {
  if (encounters == 0) return 0.0;
  const double p = reflection_probability;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(encounters));
}

double MemoryTable::chi_square() const noexcept {
  const double a = static_cast<double>(counts[0][0]);
  const double b = static_cast<double>(counts[0][1]);
  const double c = static_cast<double>(counts[1][0]);
  const double d = static_cast<double>(counts[1][1]);
  const double denom = (a + b) * (c + d) * (a + c) * (b + d);
  if (denom == 0.0) return 0.0;
  const double det = a * d - b * c;
  return (a + b + c + d) * det * det / denom;
}

SimulationStats simulate(const Chain& chain, std::uint64_t steps, std::uint64_t seed,
                         std::size_t threads, std::size_t walkers) {
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (walkers < 1) throw ValidationError("walkers must be >= 1");
  const std::size_t n = chain.bonds();
  std::vector<double> reflect_p(n - 1);
  for (std::size_t v = 1; v < n; ++v) {
    const double r = chain.vertex_coefficients(v).r;
    reflect_p[v - 1] = r * r;
  }

  std::vector<WalkerResult> parts(walkers);
  parallel_for(walkers, threads, [&](std::size_t i) {
    const std::uint64_t share = steps / walkers + (i < steps % walkers ? 1 : 0);
    parts[i] = walk(chain, reflect_p, share, seed + i);
  });

  SimulationStats out;
  out.steps = steps;
  out.seed = seed;
  out.walkers = walkers;
  out.vertices.resize(n - 1);
  out.memory.assign(n - 1, {});
  out.occupation.assign(2 * n, 0);
  out.return_lengths.assign(kMaxReturnLength, 0);
  for (std::size_t v = 0; v + 1 < n; ++v) out.vertices[v].reflection_probability = reflect_p[v];
  for (const auto& p : parts) {
    for (std::size_t v = 0; v + 1 < n; ++v) {
      out.vertices[v].encounters += p.encounters[v];
      out.vertices[v].reflections += p.reflections[v];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.memory[v].counts[i][j] += p.memory[v].counts[i][j];
    }
    for (std::size_t s = 0; s < out.occupation.size(); ++s) out.occupation[s] += p.occupation[s];
    for (std::size_t l = 0; l < kMaxReturnLength; ++l) out.return_lengths[l] += p.returns[l];
    out.wall_hits += p.wall_hits;
  }
  return out;
}

}  // namespace chainspectra
