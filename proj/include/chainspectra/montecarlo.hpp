#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "chainspectra/chain.hpp"

namespace chainspectra {

struct VertexStats {
  std::uint64_t encounters = 0;
  std::uint64_t reflections = 0;
  double reflection_probability = 0.0;  ///< r^2

  double frequency() const noexcept {
    return encounters == 0 ? 0.0 : static_cast<double>(reflections) / static_cast<double>(encounters);
  }
  /// Binomial standard error of the frequency under reflection_probability.
  double sigma() const noexcept;

  friend bool operator==(const VertexStats&, const VertexStats&) = default;
};

/// Event at a vertex against the walker's previous interior event.
/// Index [previous][current], 0 = transmit, 1 = reflect.
struct MemoryTable {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  /// Pearson statistic of the 2x2 independence test (1 degree of freedom);
  /// 0 when a margin is empty.
  double chi_square() const noexcept;

  friend bool operator==(const MemoryTable&, const MemoryTable&) = default;
};

struct SimulationStats {
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::size_t walkers = 0;
  std::vector<VertexStats> vertices;       ///< interior vertices 1..N-1
  std::vector<MemoryTable> memory;         ///< per interior vertex
  std::vector<std::uint64_t> occupation;   ///< hops spent on each directed-bond id
  std::uint64_t wall_hits = 0;
  /// return_lengths[L]: returns to the walker's starting directed bond after
  /// L hops, L < kMaxReturnLength; longer returns land in the last slot.
  std::vector<std::uint64_t> return_lengths;

  friend bool operator==(const SimulationStats&, const SimulationStats&) = default;
};

inline constexpr std::size_t kMaxReturnLength = 64;
inline constexpr std::size_t kDefaultWalkers = 8;

/// Classical scattering walk: each hop ends at a vertex where the particle
/// reflects with probability r^2 (always at walls) and otherwise transmits.
/// `steps` hops are split over a fixed number of independent walkers with
/// seeds derived from `seed`, so results do not depend on `threads`.
SimulationStats simulate(const Chain& chain, std::uint64_t steps, std::uint64_t seed,
                         std::size_t threads = 1, std::size_t walkers = kDefaultWalkers);

}  // namespace chainspectra
