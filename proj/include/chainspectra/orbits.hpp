#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chainspectra/chain.hpp"

namespace chainspectra {

enum class Direction : std::uint8_t { right = 0, left = 1 };

/// A bond traversed in one direction. Bonds are 1-based.
struct DirectedBond {
  std::uint32_t bond;
  Direction dir;

  /// Dense id 2 (bond - 1) + dir; orders codes lexicographically.
  std::uint32_t id() const noexcept { return 2 * (bond - 1) + static_cast<std::uint32_t>(dir); }
  static DirectedBond from_id(std::uint32_t id) noexcept {
    return {id / 2 + 1, static_cast<Direction>(id % 2)};
  }
  friend bool operator==(DirectedBond, DirectedBond) = default;
};

/// Outgoing move from a directed bond at the vertex it runs into.
struct Transition {
  std::uint32_t to;   ///< DirectedBond id
  double amplitude;
};

/// The one or two legal continuations of directed bond `from` (by id).
/// Walls reflect with -1; an interior vertex v transmits with t_v and
/// reflects with -r_v when hit from the left and +r_v from the right.
/// This is the sign choice under which the orbit sum reproduces the
/// spectral determinant.
std::vector<Transition> transitions(const Chain& chain, std::uint32_t from);

/// 0/1 adjacency of the 2N directed-bond states, row-major.
std::vector<std::uint8_t> adjacency_matrix(std::size_t bonds);

struct PeriodicOrbit {
  std::vector<DirectedBond> code;  ///< lexicographically minimal rotation
  double action = 0.0;
  double amplitude = 0.0;
  bool primitive = true;

  std::size_t length() const noexcept { return code.size(); }
};

inline constexpr int kMaxOrbitBonds = 24;

/// All primitive periodic orbits with code length <= max_bonds, ordered by
/// length and then by code. Time-reversed partners are listed separately.
std::vector<PeriodicOrbit> enumerate_orbits(const Chain& chain, int max_bonds);

/// Product of the vertex factors around the closed code (including the step
/// from the last element back to the first). Throws ValidationError on an
/// illegal transition or a bond outside the chain.
double orbit_amplitude(const Chain& chain, std::span<const DirectedBond> code);

double orbit_action(const Chain& chain, std::span<const DirectedBond> code);

/// "1R1L"-style code string.
std::string format_code(std::span<const DirectedBond> code);

}  // namespace chainspectra
