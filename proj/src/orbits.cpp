#include "chainspectra/orbits.hpp"

#include <algorithm>

#include "chainspectra/error.hpp"

namespace chainspectra {
namespace {

bool is_lyndon(std::span<const std::uint32_t> w) {
  const std::size_t n = w.size();
  for (std::size_t shift = 1; shift < n; ++shift) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t a = w[i];
      const std::uint32_t b = w[(i + shift) % n];
      if (a < b) break;
      if (a > b) return false;
      if (i + 1 == n) return false;  // equal rotation: a power
    }
  }
  return true;
}

struct Enumerator {
  const Chain& chain;
  int max_bonds;
  std::vector<std::vector<Transition>> moves;
  std::vector<std::uint32_t> path;
  std::vector<PeriodicOrbit> found;

  void descend() {
    const std::uint32_t start = path.front();
    for (const auto& m : moves[path.back()]) {
      if (m.to == start && is_lyndon(path)) record();
    }
    if (static_cast<int>(path.size()) == max_bonds) return;
    for (const auto& m : moves[path.back()]) {
      if (m.to < start) continue;
      path.push_back(m.to);
      descend();
      path.pop_back();
    }
  }

  void record() {
    PeriodicOrbit orbit;
    orbit.code.reserve(path.size());
    for (auto id : path) orbit.code.push_back(DirectedBond::from_id(id));
    orbit.action = orbit_action(chain, orbit.code);
    orbit.amplitude = orbit_amplitude(chain, orbit.code);
    found.push_back(std::move(orbit));
  }
};

void check_bond(const Chain& chain, DirectedBond d) {
  if (d.bond < 1 || d.bond > chain.bonds() || static_cast<unsigned>(d.dir) > 1) {
    throw ValidationError("orbit code refers to bond " + std::to_string(d.bond) +
                          " on a chain with " + std::to_string(chain.bonds()) + " bonds");
  }
}

}  // namespace

std::vector<Transition> transitions(const Chain& chain, std::uint32_t from) {
  const std::size_t n = chain.bonds();
  if (from >= 2 * n) throw ValidationError("directed bond id " + std::to_string(from) + " out of range");
  const std::uint32_t b = from / 2;  // 0-based bond
  if (from % 2 == 0) {
    if (b + 1 == n) return {{from + 1, -1.0}};
    const auto c = chain.vertex_coefficients(b + 1);
    return {{2 * (b + 1), c.t}, {from + 1, -c.r}};
  }
  if (b == 0) return {{0, -1.0}};
  const auto c = chain.vertex_coefficients(b);
  return {{2 * (b - 1) + 1, c.t}, {from - 1, c.r}};
}

std::vector<std::uint8_t> adjacency_matrix(std::size_t bonds) {
  const std::size_t s = 2 * bonds;
  std::vector<std::uint8_t> m(s * s, 0);
  for (std::size_t b = 0; b < bonds; ++b) {
    const std::size_t r = 2 * b;
    const std::size_t l = r + 1;
    m[r * s + l] = 1;
    if (b + 1 < bonds) m[r * s + 2 * (b + 1)] = 1;
    m[l * s + r] = 1;
    if (b > 0) m[l * s + 2 * (b - 1) + 1] = 1;
  }
  return m;
}

std::vector<PeriodicOrbit> enumerate_orbits(const Chain& chain, int max_bonds) {
  if (max_bonds < 1 || max_bonds > kMaxOrbitBonds) {
    throw ValidationError("max_bonds must be in [1, " + std::to_string(kMaxOrbitBonds) + "], got " +
                          std::to_string(max_bonds));
  }
  Enumerator e{chain, max_bonds, {}, {}, {}};
  const auto states = static_cast<std::uint32_t>(2 * chain.bonds());
  for (std::uint32_t s = 0; s < states; ++s) e.moves.push_back(transitions(chain, s));
  for (std::uint32_t s = 0; s < states; ++s) {
    e.path.assign(1, s);
    e.descend();
  }
  std::stable_sort(e.found.begin(), e.found.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.code.size() != b.code.size()) return a.code.size() < b.code.size();
    return std::lexicographical_compare(a.code.begin(), a.code.end(), b.code.begin(), b.code.end(),
                                        [](DirectedBond x, DirectedBond y) { return x.id() < y.id(); });
  });
  return std::move(e.found);
}

double orbit_amplitude(const Chain& chain, std::span<const DirectedBond> code) {
  if (code.empty()) throw ValidationError("empty orbit code");
  double a = 1.0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const DirectedBond from = code[i];
    const DirectedBond to = code[(i + 1) % code.size()];
    check_bond(chain, from);
    check_bond(chain, to);
    bool legal = false;
    for (const auto& m : transitions(chain, from.id())) {
      if (m.to == to.id()) {
        a *= m.amplitude;
        legal = true;
      }
    }
    if (!legal) {
      throw ValidationError("illegal transition " + format_code(code.subspan(i, 1)) + " -> " +
                            format_code(std::span(&to, 1)) + " in orbit " + format_code(code));
    }
  }
  return a;
}

double orbit_action(const Chain& chain, std::span<const DirectedBond> code) {
  double s = 0.0;
  for (auto d : code) {
    check_bond(chain, d);
    s += chain.bond_action(d.bond);
  }
  return s;
}

std::string format_code(std::span<const DirectedBond> code) {
  std::string out;
  for (auto d : code) {
    out += std::to_string(d.bond);
    out += d.dir == Direction::right ? 'R' : 'L';
  }
  return out;
}

}  // namespace chainspectra
