#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "chainspectra/expansion.hpp"

namespace chainspectra {

/// Intersections of the Weyl average with the staircase in the regular
/// regime: k_hat_n = spacing * (n - offset), spacing = pi / S_0.
struct SeparatorGrid {
  double offset;   ///< N_bar(0) = gamma_0 - 1
  double spacing;  ///< pi / S_0

  double operator()(long n) const noexcept { return spacing * (static_cast<double>(n) - offset); }
};

SeparatorGrid separator_grid(const SpectralForm& form);

/// N_bar(k) = S_0 k / pi + N_bar(0), with N_bar(0) = gamma_0 - 1 so that the
/// square well (gamma_0 = 1/2) gives N_bar(pi n / L) = n - 1/2.
double weyl_average(const SpectralForm& form, double k);

inline double separator(const SpectralForm& form, long n) { return separator_grid(form)(n); }

struct RootRecord {
  long n;              ///< separator interval (k_hat_{n-1}, k_hat_n)
  double lo;
  double hi;
  double root;
  double residual;     ///< |f(root)|
  int iterations;
  int multiplicity;    ///< > 1 when sign changes closer than 1e-9 were merged
};

/// Largest interval index accepted by the root finder.
inline constexpr long kMaxRootIndex = 1'000'000;

/// Roots in the separator intervals first..last (1-based, inclusive),
/// ordered by interval and then by position. Regular forms with a sign
/// change across the interval are bisected directly; anything else is
/// scanned on 64 panels and every sign change is bisected. Bisection runs
/// until the bracket can no longer be halved in double precision.
std::vector<RootRecord> find_roots(const SpectralForm& form, long first, long last,
                                   std::size_t threads = 1);

/// N(k): number of roots (with multiplicity) not exceeding k.
/// `roots` must be sorted by root.
long staircase(std::span<const RootRecord> roots, double k);

struct IntervalClassification {
  long first = 0;
  long last = 0;
  std::vector<int> counts;          ///< roots per interval, index n - first
  std::map<int, long> histogram;    ///< roots-per-interval -> number of intervals
  long total_roots = 0;
  long weyl_count = 0;              ///< last - first + 1

  bool all_single() const noexcept { return histogram.size() == 1 && histogram.count(1) == 1; }
};

/// Panel-scans every interval regardless of the regularity margin.
IntervalClassification classify_intervals(const SpectralForm& form, long first, long last,
                                          std::size_t threads = 1);

}  // namespace chainspectra
