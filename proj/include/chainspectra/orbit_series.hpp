#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chainspectra/chain.hpp"
#include "chainspectra/expansion.hpp"
#include "chainspectra/orbits.hpp"

namespace chainspectra {

/// Periodic-orbit sums grouped by action class.
///
/// A class is a vector of bond traversal counts; every orbit repetition
/// (p, nu) with nu * counts(p) equal to it has the same action S. Its weight
/// is W = sum A_p^nu / nu over those repetitions, so
///
///   rho(k) = S_0/pi + (1/pi) sum_c W_c S_c cos(S_c k).
///
/// Classes with |W| below the amplitude threshold are dropped.
struct OrbitSeries {
  std::size_t bonds = 0;
  double total_action = 0.0;
  std::vector<double> actions;
  std::vector<double> weights;
  std::vector<std::uint32_t> code_lengths;
  std::vector<std::uint32_t> counts;  ///< bonds entries per class, row-major

  double amp_threshold = 0.0;
  int max_code_length = 0;   ///< longest code included
  bool converged = false;    ///< stopped on the threshold rather than the length cap
  std::size_t dropped = 0;   ///< classes below threshold
  double dropped_weight = 0.0;

  std::size_t size() const noexcept { return actions.size(); }
  std::span<const std::uint32_t> class_counts(std::size_t i) const {
    return std::span(counts).subspan(i * bonds, bonds);
  }
};

struct SeriesOptions {
  double amp_threshold = 1e-8;
  /// 0 picks the longest code length whose walk table fits in about 16 MiB,
  /// at most 4096.
  int max_code_length = 0;
};

int default_max_code_length(std::size_t bonds);

/// Sums closed directed-bond walks shell by shell in code length. A shell L
/// contributes (1/L) * (sum over closed walks of length L) per class, which
/// equals the orbit sum above. Stops after the first non-empty shell with
/// L >= 2N in which every class falls below the threshold, or at the cap.
OrbitSeries build_orbit_series(const Chain& chain, const SeriesOptions& options = {});

/// The same sum from an explicit orbit list: repetitions up to rep_max (and
/// up to max_code_length when positive), stopping early once the tail bound
/// sum_{nu' >= nu} |A|^nu' / nu'^2 falls below the threshold.
OrbitSeries series_from_orbits(const Chain& chain, std::span<const PeriodicOrbit> orbits,
                               double amp_threshold, int rep_max = 64, int max_code_length = 0);

/// k_n = m_n - (2/pi) sum_c (W_c/S_c) sin(pi S_c / 2S_0) sin(pi S_c n / S_0),
/// where m_n = pi (n + 1/2 - gamma_0) / S_0 is the separator-interval midpoint
/// (pi n / S_0 for Dirichlet chains). Throws RefusalError when the margin
/// is not positive.
double eigenvalue_series(const SpectralForm& form, const OrbitSeries& series, long n);

std::vector<double> eigenvalue_series(const SpectralForm& form, const OrbitSeries& series,
                                      long first, long last, std::size_t threads = 1);

double density_of_states(const OrbitSeries& series, double k);

/// (1/pi) sum_c W_c sin(S_c k): the oscillating part of the staircase.
double oscillating_staircase(const OrbitSeries& series, double k);

/// Composite Gauss-Legendre integral of k rho(k) over separator interval n.
double eigenvalue_integral(const SpectralForm& form, const OrbitSeries& series, long n);

/// Integral of rho(k) over separator interval n.
double density_integral(const SpectralForm& form, const OrbitSeries& series, long n);

}  // namespace chainspectra
