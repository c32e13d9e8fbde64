#include "chainspectra/orbit_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "chainspectra/error.hpp"
#include "chainspectra/kernels.hpp"
#include "chainspectra/parallel.hpp"
#include "chainspectra/spectrum.hpp"

namespace chainspectra {
namespace {

constexpr double kWalkTableBudget = 1 << 21;  // doubles per buffer
constexpr int kMaxCodeLength = 4096;

void push_class(OrbitSeries& s, std::span<const std::uint32_t> counts, double weight,
                std::uint32_t length, std::span<const double> bond_actions) {
  double action = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) action += counts[b] * bond_actions[b];
  s.actions.push_back(action);
  s.weights.push_back(weight);
  s.code_lengths.push_back(length);
  s.counts.insert(s.counts.end(), counts.begin(), counts.end());
}

void refuse_irregular(const SpectralForm& form) {
  if (!(form.margin() > 0.0)) {
    throw RefusalError("eigenvalue series needs a regular chain; regularity margin is " +
                       std::to_string(form.margin()));
  }
}

struct SeriesCoefficients {
  std::vector<double> amp;
  std::vector<double> freq;
};

SeriesCoefficients series_coefficients(const OrbitSeries& s) {
  SeriesCoefficients c;
  c.amp.reserve(s.size());
  c.freq.reserve(s.size());
  const double s0 = s.total_action;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double S = s.actions[i];
    c.amp.push_back(2.0 / std::numbers::pi * (s.weights[i] / S) *
                    std::sin(std::numbers::pi * S / (2.0 * s0)));
    c.freq.push_back(std::numbers::pi * S / s0);
  }
  return c;
}

double midpoint(const SpectralForm& form, long n) {
  return std::numbers::pi * (static_cast<double>(n) + 0.5 - form.gamma0()) / form.total_action();
}

template <class F>
double integrate_interval(const OrbitSeries& s, double a, double b, F&& f) {
  double smax = s.total_action;
  for (double S : s.actions) smax = std::max(smax, S);
  const auto panels = static_cast<long>(std::ceil(smax * (b - a) / std::numbers::pi)) + 1;
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * h;
    const double hi = p + 1 == panels ? b : lo + h;
    total += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
  }
  return total;
}

}  // namespace

int default_max_code_length(std::size_t bonds) {
  const double states = 2.0 * static_cast<double>(bonds);
  const double per_count = kWalkTableBudget / (states * states);
  if (bonds == 1) return kMaxCodeLength;
  const double side = std::floor(std::pow(per_count, 1.0 / static_cast<double>(bonds - 1)) + 1e-9);
  return static_cast<int>(std::clamp(side - 1.0, 1.0, static_cast<double>(kMaxCodeLength)));
}

OrbitSeries build_orbit_series(const Chain& chain, const SeriesOptions& options) {
  if (!(options.amp_threshold >= 0.0)) throw ValidationError("amp_threshold must be >= 0");
  if (options.max_code_length < 0 || options.max_code_length > kMaxCodeLength) {
    throw ValidationError("max_code_length must be in [0, " + std::to_string(kMaxCodeLength) + "]");
  }
  const std::size_t n = chain.bonds();
  const int cap = options.max_code_length > 0 ? options.max_code_length : default_max_code_length(n);
  const std::size_t states = 2 * n;
  const std::size_t dims = n - 1;  // the last bond's count is implied by the length
  const auto side = static_cast<std::size_t>(cap) + 1;
  std::vector<std::size_t> stride(dims);
  std::size_t volume = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    stride[d] = volume;
    volume *= side;
  }
  if (static_cast<double>(volume) * static_cast<double>(states * states) > 8.0 * kWalkTableBudget) {
    throw ValidationError("walk table for " + std::to_string(n) + " bonds and code length " +
                          std::to_string(cap) + " exceeds the memory budget");
  }
  const std::size_t top_stride = dims == 0 ? 0 : stride[dims - 1];

  std::vector<std::vector<Transition>> moves(states);
  for (std::size_t s = 0; s < states; ++s) moves[s] = transitions(chain, static_cast<std::uint32_t>(s));

  // cur[(start * states + here) * volume + idx]
  std::vector<double> cur(states * states * volume, 0.0);
  std::vector<double> next(cur.size(), 0.0);
  for (std::size_t s = 0; s < states; ++s) cur[(s * states + s) * volume] = 1.0;

  OrbitSeries out;
  out.bonds = n;
  out.total_action = chain.total_action();
  out.amp_threshold = options.amp_threshold;
  const auto actions = chain.bond_actions();
  std::vector<std::uint32_t> counts(n);
  std::vector<double> shell(volume);

  for (int L = 1; L <= cap; ++L) {
    const std::size_t len_prev = std::min(volume, static_cast<std::size_t>(L - 1) * top_stride + 1);
    const std::size_t len = std::min(volume, static_cast<std::size_t>(L) * top_stride + 1);
    for (std::size_t row = 0; row < states * states; ++row) {
      std::fill_n(next.begin() + static_cast<std::ptrdiff_t>(row * volume), len, 0.0);
    }
    for (std::size_t s = 0; s < states; ++s) {
      for (std::size_t x = 0; x < states; ++x) {
        const double* src = cur.data() + (s * states + x) * volume;
        const std::size_t bond = x / 2;
        const std::size_t shift = bond < dims ? stride[bond] : 0;
        for (const auto& m : moves[x]) {
          double* dst = next.data() + (s * states + m.to) * volume + shift;
          kernels::axpy(m.amplitude, std::span(src, len_prev), std::span(dst, len_prev));
        }
      }
    }
    std::swap(cur, next);

    std::fill_n(shell.begin(), len, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      kernels::axpy(1.0, std::span(cur.data() + (s * states + s) * volume, len), std::span(shell.data(), len));
    }
    bool nonempty = false;
    bool kept = false;
    for (std::size_t idx = 0; idx < len; ++idx) {
      if (shell[idx] == 0.0) continue;
      nonempty = true;
      const double w = shell[idx] / L;
      if (std::abs(w) < options.amp_threshold) {
        ++out.dropped;
        out.dropped_weight += std::abs(w);
        continue;
      }
      kept = true;
      std::uint32_t used = 0;
      for (std::size_t d = 0; d < dims; ++d) {
        counts[d] = static_cast<std::uint32_t>((idx / stride[d]) % side);
        used += counts[d];
      }
      counts[n - 1] = static_cast<std::uint32_t>(L) - used;
      push_class(out, counts, w, static_cast<std::uint32_t>(L), actions);
    }
    out.max_code_length = L;
    if (L >= static_cast<int>(2 * n) && nonempty && !kept) {
      out.converged = true;
      break;
    }
  }
  return out;
}

OrbitSeries series_from_orbits(const Chain& chain, std::span<const PeriodicOrbit> orbits,
                               double amp_threshold, int rep_max, int max_code_length) {
  if (rep_max < 1) throw ValidationError("rep_max must be >= 1");
  const std::size_t n = chain.bonds();
  std::map<std::vector<std::uint32_t>, double> classes;
  int longest = 0;
  for (const auto& p : orbits) {
    if (!p.primitive) continue;
    std::vector<std::uint32_t> base(n, 0);
    for (auto d : p.code) ++base.at(d.bond - 1);
    const double a = std::abs(p.amplitude);
    double power = 1.0;
    for (int nu = 1; nu <= rep_max; ++nu) {
      const auto length = static_cast<long>(nu) * static_cast<long>(p.length());
      if (max_code_length > 0 && length > max_code_length) break;
      if (a < 1.0 && nu > 1) {
        const double tail = std::pow(a, nu) / (static_cast<double>(nu) * nu) / (1.0 - a);
        if (tail < amp_threshold) break;
      }
      power *= p.amplitude;
      std::vector<std::uint32_t> c(base);
      for (auto& v : c) v *= static_cast<std::uint32_t>(nu);
      classes[c] += power / nu;
      longest = std::max(longest, static_cast<int>(length));
    }
  }
  OrbitSeries out;
  out.bonds = n;
  out.total_action = chain.total_action();
  out.amp_threshold = amp_threshold;
  out.max_code_length = longest;
  for (const auto& [c, w] : classes) {
    if (w == 0.0 || std::abs(w) < amp_threshold) {
      ++out.dropped;
      out.dropped_weight += std::abs(w);
      continue;
    }
    std::uint32_t length = 0;
    for (auto v : c) length += v;
    push_class(out, c, w, length, chain.bond_actions());
  }
  return out;
}

double eigenvalue_series(const SpectralForm& form, const OrbitSeries& series, long n) {
  return eigenvalue_series(form, series, n, n).front();
}

std::vector<double> eigenvalue_series(const SpectralForm& form, const OrbitSeries& series,
                                      long first, long last, std::size_t threads) {
  refuse_irregular(form);
  if (first < 1 || last < first || last > kMaxRootIndex) {
    throw ValidationError("eigenvalue index range must satisfy 1 <= first <= last <= " +
                          std::to_string(kMaxRootIndex));
  }
  const SeriesCoefficients c = series_coefficients(series);
  std::vector<double> out(static_cast<std::size_t>(last - first + 1));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const long n = first + static_cast<long>(i);
    out[i] = midpoint(form, n) - kernels::sin_sum(c.amp, c.freq, static_cast<double>(n));
  });
  return out;
}

double density_of_states(const OrbitSeries& series, double k) {
  std::vector<double> amp(series.size());
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = series.weights[i] * series.actions[i];
  return (series.total_action + kernels::cos_sum(amp, series.actions, k)) / std::numbers::pi;
}

double oscillating_staircase(const OrbitSeries& series, double k) {
  return kernels::sin_sum(series.weights, series.actions, k) / std::numbers::pi;
}

double eigenvalue_integral(const SpectralForm& form, const OrbitSeries& series, long n) {
  const SeparatorGrid grid = separator_grid(form);
  std::vector<double> amp(series.size());
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = series.weights[i] * series.actions[i];
  return integrate_interval(series, grid(n - 1), grid(n), [&](double k) {
    return k * (series.total_action + kernels::cos_sum(amp, series.actions, k)) / std::numbers::pi;
  });
}

double density_integral(const SpectralForm& form, const OrbitSeries& series, long n) {
  const SeparatorGrid grid = separator_grid(form);
  std::vector<double> amp(series.size());
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = series.weights[i] * series.actions[i];
  return integrate_interval(series, grid(n - 1), grid(n), [&](double k) {
    return (series.total_action + kernels::cos_sum(amp, series.actions, k)) / std::numbers::pi;
  });
}

}  // namespace chainspectra
