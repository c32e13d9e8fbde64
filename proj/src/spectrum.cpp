#include "chainspectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chainspectra/error.hpp"
#include "chainspectra/parallel.hpp"

namespace chainspectra {
namespace {

constexpr int kPanels = 64;
constexpr int kMaxBisections = 200;
constexpr double kMergeDistance = 1e-9;

void check_range(long first, long last) {
  if (first < 1 || last < first || last > kMaxRootIndex) {
    throw ValidationError("root index range [" + std::to_string(first) + ", " + std::to_string(last) +
                          "] must satisfy 1 <= first <= last <= " + std::to_string(kMaxRootIndex));
  }
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

struct Bisected {
  double root;
  double residual;
  int iterations;
};

// Requires opposite signs at lo and hi.
Bisected bisect(const SpectralForm& form, double lo, double hi, double f_lo, double f_hi) {
  for (int it = 1; it <= kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      return std::abs(f_lo) <= std::abs(f_hi) ? Bisected{lo, std::abs(f_lo), it}
                                              : Bisected{hi, std::abs(f_hi), it};
    }
    const double f_mid = form.spectral_function(mid);
    if (f_mid == 0.0) return {mid, 0.0, it};
    if (opposite(f_lo, f_mid)) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  throw NumericalError("bisection did not converge in " + std::to_string(kMaxBisections) + " steps");
}

std::vector<RootRecord> scan_interval(const SpectralForm& form, long n, double lo, double hi) {
  std::vector<RootRecord> found;
  const double width = (hi - lo) / kPanels;
  double x0 = lo;
  double f0 = form.spectral_function(x0);
  for (int p = 1; p <= kPanels; ++p) {
    const double x1 = p == kPanels ? hi : lo + p * width;
    const double f1 = form.spectral_function(x1);
    if (f0 == 0.0 && p > 1) {
      found.push_back({n, lo, hi, x0, 0.0, 0, 1});
    } else if (opposite(f0, f1)) {
      const Bisected b = bisect(form, x0, x1, f0, f1);
      found.push_back({n, lo, hi, b.root, b.residual, b.iterations, 1});
    }
    x0 = x1;
    f0 = f1;
  }
  // Merge sign changes that collapse onto the same point.
  std::vector<RootRecord> merged;
  for (const auto& r : found) {
    if (!merged.empty() && r.root - merged.back().root < kMergeDistance) {
      merged.back().multiplicity += r.multiplicity;
      if (r.residual < merged.back().residual) {
        merged.back().root = r.root;
        merged.back().residual = r.residual;
      }
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace

SeparatorGrid separator_grid(const SpectralForm& form) {
  return {form.gamma0() - 1.0, std::numbers::pi / form.total_action()};
}

double weyl_average(const SpectralForm& form, double k) {
  return form.total_action() * k / std::numbers::pi + (form.gamma0() - 1.0);
}

std::vector<RootRecord> find_roots(const SpectralForm& form, long first, long last,
                                   std::size_t threads) {
  check_range(first, last);
  const SeparatorGrid grid = separator_grid(form);
  const bool regular = form.margin() > 0.0;
  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<std::vector<RootRecord>> per_interval(count);
  parallel_for(count, threads, [&](std::size_t i) {
    const long n = first + static_cast<long>(i);
    const double lo = grid(n - 1);
    const double hi = grid(n);
    if (regular) {
      const double f_lo = form.spectral_function(lo);
      const double f_hi = form.spectral_function(hi);
      if (opposite(f_lo, f_hi)) {
        const Bisected b = bisect(form, lo, hi, f_lo, f_hi);
        per_interval[i] = {{n, lo, hi, b.root, b.residual, b.iterations, 1}};
        return;
      }
    }
    per_interval[i] = scan_interval(form, n, lo, hi);
  });
  std::vector<RootRecord> roots;
  for (auto& v : per_interval) roots.insert(roots.end(), v.begin(), v.end());
  return roots;
}

long staircase(std::span<const RootRecord> roots, double k) {
  long count = 0;
  for (const auto& r : roots) {
    if (r.root > k) break;
    count += r.multiplicity;
  }
  return count;
}

IntervalClassification classify_intervals(const SpectralForm& form, long first, long last,
                                          std::size_t threads) {
  check_range(first, last);
  const SeparatorGrid grid = separator_grid(form);
  IntervalClassification out;
  out.first = first;
  out.last = last;
  out.weyl_count = last - first + 1;
  out.counts.assign(static_cast<std::size_t>(out.weyl_count), 0);
  parallel_for(out.counts.size(), threads, [&](std::size_t i) {
    const long n = first + static_cast<long>(i);
    int c = 0;
    for (const auto& r : scan_interval(form, n, grid(n - 1), grid(n))) c += r.multiplicity;
    out.counts[i] = c;
  });
  for (int c : out.counts) {
    ++out.histogram[c];
    out.total_roots += c;
  }
  return out;
}

}  // namespace chainspectra
