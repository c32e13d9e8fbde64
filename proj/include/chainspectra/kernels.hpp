#pragma once

// Data-parallel inner loops shared by the spectral and orbit code.
//
// Every kernel has a portable scalar reference and, on x86-64 builds, an
// AVX2/FMA variant. The variant is picked once at runtime from the CPU
// features; CHAIN_SPECTRA_SIMD=scalar|avx2 overrides the choice. Trig sums
// may differ between variants in the last bits (different summation order and
// sin/cos implementations); axpy is bitwise identical.

#include <complex>
#include <span>
#include <string_view>

namespace chainspectra::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

/// The variant used by the free functions below.
Isa active_isa() noexcept;

/// Forces a variant; throws std::invalid_argument when unsupported.
void set_active_isa(Isa isa);

struct KernelTable {
  /// sum_j amp[j] * cos(freq[j] * x + phase[j])
  double (*cos_phase_sum)(const double* amp, const double* freq, const double* phase,
                          std::size_t n, double x);
  /// sum_j amp[j] * cos(freq[j] * x)
  double (*cos_sum)(const double* amp, const double* freq, std::size_t n, double x);
  /// sum_j amp[j] * sin(freq[j] * x)
  double (*sin_sum)(const double* amp, const double* freq, std::size_t n, double x);
  /// sum_j (re[j] + i im[j]) * exp(i freq[j] x)
  std::complex<double> (*expi_sum)(const double* re, const double* im, const double* freq,
                                   std::size_t n, double x);
  /// y[j] += a * x[j]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
};

/// Direct access to one variant, for equivalence testing and benchmarks.
const KernelTable& table(Isa isa);

double cos_phase_sum(std::span<const double> amp, std::span<const double> freq,
                     std::span<const double> phase, double x);
double cos_sum(std::span<const double> amp, std::span<const double> freq, double x);
double sin_sum(std::span<const double> amp, std::span<const double> freq, double x);
std::complex<double> expi_sum(std::span<const double> re, std::span<const double> im,
                              std::span<const double> freq, double x);
void axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace chainspectra::kernels
