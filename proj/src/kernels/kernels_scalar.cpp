#include <cmath>

#include "kernel_variants.hpp"

namespace chainspectra::kernels::detail {
namespace {

double cos_phase_sum(const double* amp, const double* freq, const double* phase, std::size_t n,
                     double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += amp[j] * std::cos(freq[j] * x + phase[j]);
  return acc;
}

double cos_sum(const double* amp, const double* freq, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += amp[j] * std::cos(freq[j] * x);
  return acc;
}

double sin_sum(const double* amp, const double* freq, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += amp[j] * std::sin(freq[j] * x);
  return acc;
}

std::complex<double> expi_sum(const double* re, const double* im, const double* freq,
                              std::size_t n, double x) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double arg = freq[j] * x;
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    acc_re += re[j] * c - im[j] * s;
    acc_im += re[j] * s + im[j] * c;
  }
  return {acc_re, acc_im};
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += a * x[j];
}

constexpr KernelTable kScalar{cos_phase_sum, cos_sum, sin_sum, expi_sum, axpy};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace chainspectra::kernels::detail
