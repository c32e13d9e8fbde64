#include "chainspectra/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernel_variants.hpp"

namespace chainspectra::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(CHAIN_SPECTRA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("CHAIN_SPECTRA_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return Isa::scalar;
    if (choice == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> current{&table(detect())};
  return current;
}

const KernelTable& current() { return *active_table().load(std::memory_order_relaxed); }

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  return isa == Isa::scalar || (isa == Isa::avx2 && cpu_has_avx2());
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("kernel variant " + std::string(isa_name(isa)) +
                                " is not available on this machine");
  }
#if defined(CHAIN_SPECTRA_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

Isa active_isa() noexcept {
  return &current() == &detail::scalar_table() ? Isa::scalar : Isa::avx2;
}

void set_active_isa(Isa isa) { active_table().store(&table(isa), std::memory_order_relaxed); }

double cos_phase_sum(std::span<const double> amp, std::span<const double> freq,
                     std::span<const double> phase, double x) {
  return current().cos_phase_sum(amp.data(), freq.data(), phase.data(), amp.size(), x);
}

double cos_sum(std::span<const double> amp, std::span<const double> freq, double x) {
  return current().cos_sum(amp.data(), freq.data(), amp.size(), x);
}

double sin_sum(std::span<const double> amp, std::span<const double> freq, double x) {
  return current().sin_sum(amp.data(), freq.data(), amp.size(), x);
}

std::complex<double> expi_sum(std::span<const double> re, std::span<const double> im,
                              std::span<const double> freq, double x) {
  return current().expi_sum(re.data(), im.data(), freq.data(), re.size(), x);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  current().axpy(a, x.data(), y.data(), x.size());
}

}  // namespace chainspectra::kernels
