#include <immintrin.h>

#include "kernel_variants.hpp"

namespace chainspectra::kernels::detail {
namespace {

// Cephes minimax coefficients for sin and cos on [-pi/4, pi/4].
constexpr double kSin[] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                           2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                           8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                           -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                           -1.38888888888730564116e-3,  4.16666666666665929218e-2};

// pi/2 split into three doubles for Cody-Waite reduction with FMA.
constexpr double kPio2Hi = 1.5707963267948965579989817342720925807952880859375;
constexpr double kPio2Mid = 6.123233995736766e-17;
constexpr double kPio2Lo = 1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.63661977236758134308;
// 1.5 * 2^52: adding it rounds to an integer held in the low mantissa bits.
constexpr double kRoundMagic = 6755399441055744.0;

struct SinCos {
  __m256d s;
  __m256d c;
};

inline __m256d poly6(__m256d z, const double* k) {
  __m256d p = _mm256_set1_pd(k[0]);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[1]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[2]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[3]));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[4]));
  return _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[5]));
}

// Valid for |x| < 2^50; the callers stay many orders of magnitude below that.
inline SinCos sincos4(__m256d x) {
  const __m256d magic = _mm256_set1_pd(kRoundMagic);
  __m256d q = _mm256_add_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)), magic);
  const __m256i quadrant = _mm256_castpd_si256(q);
  q = _mm256_sub_pd(q, magic);

  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSin), r);
  const __m256d one_minus_half_z = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
  const __m256d cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCos), one_minus_half_z);

  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quadrant, one), one));
  const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(quadrant, two), two));
  const __m256d neg_c = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(quadrant, one), two), two));

  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign));
  c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign));
  return {s, c};
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Loads the tail [j, n) into a full vector, padding with zeros.
inline __m256d load_tail(const double* p, std::size_t j, std::size_t n) {
  alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; j + i < n; ++i) buf[i] = p[j + i];
  return _mm256_load_pd(buf);
}

double cos_phase_sum(const double* amp, const double* freq, const double* phase, std::size_t n,
                     double x) {
  const __m256d vx = _mm256_set1_pd(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d arg =
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(freq + j), vx), _mm256_loadu_pd(phase + j));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(amp + j), sincos4(arg).c, acc);
  }
  if (j < n) {
    const __m256d arg =
        _mm256_add_pd(_mm256_mul_pd(load_tail(freq, j, n), vx), load_tail(phase, j, n));
    acc = _mm256_fmadd_pd(load_tail(amp, j, n), sincos4(arg).c, acc);
  }
  return hsum(acc);
}

template <bool kSine>
double trig_sum(const double* amp, const double* freq, std::size_t n, double x) {
  const __m256d vx = _mm256_set1_pd(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const SinCos sc = sincos4(_mm256_mul_pd(_mm256_loadu_pd(freq + j), vx));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(amp + j), kSine ? sc.s : sc.c, acc);
  }
  if (j < n) {
    const SinCos sc = sincos4(_mm256_mul_pd(load_tail(freq, j, n), vx));
    acc = _mm256_fmadd_pd(load_tail(amp, j, n), kSine ? sc.s : sc.c, acc);
  }
  return hsum(acc);
}

double cos_sum(const double* amp, const double* freq, std::size_t n, double x) {
  return trig_sum<false>(amp, freq, n, x);
}

double sin_sum(const double* amp, const double* freq, std::size_t n, double x) {
  return trig_sum<true>(amp, freq, n, x);
}

std::complex<double> expi_sum(const double* re, const double* im, const double* freq,
                              std::size_t n, double x) {
  const __m256d vx = _mm256_set1_pd(x);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  auto step = [&](__m256d vre, __m256d vim, __m256d vf) {
    const SinCos sc = sincos4(_mm256_mul_pd(vf, vx));
    acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(vre, sc.c, _mm256_mul_pd(vim, sc.s)));
    acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(vre, sc.s, _mm256_mul_pd(vim, sc.c)));
  };
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    step(_mm256_loadu_pd(re + j), _mm256_loadu_pd(im + j), _mm256_loadu_pd(freq + j));
  }
  if (j < n) step(load_tail(re, j, n), load_tail(im, j, n), load_tail(freq, j, n));
  return {hsum(acc_re), hsum(acc_im)};
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(y + j, _mm256_add_pd(_mm256_loadu_pd(y + j), prod));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

constexpr KernelTable kAvx2{cos_phase_sum, cos_sum, sin_sum, expi_sum, axpy};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace chainspectra::kernels::detail
