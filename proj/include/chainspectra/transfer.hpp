#pragma once

#include <complex>
#include <cstddef>

#include "chainspectra/chain.hpp"

namespace chainspectra {

struct ComplexMatrix2 {
  std::complex<double> m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

  static ComplexMatrix2 identity() { return {}; }

  std::complex<double> det() const { return m11 * m22 - m12 * m21; }

  friend ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }

  ComplexMatrix2 scaled(double s) const { return {s * m11, s * m12, s * m21, s * m22}; }
};

/// Transfer matrix across interior vertex i (1 <= i <= N-1), mapping the
/// flux-normalised amplitudes (A_i, B_i) of bond i onto bond i+1:
///
///   T_i = (1/t_i) [ e^{ik(b_i - b_{i+1}) x}     r_i e^{-ik(b_i + b_{i+1}) x} ]
///                 [ r_i e^{ik(b_i + b_{i+1}) x}  e^{ik(b_{i+1} - b_i) x}     ]
///
/// with b the betas and x the vertex position. det T_i = 1.
ComplexMatrix2 transfer_matrix(const Chain& chain, std::size_t vertex, double k);

/// T = T_{N-1} ... T_1 (identity for a single bond).
ComplexMatrix2 total_transfer(const Chain& chain, double k);

/// The same product with every 1/t_i prefactor removed.
ComplexMatrix2 stripped_total_transfer(const Chain& chain, double k);

/// Frequency of the lowest-order term of the raw determinant
/// e^{2iK}(T11 - T12) + T21 - T22, K = beta_N k b_N: beta_N b_N - S_0.
double determinant_phase_offset(const Chain& chain);

/// Spectral determinant built from the stripped transfer matrix, multiplied
/// by -exp(-ik * determinant_phase_offset) so that its constant term is +1:
///   Delta(k) = 1 + e^{2i(S_0 k - pi gamma_0)} - sum_j a_j e^{2i(S_j k - pi gamma_j)}.
std::complex<double> delta_numeric(const Chain& chain, double k);

}  // namespace chainspectra
