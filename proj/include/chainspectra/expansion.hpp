#pragma once

#include <complex>
#include <vector>

#include "chainspectra/chain.hpp"
#include "chainspectra/exp_sum.hpp"

namespace chainspectra {

/// One (a, S, gamma) entry of the determinant or of its characteristic function.
struct SpectralTerm {
  double amplitude;  ///< a >= 0
  double action;     ///< S, in action-length units
  double phase;      ///< gamma, in units of pi
};

/// The spectral determinant in normal form
///
///   Delta(k) = 1 + e^{2i(S_0 k - pi gamma_0)} - sum_j a_j e^{2i(S_j k - pi gamma_j)}
///
/// together with its real form cos(S_0 k - pi gamma_0) = Phi(k), where
///
///   Phi(k) = sum_i a_i cos((2 S_i - S_0) k - pi gamma_i).
///
/// `terms()` lists the 2 N_Gamma exponentials of Delta (gamma in [0, 1)),
/// `pairs()` the N_Gamma cosines of Phi (S_i >= S_0 / 2, gamma in [0, 2)).
class SpectralForm {
public:
  SpectralForm(double total_action, double gamma0, std::vector<SpectralTerm> terms,
               std::vector<SpectralTerm> pairs);

  double total_action() const noexcept { return total_action_; }
  double gamma0() const noexcept { return gamma0_; }
  const std::vector<SpectralTerm>& terms() const noexcept { return terms_; }
  const std::vector<SpectralTerm>& pairs() const noexcept { return pairs_; }

  /// 1 - sum_i |a_i| over the pairs. Positive guarantees regularity.
  double margin() const noexcept { return margin_; }

  /// Delta(k) summed over the normal-form exponentials.
  std::complex<double> evaluate(double k) const;

  /// Phi(k).
  double characteristic(double k) const;

  /// cos(S_0 k - pi gamma_0) - Phi(k); its real zeros are the spectrum.
  double spectral_function(double k) const;

private:
  double total_action_;
  double gamma0_;
  std::vector<SpectralTerm> terms_;
  std::vector<SpectralTerm> pairs_;
  double margin_;

  // Kernel-ready layouts.
  std::vector<double> delta_re_, delta_im_, delta_freq_;
  std::vector<double> phi_amp_, phi_freq_, phi_phase_;
  std::vector<double> f_amp_, f_freq_, f_phase_;
};

/// Entries of the product of stripped vertex matrices t_i T_i as exponential
/// sums in k; `prefactor` is prod_i 1/t_i.
struct SymbolicTransfer {
  ExponentialSum m11, m12, m21, m22;
  double prefactor = 1.0;
};

/// Merge tolerance 1e-9 S_0, drop threshold 1e-15, at most 2^20 terms.
ExpSumPolicy expansion_policy(const Chain& chain);

SymbolicTransfer expand_transfer(const Chain& chain);

/// Delta(k) of the normal form as one exponential sum over frequencies 2 S_j.
ExponentialSum expand_delta(const Chain& chain);

/// Throws NumericalError when the exponentials cannot be paired into a real
/// Phi (imaginary residue above 1e-9), which would mean a phase-convention bug.
SpectralForm expand_determinant(const Chain& chain);

inline double regularity_margin(const SpectralForm& form) { return form.margin(); }

}  // namespace chainspectra
