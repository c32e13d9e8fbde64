#include "chainspectra/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chainspectra/error.hpp"
#include "chainspectra/kernels.hpp"
#include "chainspectra/transfer.hpp"

namespace chainspectra {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPairingTolerance = 1e-9;

// Maps x into [0, period).
double wrap(double x, double period) {
  double w = std::fmod(x, period);
  if (w < 0.0) w += period;
  if (w >= period) w -= period;
  return w + 0.0;  // no -0 in output
}

// gamma such that c = |c| e^{-2 pi i gamma}, gamma in [0, 1).
double exponent_phase(std::complex<double> c) { return wrap(-std::arg(c) / (2.0 * kPi), 1.0); }

}  // namespace

SpectralForm::SpectralForm(double total_action, double gamma0, std::vector<SpectralTerm> terms,
                           std::vector<SpectralTerm> pairs)
    : total_action_(total_action),
      gamma0_(gamma0),
      terms_(std::move(terms)),
      pairs_(std::move(pairs)),
      margin_(1.0) {
  for (const auto& p : pairs_) margin_ -= std::abs(p.amplitude);

  auto push_delta = [this](std::complex<double> c, double freq) {
    delta_re_.push_back(c.real());
    delta_im_.push_back(c.imag());
    delta_freq_.push_back(freq);
  };
  push_delta(1.0, 0.0);
  push_delta(std::polar(1.0, -2.0 * kPi * gamma0_), 2.0 * total_action_);
  for (const auto& t : terms_) push_delta(-std::polar(t.amplitude, -2.0 * kPi * t.phase), 2.0 * t.action);

  f_amp_.push_back(1.0);
  f_freq_.push_back(total_action_);
  f_phase_.push_back(-kPi * gamma0_);
  for (const auto& p : pairs_) {
    phi_amp_.push_back(p.amplitude);
    phi_freq_.push_back(2.0 * p.action - total_action_);
    phi_phase_.push_back(-kPi * p.phase);
    f_amp_.push_back(-p.amplitude);
    f_freq_.push_back(phi_freq_.back());
    f_phase_.push_back(phi_phase_.back());
  }
}

std::complex<double> SpectralForm::evaluate(double k) const {
  return kernels::expi_sum(delta_re_, delta_im_, delta_freq_, k);
}

double SpectralForm::characteristic(double k) const {
  return kernels::cos_phase_sum(phi_amp_, phi_freq_, phi_phase_, k);
}

double SpectralForm::spectral_function(double k) const {
  return kernels::cos_phase_sum(f_amp_, f_freq_, f_phase_, k);
}

ExpSumPolicy expansion_policy(const Chain& chain) {
  ExpSumPolicy policy;
  policy.merge_tolerance = 1e-9 * chain.total_action();
  return policy;
}

SymbolicTransfer expand_transfer(const Chain& chain) {
  const ExpSumPolicy policy = expansion_policy(chain);
  SymbolicTransfer t{ExponentialSum::monomial(1.0, 0.0), {}, {}, ExponentialSum::monomial(1.0, 0.0), 1.0};
  for (std::size_t i = 1; i < chain.bonds(); ++i) {
    const VertexCoefficients rt = chain.vertex_coefficients(i);
    const double x = chain.vertices()[i];
    const double left = chain.betas()[i - 1];
    const double right = chain.betas()[i];
    const auto v11 = ExponentialSum::monomial(1.0, (left - right) * x);
    const auto v12 = ExponentialSum::monomial(rt.r, -(left + right) * x);
    const auto v21 = ExponentialSum::monomial(rt.r, (left + right) * x);
    const auto v22 = ExponentialSum::monomial(1.0, (right - left) * x);
    SymbolicTransfer next;
    next.m11 = add(multiply(v11, t.m11, policy), multiply(v12, t.m21, policy), policy);
    next.m12 = add(multiply(v11, t.m12, policy), multiply(v12, t.m22, policy), policy);
    next.m21 = add(multiply(v21, t.m11, policy), multiply(v22, t.m21, policy), policy);
    next.m22 = add(multiply(v21, t.m12, policy), multiply(v22, t.m22, policy), policy);
    next.prefactor = t.prefactor / rt.t;
    t = std::move(next);
  }
  return t;
}

ExponentialSum expand_delta(const Chain& chain) {
  const ExpSumPolicy policy = expansion_policy(chain);
  const SymbolicTransfer t = expand_transfer(chain);
  const double wall_freq = 2.0 * chain.betas().back() * chain.length();
  const ExponentialSum raw =
      add(subtract(t.m11, t.m12, policy).shifted(wall_freq), subtract(t.m21, t.m22, policy), policy);
  if (raw.empty()) throw NumericalError("expansion: the determinant vanished identically");

  const ExpTerm lowest = raw.terms().front();
  const double offset = determinant_phase_offset(chain);
  if (std::abs(lowest.freq - offset) > policy.merge_tolerance ||
      std::abs(std::abs(lowest.coeff) - 1.0) > kPairingTolerance) {
    throw NumericalError("expansion: unexpected lowest-order term of the determinant");
  }
  // Exact normal form: constant term 1 at frequency 0.
  std::vector<ExpTerm> terms;
  terms.reserve(raw.size());
  for (const auto& term : raw.terms()) terms.push_back({term.coeff / lowest.coeff, term.freq - offset});
  terms.front() = {1.0, 0.0};
  return ExponentialSum(std::move(terms), policy);
}

SpectralForm expand_determinant(const Chain& chain) {
  const ExponentialSum delta = expand_delta(chain);
  const double s0 = chain.total_action();
  const double tol = expansion_policy(chain).merge_tolerance;

  const ExpTerm& top = delta.terms().back();
  if (delta.size() < 2 || std::abs(top.freq - 2.0 * s0) > tol ||
      std::abs(std::abs(top.coeff) - 1.0) > kPairingTolerance) {
    throw NumericalError("expansion: the highest-order term is not a unit exponential at 2 S_0");
  }
  const double gamma0 = exponent_phase(top.coeff);

  // Delta = 1 + top - sum_j c_j e^{2 i S_j k}
  struct Raw {
    std::complex<double> c;
    double action;
  };
  std::vector<Raw> inner;
  std::vector<SpectralTerm> terms;
  for (std::size_t j = 1; j + 1 < delta.size(); ++j) {
    const auto& term = delta.terms()[j];
    const std::complex<double> c = -term.coeff;
    inner.push_back({c, 0.5 * term.freq});
    terms.push_back({std::abs(c), 0.5 * term.freq, exponent_phase(c)});
  }

  // Phi(k) = (1/2) e^{i pi gamma_0} sum_j c_j e^{i (2 S_j - S_0) k}; partners
  // S_j and S_0 - S_j must carry complex-conjugate weights.
  const std::complex<double> rotation = std::polar(0.5, kPi * gamma0);
  const double half = 0.5 * s0;
  std::vector<bool> used(inner.size(), false);
  std::vector<SpectralTerm> pairs;

  auto find_partner = [&](double action) -> std::ptrdiff_t {
    const auto it = std::lower_bound(inner.begin(), inner.end(), action - tol,
                                     [](const Raw& r, double v) { return r.action < v; });
    if (it != inner.end() && std::abs(it->action - action) <= tol) return it - inner.begin();
    return -1;
  };
  auto check_residue = [](double residue, double action) {
    if (residue > kPairingTolerance) {
      throw NumericalError("expansion: pairing failure at S = " + std::to_string(action) +
                           " (imaginary residue " + std::to_string(residue) + ")");
    }
  };

  for (std::size_t j = inner.size(); j-- > 0;) {
    if (used[j]) continue;
    used[j] = true;
    const Raw& upper = inner[j];
    const std::complex<double> z_upper = rotation * upper.c;
    if (std::abs(upper.action - half) <= tol) {
      check_residue(std::abs(z_upper.imag()), upper.action);
      pairs.push_back({std::abs(z_upper.real()), half, z_upper.real() >= 0.0 ? 0.0 : 1.0});
      continue;
    }
    std::complex<double> z_lower = 0.0;
    if (upper.action > half) {
      const std::ptrdiff_t p = find_partner(s0 - upper.action);
      if (p >= 0 && !used[static_cast<std::size_t>(p)]) {
        used[static_cast<std::size_t>(p)] = true;
        z_lower = rotation * inner[static_cast<std::size_t>(p)].c;
      }
      check_residue(std::abs(z_upper - std::conj(z_lower)), upper.action);
      const std::complex<double> z = 0.5 * (z_upper + std::conj(z_lower));
      pairs.push_back({2.0 * std::abs(z), upper.action, wrap(-std::arg(z) / kPi, 2.0)});
    } else {
      // A lower term without an upper partner.
      check_residue(std::abs(z_upper), upper.action);
      const std::complex<double> z = 0.5 * std::conj(z_upper);
      pairs.push_back({2.0 * std::abs(z), s0 - upper.action, wrap(-std::arg(z) / kPi, 2.0)});
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const SpectralTerm& a, const SpectralTerm& b) { return a.action < b.action; });
  return SpectralForm(s0, gamma0, std::move(terms), std::move(pairs));
}

}  // namespace chainspectra
