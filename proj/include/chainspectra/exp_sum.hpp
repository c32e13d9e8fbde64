#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace chainspectra {

/// One term c * exp(i k omega).
struct ExpTerm {
  std::complex<double> coeff;
  double freq;
};

/// Merge and drop rules applied after every arithmetic operation.
struct ExpSumPolicy {
  double merge_tolerance = 1e-12;  ///< |omega - omega'| below this merges two terms
  double drop_threshold = 1e-15;   ///< |c| below this removes a term
  std::size_t max_terms = std::size_t{1} << 20;
};

/// A finite exponential sum sum_j c_j exp(i k omega_j), kept sorted by
/// frequency with no two terms closer than the merge tolerance.
class ExponentialSum {
public:
  ExponentialSum() = default;
  explicit ExponentialSum(std::vector<ExpTerm> terms, const ExpSumPolicy& policy = {});

  static ExponentialSum monomial(std::complex<double> coeff, double freq) {
    ExponentialSum s;
    if (coeff != 0.0) s.terms_.push_back({coeff, freq});
    return s;
  }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Direct term-by-term evaluation at real k.
  std::complex<double> operator()(double k) const;

  ExponentialSum shifted(double delta_freq) const;
  ExponentialSum scaled(std::complex<double> factor) const;

  friend ExponentialSum add(const ExponentialSum& a, const ExponentialSum& b,
                            const ExpSumPolicy& policy);
  friend ExponentialSum subtract(const ExponentialSum& a, const ExponentialSum& b,
                                 const ExpSumPolicy& policy);

private:
  std::vector<ExpTerm> terms_;
};

ExponentialSum add(const ExponentialSum& a, const ExponentialSum& b, const ExpSumPolicy& policy = {});
ExponentialSum subtract(const ExponentialSum& a, const ExponentialSum& b,
                        const ExpSumPolicy& policy = {});

/// Frequency-convolved product. Throws ValidationError when the raw product
/// would exceed policy.max_terms.
ExponentialSum multiply(const ExponentialSum& a, const ExponentialSum& b,
                        const ExpSumPolicy& policy = {});

}  // namespace chainspectra
