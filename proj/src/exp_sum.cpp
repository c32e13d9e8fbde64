#include "chainspectra/exp_sum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chainspectra/error.hpp"

namespace chainspectra {
namespace {

// Sorts by frequency, merges runs whose frequencies lie within tolerance of
// the run's first term and drops negligible coefficients.
std::vector<ExpTerm> normalize(std::vector<ExpTerm> terms, const ExpSumPolicy& policy) {
  std::sort(terms.begin(), terms.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return a.freq < b.freq; });
  std::vector<ExpTerm> out;
  out.reserve(terms.size());
  std::size_t i = 0;
  while (i < terms.size()) {
    ExpTerm merged = terms[i];
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].freq - terms[i].freq < policy.merge_tolerance) {
      merged.coeff += terms[j].coeff;
      ++j;
    }
    if (std::abs(merged.coeff) >= policy.drop_threshold) out.push_back(merged);
    i = j;
  }
  return out;
}

}  // namespace

ExponentialSum::ExponentialSum(std::vector<ExpTerm> terms, const ExpSumPolicy& policy)
    : terms_(normalize(std::move(terms), policy)) {}

std::complex<double> ExponentialSum::operator()(double k) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) acc += t.coeff * std::polar(1.0, t.freq * k);
  return acc;
}

ExponentialSum ExponentialSum::shifted(double delta_freq) const {
  ExponentialSum out = *this;
  for (auto& t : out.terms_) t.freq += delta_freq;
  return out;
}

ExponentialSum ExponentialSum::scaled(std::complex<double> factor) const {
  ExponentialSum out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

ExponentialSum add(const ExponentialSum& a, const ExponentialSum& b, const ExpSumPolicy& policy) {
  std::vector<ExpTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return ExponentialSum(std::move(terms), policy);
}

ExponentialSum subtract(const ExponentialSum& a, const ExponentialSum& b, const ExpSumPolicy& policy) {
  return add(a, b.scaled(-1.0), policy);
}

ExponentialSum multiply(const ExponentialSum& a, const ExponentialSum& b, const ExpSumPolicy& policy) {
  const std::size_t raw = a.size() * b.size();
  if (raw > policy.max_terms) {
    throw ValidationError("exponential sum product would hold " + std::to_string(raw) +
                          " terms, above the cap of " + std::to_string(policy.max_terms));
  }
  std::vector<ExpTerm> terms;
  terms.reserve(raw);
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) terms.push_back({x.coeff * y.coeff, x.freq + y.freq});
  }
  return ExponentialSum(std::move(terms), policy);
}

}  // namespace chainspectra
