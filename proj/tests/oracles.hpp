#pragma once
// Reference computations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Matching conditions for psi_j(x) = A_j sin(q_j (x - b_{j-1})) + B_j cos(q_j (x - b_{j-1})),
/// q_j = beta_j k: psi(0) = 0, psi(b_N) = 0, psi and psi' continuous at interior vertices.
inline Eigen::MatrixXd matching_matrix(const std::vector<double>& b, const std::vector<double>& beta, double k) {
  const std::size_t n = beta.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m(0, 1) = 1.0;  // B_1 = 0
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double q = beta[j] * k;
    const double len = b[j + 1] - b[j];
    const double qn = beta[j + 1] * k;
    const auto row = 1 + 2 * j;
    m(row, 2 * j) = std::sin(q * len);
    m(row, 2 * j + 1) = std::cos(q * len);
    m(row, 2 * j + 3) = -1.0;
    m(row + 1, 2 * j) = q * std::cos(q * len);
    m(row + 1, 2 * j + 1) = -q * std::sin(q * len);
    m(row + 1, 2 * j + 2) = -qn;
  }
  const double q = beta[n - 1] * k;
  const double len = b[n] - b[n - 1];
  m(2 * n - 1, 2 * n - 2) = std::sin(q * len);
  m(2 * n - 1, 2 * n - 1) = std::cos(q * len);
  return m;
}

/// sigma_min / sigma_max of the matching matrix; vanishes on eigenvalues.
inline double matching_singularity(const std::vector<double>& b, const std::vector<double>& beta, double k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matching_matrix(b, beta, k));
  const auto& s = svd.singularValues();
  return s(s.size() - 1) / s(0);
}

/// Plain bisection to adjacent doubles on a bracketing interval.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Directed-bond adjacency built from the chain picture: state 2j is bond j
/// heading right, 2j+1 heading left.
inline IntMatrix chain_adjacency(std::size_t bonds) {
  const std::size_t s = 2 * bonds;
  IntMatrix m(s, std::vector<std::int64_t>(s, 0));
  for (std::size_t j = 0; j < bonds; ++j) {
    m[2 * j][2 * j + 1] = 1;                      // bounce back at the right end
    if (j + 1 < bonds) m[2 * j][2 * j + 2] = 1;   // pass to the next bond
    m[2 * j + 1][2 * j] = 1;
    if (j > 0) m[2 * j + 1][2 * j - 1] = 1;
  }
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// trace(M^L) for L = 0..max.
inline std::vector<std::int64_t> traces(const IntMatrix& m, int max) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(max) + 1, 0);
  IntMatrix p = m;
  for (int l = 1; l <= max; ++l) {
    for (std::size_t i = 0; i < m.size(); ++i) t[static_cast<std::size_t>(l)] += p[i][i];
    p = multiply(p, m);
  }
  return t;
}

inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  return n > 1 ? -result : result;
}

/// Number of primitive cycles of length L: (1/L) sum_{d | L} mu(L/d) tr(M^d).
inline std::vector<std::int64_t> primitive_counts(const IntMatrix& m, int max) {
  const auto tr = traces(m, max);
  std::vector<std::int64_t> out(static_cast<std::size_t>(max) + 1, 0);
  for (int l = 1; l <= max; ++l) {
    std::int64_t sum = 0;
    for (int d = 1; d <= l; ++d)
      if (l % d == 0) sum += mobius(l / d) * tr[static_cast<std::size_t>(d)];
    out[static_cast<std::size_t>(l)] = sum / l;
  }
  return out;
}

inline double spectral_radius(const IntMatrix& m) {
  Eigen::MatrixXd d(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) d(i, j) = static_cast<double>(m[i][j]);
  return d.eigenvalues().cwiseAbs().maxCoeff();
}

/// Stationary distribution of the classical walk by power iteration on the
/// lazy chain (P + I)/2, which removes the period-2 oscillation of chains.
inline std::vector<double> stationary(const std::vector<double>& beta) {
  const std::size_t n = beta.size();
  const std::size_t s = 2 * n;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(s, s);
  for (std::size_t j = 0; j < n; ++j) {
    if (j + 1 == n) {
      p(2 * j, 2 * j + 1) = 1.0;
    } else {
      const double r = (beta[j + 1] - beta[j]) / (beta[j + 1] + beta[j]);
      p(2 * j, 2 * j + 1) = r * r;
      p(2 * j, 2 * j + 2) = 1.0 - r * r;
    }
    if (j == 0) {
      p(1, 0) = 1.0;
    } else {
      const double r = (beta[j] - beta[j - 1]) / (beta[j] + beta[j - 1]);
      p(2 * j + 1, 2 * j) = r * r;
      p(2 * j + 1, 2 * j - 1) = 1.0 - r * r;
    }
  }
  const Eigen::MatrixXd lazy = 0.5 * (p + Eigen::MatrixXd::Identity(s, s));
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(s, 1.0 / s);
  pi(0) += 0.1;
  pi /= pi.sum();
  for (int i = 0; i < 20000; ++i) pi = pi * lazy;
  return {pi.data(), pi.data() + s};
}

struct RandomChain {
  std::vector<double> vertices;
  std::vector<double> lambdas;
};

inline RandomChain random_chain(std::mt19937_64& rng, std::size_t bonds, double lambda_max = 0.95) {
  std::uniform_real_distribution<double> len(0.3, 2.0);
  std::uniform_real_distribution<double> lam(0.0, lambda_max);
  RandomChain c{{0.0}, {}};
  for (std::size_t j = 0; j < bonds; ++j) {
    c.vertices.push_back(c.vertices.back() + len(rng));
    c.lambdas.push_back(lam(rng));
  }
  return c;
}

}  // namespace oracle
