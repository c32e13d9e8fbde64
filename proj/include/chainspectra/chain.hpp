#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chainspectra {

/// Reflection and transmission coefficients of an interior vertex.
struct VertexCoefficients {
  double r;  ///< (beta_right - beta_left) / (beta_right + beta_left), signed
  double t;  ///< 2 sqrt(beta_left beta_right) / (beta_left + beta_right)
};

/// A dressed linear chain: vertices b_0 = 0 < b_1 < ... < b_N with Dirichlet
/// walls at both ends and a scaled step potential U = lambda_i E on bond i.
///
/// Bonds are indexed 1..N and interior vertices 1..N-1 in the public
/// interface; vertex i joins bond i (left) and bond i+1 (right).
/// Immutable after construction.
class Chain {
public:
  /// Throws ValidationError on fewer than two vertices, b_0 != 0,
  /// non-increasing positions, a length mismatch, or lambda outside [0, 1).
  static Chain build(std::vector<double> vertices, std::vector<double> lambdas);

  /// Same geometry, specified by the wavenumber factors beta in (0, 1].
  static Chain from_betas(std::vector<double> vertices, std::vector<double> betas);

  std::size_t bonds() const noexcept { return betas_.size(); }
  std::size_t interior_vertices() const noexcept { return betas_.size() - 1; }

  std::span<const double> vertices() const noexcept { return vertices_; }
  std::span<const double> lambdas() const noexcept { return lambdas_; }
  std::span<const double> betas() const noexcept { return betas_; }
  std::span<const double> bond_actions() const noexcept { return actions_; }

  /// 1-based bond accessors.
  double beta(std::size_t bond) const { return betas_.at(bond - 1); }
  double bond_action(std::size_t bond) const { return actions_.at(bond - 1); }

  /// S_0, the sum of all bond actions.
  double total_action() const noexcept { return total_action_; }

  /// Position of the right wall, b_N.
  double length() const noexcept { return vertices_.back(); }

  /// Interior vertex i in [1, N-1]; end vertices are walls and throw.
  VertexCoefficients vertex_coefficients(std::size_t i) const;

private:
  Chain(std::vector<double> vertices, std::vector<double> lambdas, std::vector<double> betas);

  std::vector<double> vertices_;
  std::vector<double> lambdas_;
  std::vector<double> betas_;
  std::vector<double> actions_;
  double total_action_ = 0.0;
};

}  // namespace chainspectra
