#include "chainspectra/chain.hpp"

#include <cmath>
#include <string>

#include "chainspectra/error.hpp"

namespace chainspectra {
namespace {

void check_vertices(const std::vector<double>& vertices) {
  if (vertices.size() < 2) {
    throw ValidationError("a chain needs at least 2 vertices (1 bond), got " +
                          std::to_string(vertices.size()));
  }
  for (double b : vertices) {
    if (!std::isfinite(b)) throw ValidationError("vertex positions must be finite");
  }
  if (vertices.front() != 0.0) {
    throw ValidationError("the first vertex must sit at 0, got " + std::to_string(vertices.front()));
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i] > vertices[i - 1])) {
      throw ValidationError("vertex positions must be strictly increasing (vertex " +
                            std::to_string(i) + ")");
    }
  }
}

}  // namespace

Chain Chain::build(std::vector<double> vertices, std::vector<double> lambdas) {
  check_vertices(vertices);
  if (lambdas.size() + 1 != vertices.size()) {
    throw ValidationError("expected " + std::to_string(vertices.size() - 1) +
                          " lambdas (one per bond), got " + std::to_string(lambdas.size()));
  }
  std::vector<double> betas(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l = lambdas[i];
    if (!(l >= 0.0 && l < 1.0)) {
      throw ValidationError("lambda for bond " + std::to_string(i + 1) +
                            " must lie in [0, 1), got " + std::to_string(l));
    }
    betas[i] = std::sqrt(1.0 - l);
  }
  return Chain(std::move(vertices), std::move(lambdas), std::move(betas));
}

Chain Chain::from_betas(std::vector<double> vertices, std::vector<double> betas) {
  check_vertices(vertices);
  if (betas.size() + 1 != vertices.size()) {
    throw ValidationError("expected " + std::to_string(vertices.size() - 1) +
                          " betas (one per bond), got " + std::to_string(betas.size()));
  }
  std::vector<double> lambdas(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    if (!(b > 0.0 && b <= 1.0)) {
      throw ValidationError("beta for bond " + std::to_string(i + 1) +
                            " must lie in (0, 1], got " + std::to_string(b));
    }
    lambdas[i] = 1.0 - b * b;
  }
  return Chain(std::move(vertices), std::move(lambdas), std::move(betas));
}

Chain::Chain(std::vector<double> vertices, std::vector<double> lambdas, std::vector<double> betas)
    : vertices_(std::move(vertices)), lambdas_(std::move(lambdas)), betas_(std::move(betas)) {
  actions_.resize(betas_.size());
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    actions_[i] = betas_[i] * (vertices_[i + 1] - vertices_[i]);
    total_action_ += actions_[i];
  }
}

VertexCoefficients Chain::vertex_coefficients(std::size_t i) const {
  if (i < 1 || i >= bonds()) {
    throw ValidationError("vertex " + std::to_string(i) +
                          " is not interior; walls at 0 and " + std::to_string(bonds()) +
                          " carry no scattering coefficients");
  }
  const double left = betas_[i - 1];
  const double right = betas_[i];
  const double sum = left + right;
  return {(right - left) / sum, 2.0 * std::sqrt(left * right) / sum};
}

}  // namespace chainspectra
