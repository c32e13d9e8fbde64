#include "chainspectra/transfer.hpp"

#include <string>

#include "chainspectra/error.hpp"

namespace chainspectra {
namespace {

ComplexMatrix2 stripped_vertex_matrix(const Chain& chain, std::size_t vertex, double k,
                                      double r) {
  const double x = chain.vertices()[vertex];
  const double left = chain.betas()[vertex - 1];
  const double right = chain.betas()[vertex];
  const double diff = k * (left - right) * x;
  const double sum = k * (left + right) * x;
  return {std::polar(1.0, diff), r * std::polar(1.0, -sum), r * std::polar(1.0, sum),
          std::polar(1.0, -diff)};
}

}  // namespace

ComplexMatrix2 transfer_matrix(const Chain& chain, std::size_t vertex, double k) {
  const VertexCoefficients rt = chain.vertex_coefficients(vertex);
  return stripped_vertex_matrix(chain, vertex, k, rt.r).scaled(1.0 / rt.t);
}

ComplexMatrix2 total_transfer(const Chain& chain, double k) {
  ComplexMatrix2 total;
  for (std::size_t i = 1; i < chain.bonds(); ++i) total = transfer_matrix(chain, i, k) * total;
  return total;
}

ComplexMatrix2 stripped_total_transfer(const Chain& chain, double k) {
  ComplexMatrix2 total;
  for (std::size_t i = 1; i < chain.bonds(); ++i) {
    const double r = chain.vertex_coefficients(i).r;
    total = stripped_vertex_matrix(chain, i, k, r) * total;
  }
  return total;
}

double determinant_phase_offset(const Chain& chain) {
  return chain.betas().back() * chain.length() - chain.total_action();
}

std::complex<double> delta_numeric(const Chain& chain, double k) {
  const ComplexMatrix2 t = stripped_total_transfer(chain, k);
  const double last_phase = chain.betas().back() * k * chain.length();
  const std::complex<double> raw = std::polar(1.0, 2.0 * last_phase) * (t.m11 - t.m12) + t.m21 - t.m22;
  return -std::polar(1.0, -k * determinant_phase_offset(chain)) * raw;
}

}  // namespace chainspectra
