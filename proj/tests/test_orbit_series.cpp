#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "chainspectra/error.hpp"
#include "chainspectra/expansion.hpp"
#include "chainspectra/orbit_series.hpp"
#include "chainspectra/orbits.hpp"
#include "chainspectra/spectrum.hpp"

using namespace chainspectra;
using std::numbers::pi;

namespace {

std::map<std::vector<std::uint32_t>, double> by_class(const OrbitSeries& s) {
  std::map<std::vector<std::uint32_t>, double> m;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = s.class_counts(i);
    m[{c.begin(), c.end()}] = s.weights[i];
  }
  return m;
}

// Normal-form determinant at complex k, straight from the coefficient table.
std::complex<double> delta_at(const SpectralForm& f, std::complex<double> k) {
  const std::complex<double> i(0, 1);
  std::complex<double> d = 1.0 + std::exp(2.0 * i * (f.total_action() * k - pi * f.gamma0()));
  for (const auto& t : f.terms()) d -= t.amplitude * std::exp(2.0 * i * (t.action * k - pi * t.phase));
  return d;
}

// Fixed 30-point rule on panels no wider than half a period of frequency s.
template <class F>
double composite_gauss(F f, double a, double b, double s) {
  const int panels = static_cast<int>(std::ceil(s * (b - a) / pi)) + 1;
  const double h = (b - a) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) total += boost::math::quadrature::gauss<double, 30>::integrate(f, a + p * h, a + (p + 1) * h);
  return total;
}

}  // namespace

TEST_CASE("closed-walk aggregation equals the explicit orbit sum") {
  for (const Chain& c : {Chain::build({0, 1, 2}, {0, 0.75}), Chain::build({0, 1, 1.6, 2.9}, {0.2, 0.7, 0.1})}) {
    const OrbitSeries dp = build_orbit_series(c, {0.0, 16});
    const auto orbits = enumerate_orbits(c, 16);
    const OrbitSeries ex = series_from_orbits(c, orbits, 0.0, 64, 16);
    const auto a = by_class(dp);
    const auto b = by_class(ex);
    CHECK(a.size() == b.size());
    for (const auto& [k, w] : b) {
      const auto it = a.find(k);
      REQUIRE(it != a.end());
      CHECK(std::abs(it->second - w) < 1e-13);
    }
  }
}

TEST_CASE("orbit sum exponentiates to the spectral determinant") {
  // Delta(k) = exp(-sum_c W_c e^{i S_c k}) for Im k > 0; this fixes the
  // reflection signs, and the opposite sign choice fails it.
  for (const Chain& c : {Chain::build({0, 1, 2}, {0, 0.75}), Chain::build({0, 1, 1.6, 2.9}, {0.2, 0.7, 0.1})}) {
    const SpectralForm f = expand_determinant(c);
    const OrbitSeries s = build_orbit_series(c, {0.0, 40});
    for (std::complex<double> k : {std::complex<double>(0.7, 1.5), {3.1, 1.2}, {11.0, 2.0}}) {
      std::complex<double> sum = 0;
      for (std::size_t j = 0; j < s.size(); ++j)
        sum += s.weights[j] * std::exp(std::complex<double>(0, 1) * s.actions[j] * k);
      CHECK(std::abs(std::exp(-sum) - delta_at(f, k)) < 1e-7);
    }
  }
}

TEST_CASE("geometric expansion of the two-bond determinant") {
  // 1/Delta to first order: the lowest orbit term is the bond-1 bounce.
  const Chain c = Chain::build({0, 1, 2}, {0, 0.75});
  const double r = c.vertex_coefficients(1).r;
  const OrbitSeries s = build_orbit_series(c, {0.0, 2});
  REQUIRE(s.size() == 2);  // bounces confined to bond 1 and to bond 2
  const auto m = by_class(s);
  CHECK(m.at({2, 0}) == doctest::Approx(r));
  CHECK(m.at({0, 2}) == doctest::Approx(-r));
  const SpectralForm f = expand_determinant(c);
  // Delta's e^{2ik} coefficient is -A(1R1L).
  for (const auto& t : f.terms()) {
    if (std::abs(t.action - 1.0) < 1e-12) {
      const auto coeff = -t.amplitude * std::polar(1.0, -2.0 * pi * t.phase);
      CHECK(std::abs(coeff + r) < 1e-12);
    }
  }
}

TEST_CASE("square well: corrections vanish") {
  const Chain c = Chain::build({0, pi}, {0});
  const SpectralForm f = expand_determinant(c);
  const OrbitSeries s = build_orbit_series(c, {});
  CHECK_FALSE(s.converged);
  const auto ks = eigenvalue_series(f, s, 1, 1000);
  for (std::size_t i = 0; i < ks.size(); ++i) CHECK(std::abs(ks[i] - static_cast<double>(i + 1)) < 1e-9);
}

TEST_CASE("square well: integral of k rho over an interval") {
  const Chain c = Chain::build({0, pi}, {0});
  const SpectralForm f = expand_determinant(c);
  const OrbitSeries s = build_orbit_series(c, {1e-8, 64});
  // The truncated comb is smooth; its first moment still centres on n.
  for (long n : {1L, 2L, 10L, 40L}) CHECK(std::abs(eigenvalue_integral(f, s, n) - static_cast<double>(n)) < 1e-9);
}

TEST_CASE("leading term alone") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.19});
  const SpectralForm f = expand_determinant(c);
  OrbitSeries empty;
  empty.bonds = 2;
  empty.total_action = c.total_action();
  for (long n : {1L, 7L, 50L}) CHECK(eigenvalue_series(f, empty, n) == pi * static_cast<double>(n) / c.total_action());
}

TEST_CASE("low-contrast series converges to the roots") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.19});
  const SpectralForm f = expand_determinant(c);
  REQUIRE(f.margin() > 0);
  const auto roots = find_roots(f, 1, 50);
  auto max_error = [&](double thr) {
    const OrbitSeries s = build_orbit_series(c, {thr, 0});
    for (double w : s.weights) REQUIRE(std::abs(w) >= thr);
    const auto ks = eigenvalue_series(f, s, 1, 50);
    double worst = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) worst = std::max(worst, std::abs(ks[i] - roots[i].root));
    return worst;
  };
  const double spacing = pi / f.total_action();
  const double coarse = max_error(1e-4);
  const double fine = max_error(1e-8);
  CHECK(fine < 1e-3 * spacing);
  CHECK(coarse >= 2.0 * fine);
}

TEST_CASE("refused on irregular chains") {
  const Chain c = Chain::build({0, 1, 1.7, 3.1, 4}, {0, 0.96, 0.1, 0.9});
  const SpectralForm f = expand_determinant(c);
  REQUIRE(f.margin() <= 0);
  const OrbitSeries s = build_orbit_series(c, {1e-4, 8});
  CHECK_THROWS_AS(eigenvalue_series(f, s, 1), RefusalError);
}

TEST_CASE("density of states integrates to one per interval") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.19});
  const SpectralForm f = expand_determinant(c);
  const OrbitSeries s = build_orbit_series(c, {1e-8, 256});
  for (long n = 1; n <= 20; ++n) CHECK(std::abs(density_integral(f, s, n) - 1.0) < 0.05);
}

TEST_CASE("eigenvalue integral against the series") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.19});
  const SpectralForm f = expand_determinant(c);
  const OrbitSeries s = build_orbit_series(c, {1e-8, 256});
  const SeparatorGrid g = separator_grid(f);
  const double h = 0.5 * g.spacing;
  for (long n = 1; n <= 20; ++n) {
    const double a = g(n - 1), b = g(n);
    // Integrating k rho by parts leaves boundary terms next to the series.
    const double nb = oscillating_staircase(s, b), na = oscillating_staircase(s, a);
    const double boundary = 0.5 * (a + b) * (nb - na) + h * (nb + na);
    const double integral = eigenvalue_integral(f, s, n);
    const double series = eigenvalue_series(f, s, n);
    CHECK(std::abs(integral - series - boundary) < 1e-10);
  }
}

TEST_CASE("per-term integral identity") {
  const Chain c = Chain::build({0, 1, 2}, {0, 0.19});
  const SpectralForm f = expand_determinant(c);
  const OrbitSeries s = build_orbit_series(c, {1e-6, 64});
  const SeparatorGrid g = separator_grid(f);
  const double s0 = f.total_action();
  for (long n : {1L, 4L, 13L}) {
    const double a = g(n - 1), b = g(n);
    for (std::size_t j = 0; j < s.size(); j += std::max<std::size_t>(1, s.size() / 25)) {
      const double W = s.weights[j], S = s.actions[j];
      const double term = -2.0 / pi * (W / S) * std::sin(pi * S / (2 * s0)) * std::sin(pi * S * n / s0);
      // -integral of (1/pi) W sin(S k) over the interval
      const double analytic_n = W / (pi * S) * (std::cos(S * b) - std::cos(S * a));
      CHECK(std::abs(analytic_n - term) < 1e-12);
      // integral of k (1/pi) W S cos(S k), analytically and by quadrature
      const double analytic_k = W / pi * (b * std::sin(S * b) - a * std::sin(S * a) +
                                          (std::cos(S * b) - std::cos(S * a)) / S);
      const double numeric = composite_gauss([&](double k) { return k * W * S * std::cos(S * k) / pi; }, a, b, S);
      CHECK(std::abs(analytic_k - numeric) < 1e-12);
    }
  }
}

TEST_CASE("default code length budget") {
  CHECK(default_max_code_length(1) == 4096);
  CHECK(default_max_code_length(2) == 4096);
  CHECK(default_max_code_length(3) == 240);
  CHECK(default_max_code_length(6) >= 1);
  CHECK_THROWS_AS(build_orbit_series(Chain::build({0, 1}, {0}), {-1.0, 0}), ValidationError);
  CHECK_THROWS_AS(build_orbit_series(Chain::build({0, 1}, {0}), {1e-8, 5000}), ValidationError);
}

TEST_CASE("threshold stops the length sweep") {
  // Strong contrast: class weights fall below 1e-2 around code length 100.
  const Chain c = Chain::build({0, 1, 2}, {0.0, 0.9});
  const OrbitSeries s = build_orbit_series(c, {1e-2, 200});
  CHECK(s.converged);
  CHECK(s.max_code_length < 200);
}
