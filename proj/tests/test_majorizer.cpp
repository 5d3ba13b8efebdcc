#include <doctest.h>

#include <cmath>

#include "spr/majorizer.hpp"
#include "spr/rng.hpp"

using namespace spr;

TEST_CASE("data_error examples") {
  CHECK(data_error({1.0, 0.0}, 1.0, 2.0) == 0.0);
  CHECK(data_error({0.0, 0.0}, 1.0, 2.0) == 1.0);
  CHECK(data_error({2.0, 0.0}, 1.0, 2.0) == 3.0);
}

TEST_CASE("tangent surrogate examples") {
  // Tangency with the concave branch at t = s.
  const MajorizationPoint pt{{0.7, -0.3}, 1.3, 2.0};
  const double at_s = tangent_surrogate(pt.s, pt);
  CHECK(at_s == doctest::Approx(pt.y - std::norm(pt.s)).epsilon(1e-14));

  CHECK(tangent_surrogate({0.0, 0.0}, {{1.0, 0.0}, 1.0, 2.0}) == doctest::Approx(2.0));

  // q = 1 with s = 0 is the constant plane y.
  CHECK(tangent_surrogate({5.0, 2.0}, {{0.0, 0.0}, 0.8, 1.0}) == 0.8);
  CHECK(tangent_surrogate({-3.0, 0.0}, {{0.0, 0.0}, 0.8, 1.0}) == 0.8);
}

TEST_CASE("majorizer pinned values") {
  // Concave-region point: tangency gives the data error itself.
  CHECK(majorizer_value({0.5, 0.0}, {{0.5, 0.0}, 1.0, 2.0}) == doctest::Approx(0.75));
  // Convex-region point: tangent is moved to the circle |t|^2 = y.
  CHECK(majorizer_value({1.0, 0.0}, {{2.0, 0.0}, 1.0, 2.0}) == doctest::Approx(0.0));
}

TEST_CASE("majorizer dominates the data error on a grid") {
  const MajorizationPoint pt{{0.5, 0.0}, 1.0, 2.0};
  double worst = 0.0;
  for (double re = -3.0; re <= 3.0; re += 0.05) {
    for (double im = -3.0; im <= 3.0; im += 0.05) {
      const Complex t{re, im};
      worst = std::min(worst, majorizer_value(t, pt) - data_error(t, pt.y, pt.q));
    }
  }
  CHECK(worst >= -1e-12);
}

TEST_CASE("majorizer properties: tangency, domination, convexity") {
  Rng rng(42);
  const double qs[3] = {1.0, 2.0, 3.0};
  for (int trial = 0; trial < 2000; ++trial) {
    const double q = qs[trial % 3];
    const double y = rng.uniform(-1.0, 2.0);
    const Complex s = rng.complex_normal(1.0);
    const Complex t1 = rng.complex_normal(1.5);
    const Complex t2 = rng.complex_normal(1.5);
    const MajorizationPoint pt{s, y, q};

    // Tangency at the expansion point.
    CHECK(majorizer_value(s, pt) ==
          doctest::Approx(data_error(s, y, q)).epsilon(1e-12).scale(1.0));

    // Domination everywhere.
    CHECK(majorizer_value(t1, pt) >= data_error(t1, y, q) - 1e-12);
    CHECK(majorizer_value(t2, pt) >= data_error(t2, y, q) - 1e-12);

    // Convexity along random chords.
    const double lambda = rng.uniform();
    const Complex mid = lambda * t1 + (1.0 - lambda) * t2;
    CHECK(majorizer_value(mid, pt) <=
          lambda * majorizer_value(t1, pt) + (1.0 - lambda) * majorizer_value(t2, pt) + 1e-12);
  }
}

TEST_CASE("objective values") {
  const std::size_t n = 16;
  IndexVector mask(n);
  for (std::size_t i = 0; i < n; ++i) mask[i] = i;
  const auto op = SensingOperator::masked_dft(n, mask);
  const auto sig = generate_sparse_signal(n, 3, 77);
  const auto meas = simulate_measurements(sig, op, 2.0);

  const NoiseModel laplace{1, 2.0};
  const NoiseModel gaussian{2, 2.0};

  // Zero signal, zero data.
  MeasurementSet zeros = meas;
  for (auto& y : zeros.y) y = 0.0;
  const ComplexVector x0(n, Complex{0.0, 0.0});
  CHECK(objective_psi(x0, zeros, op, laplace, 0.7) == 0.0);

  // Zero signal, arbitrary data, p = 1: sum |y|.
  double sum_abs = 0.0;
  for (double y : meas.y) sum_abs += std::abs(y);
  CHECK(objective_psi(x0, meas, op, laplace, 0.7) == doctest::Approx(sum_abs));

  // Consistent signal: only the l1 term survives.
  for (const auto& model : {laplace, gaussian}) {
    const double psi = objective_psi(sig.vector, meas, op, model, 0.3);
    CHECK(psi == doctest::Approx(0.3 * norm1(sig.vector)).epsilon(1e-10));
  }
}

TEST_CASE("surrogate matches the objective at s = Ax") {
  Rng rng(43);
  const std::size_t n = 32;
  IndexVector mask(n);
  for (std::size_t i = 0; i < n; ++i) mask[i] = i;
  const auto op = SensingOperator::masked_dft(n, mask);
  const auto sig = generate_sparse_signal(n, 4, 5);
  auto meas = simulate_measurements(sig, op, 2.0);
  meas = inject_outliers(meas, 3, 6);

  for (const NoiseModel model : {NoiseModel{1, 2.0}, NoiseModel{2, 2.0}}) {
    for (int rep = 0; rep < 50; ++rep) {
      ComplexVector x(n);
      for (auto& z : x) z = rng.complex_normal(1.0);
      const ComplexVector ax = op.apply(x);
      const double psi = objective_psi(x, meas, op, model, 0.4);
      const double phi = surrogate_phi(x, ax, meas, op, model, 0.4);
      CHECK(phi == doctest::Approx(psi).epsilon(1e-10));

      // Any s dominates.
      ComplexVector s(n);
      for (auto& z : s) z = rng.complex_normal(1.0);
      CHECK(surrogate_phi(x, s, meas, op, model, 0.4) >= psi - 1e-10);
    }
  }

  // x = 0, s = 0, y > 0, p = 1: Phi = sum y.
  const ComplexVector x0(n, Complex{0.0, 0.0});
  const ComplexVector s0(n, Complex{0.0, 0.0});
  double sum_y = 0.0;
  for (double y : meas.y) sum_y += y;
  CHECK(surrogate_phi(x0, s0, meas, op, NoiseModel{1, 2.0}, 0.0) == doctest::Approx(sum_y));
}
