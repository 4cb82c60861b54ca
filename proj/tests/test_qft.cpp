#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qtf/errors.hpp"
#include "qtf/qft.hpp"

using namespace qtf;

namespace {

constexpr double kFourPiSq = 4 * std::numbers::pi * std::numbers::pi;

double spectrum_energy(const GridSignal2D& F) { return l2_norm_squared(F); }

}  // namespace

TEST_CASE("frequency axis is reciprocal and centered") {
  const Axis x = Axis::centered(64, 8.0);
  const Axis w = frequency_axis(x);
  CHECK(w.n == 64);
  CHECK(w.step * x.step * 64 == doctest::Approx(2 * std::numbers::pi));
  CHECK(w.coordinate(31) == doctest::Approx(-w.coordinate(32)));
  CHECK(w.coordinate(31) < 0.0);
}

TEST_CASE("fast path matches the literal sum") {
  for (std::size_t n : {16u, 12u}) {
    const Axis x = Axis::centered(n, 3.0);
    const QftPlan fast = QftPlan::for_grid(x, x, SumMode::fast);
    const QftPlan direct = QftPlan::for_grid(x, x, SumMode::direct);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const GridSignal2D f = oracle::random_signal(x, x, seed);
      const auto F = oracle::samples(qft_forward(f, fast));
      const auto D = oracle::samples(qft_forward(f, direct));
      CHECK(oracle::max_abs(F, D) < 1e-9);
      CHECK(oracle::max_abs(D, oracle::qft(f, fast.w1, fast.w2)) < 1e-11);
    }
  }
}

TEST_CASE("impulse transforms to a pure phase") {
  const Axis x = Axis::centered(16, 4.0);
  const QftPlan plan = QftPlan::for_grid(x, x);
  const GridSignal2D F = qft_forward(gen_impulse(x, x, 3, 11), plan);
  const double x1 = x.coordinate(3), x2 = x.coordinate(11);
  for (std::size_t m1 = 0; m1 < 16; ++m1) {
    for (std::size_t m2 = 0; m2 < 16; ++m2) {
      const Quaternion expected =
          oracle::mul(oracle::expi(-plan.w1.coordinate(m1) * x1), oracle::expj(-plan.w2.coordinate(m2) * x2));
      CHECK(max_abs_diff(F(m1, m2), expected) < 1e-12);
    }
  }
  for (double m : qft_modulus(F)) CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Gaussian matches its closed-form transform") {
  const Axis x = Axis::centered(128, 8.0);
  const QftPlan plan = QftPlan::for_grid(x, x);
  const GridSignal2D F = qft_forward(gen_gaussian(x, x, 0.5), plan);
  double worst = 0.0;
  for (std::size_t m1 = 0; m1 < 128; ++m1) {
    for (std::size_t m2 = 0; m2 < 128; ++m2) {
      const double w1 = plan.w1.coordinate(m1), w2 = plan.w2.coordinate(m2);
      if (std::hypot(w1, w2) > 4.0) continue;
      const double exact = oracle::gaussian_qft(0.5, w1, w2);
      worst = std::max(worst, norm(F(m1, m2) - Quaternion(exact)) / exact);
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("inverse and Plancherel") {
  const Axis x = Axis::centered(128, 8.0);
  const QftPlan plan = QftPlan::for_grid(x, x);

  const GridSignal2D g = gen_gaussian(x, x, 1.0);
  CHECK(relative_l2_error(qft_inverse(qft_forward(g, plan), plan), g) < 1e-8);
  const GridSignal2D chirp = gen_chirp(x, x, 0.25, 0.25, 0.0, 0.0);
  CHECK(relative_l2_error(qft_inverse(qft_forward(chirp, plan), plan), chirp) < 1e-6);
  CHECK(l2_norm(qft_inverse(GridSignal2D(plan.w1, plan.w2), plan)) == 0.0);

  for (double alpha : {0.5, 1.0, 2.0}) {
    const GridSignal2D f = gen_gaussian(x, x, alpha, Quaternion{1, 0.5, -0.25, 2});
    const double ratio = spectrum_energy(qft_forward(f, plan)) / (kFourPiSq * l2_norm_squared(f));
    CHECK(std::abs(ratio - 1) < 1e-6);
  }
  const GridSignal2D cg = pointwise_product(chirp, gen_gaussian(x, x, 0.5));
  CHECK(std::abs(spectrum_energy(qft_forward(cg, plan)) / (kFourPiSq * l2_norm_squared(cg)) - 1) < 1e-3);

  const Axis other = Axis::centered(64, 8.0);
  CHECK_THROWS_AS(qft_forward(gen_gaussian(other, other, 1.0), plan), ShapeError);
}

TEST_CASE("dilation") {
  const Axis x = Axis::centered(128, 8.0);
  const Axis xs(128, x.min / 2, x.step / 2);  // grid scaled by 1/2
  const QftPlan plan = QftPlan::for_grid(x, x);
  const QftPlan plan_s = QftPlan::for_grid(xs, xs);
  const GridSignal2D f = gen_gaussian(x, x, 1.0);
  const GridSignal2D fk = GridSignal2D::from_function(xs, xs, [](double a, double b) {
    return Quaternion(std::exp(-(4 * a * a + 4 * b * b)));
  });
  // QFT[f(2x)] sampled at w = 2 nu equals QFT[f](nu) / 4.
  const GridSignal2D lhs = scale(qft_forward(fk, plan_s), 4.0);
  const GridSignal2D rhs = qft_forward(f, plan);
  CHECK(plan_s.w1.step == doctest::Approx(2 * plan.w1.step));
  CHECK(relative_l2_error(lhs.with_axes(plan.w1, plan.w2), rhs) < 1e-5);
}

TEST_CASE("linearity over i-complex scalars on the left") {
  const Axis x = Axis::centered(16, 3.0);
  const QftPlan plan = QftPlan::for_grid(x, x);
  const GridSignal2D f = oracle::random_signal(x, x, 3);
  const Quaternion lambda{0.7, -1.3, 0, 0};
  const GridSignal2D lhs = qft_forward(left_multiply(lambda, f), plan);
  const GridSignal2D rhs = left_multiply(lambda, qft_forward(f, plan));
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  CHECK(max_abs_diff(qft_forward(scale(f, -2.5), plan), scale(qft_forward(f, plan), -2.5)) < 1e-12);
}

TEST_CASE("component-wise modulus") {
  const Axis x = Axis::centered(16, 3.0);
  const QftPlan plan = QftPlan::for_grid(x, x);
  // For a real signal both definitions coincide.
  const GridSignal2D real = gen_gaussian(x, x, 0.7);
  const auto a = qft_modulus(qft_forward(real, plan));
  const auto b = qft_component_modulus(real, plan);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  // In general they differ.
  const GridSignal2D f = oracle::random_signal(x, x, 4);
  const auto c = qft_modulus(qft_forward(f, plan));
  const auto d = qft_component_modulus(f, plan);
  double diff = 0;
  for (std::size_t i = 0; i < c.size(); ++i) diff = std::max(diff, std::abs(c[i] - d[i]));
  CHECK(diff > 1e-3);
}
