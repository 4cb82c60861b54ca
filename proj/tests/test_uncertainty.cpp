#include <doctest.h>

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qtf/errors.hpp"
#include "qtf/qft.hpp"
#include "qtf/uncertainty.hpp"

using namespace qtf;

namespace {

const OlctParams kUnit(1, 1, 0, 1, 0, 0);
const OlctParams kOffset(0.6, 0.5, -0.8, 1.0, 0.3, -0.2);
const OlctParams kNegative(-0.8, -0.6, 0.6, -0.8, 0.1, 0.4);

// First-run value of the d = 2 integral on the extent-4, n = 32 Gaussian pair.
constexpr double kBeurlingBaseline = 106661224370.1821;

StqolctPlan plan_for(const Axis& x, const OlctParams& p1, const OlctParams& p2, double window_alpha = 2.0) {
  return StqolctPlan::make(QolctPlan::for_grid(p1, p2, x, x), gen_gaussian(x, x, window_alpha), 1);
}

}  // namespace

TEST_CASE("result margins follow the relation") {
  const auto le = make_result("t", {}, 1.0, 2.0, Relation::less_eq, 0.0, false);
  CHECK(le.margin == 1.0);
  CHECK(le.pass);
  const auto ge = make_result("t", {}, 1.0, 2.0, Relation::greater_eq, 0.0, false);
  CHECK(ge.margin == -1.0);
  CHECK_FALSE(ge.pass);
  CHECK(make_result("t", {}, 1.0, 1.0005, Relation::equal, 1e-3, true).pass);
  CHECK_FALSE(make_result("t", {}, 1.0, 1.002, Relation::equal, 1e-3, true).pass);
  CHECK(make_result("t", {}, 2.0 + 1e-7, 2.0, Relation::less_eq, 1e-6, true).pass);
  CHECK_FALSE(make_result("t", {}, std::nan(""), 2.0, Relation::less_eq, 1e-6, true).pass);
}

TEST_CASE("epsilon concentration") {
  const Axis a = Axis::centered(8, 2.0);
  const GridSignal2D two = add(gen_impulse(a, a, 1, 1), gen_impulse(a, a, 6, 2));
  CHECK(epsilon_concentration(two, CellSet{a, a, {}}) == doctest::Approx(1.0));
  CHECK(epsilon_concentration(two, CellSet{a, a, {1 * 8 + 1}}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(epsilon_concentration(two, CellSet{a, a, {9, 50}}) == 0.0);
  CHECK_THROWS_AS(epsilon_concentration(GridSignal2D(a, a), CellSet{a, a, {}}), ParameterError);

  const GridSignal2D f = oracle::random_signal(a, a, 3);
  CellSet small{a, a, {0, 5, 9}}, big{a, a, {0, 5, 9, 17, 33}};
  CHECK(epsilon_concentration(f, small) >= epsilon_concentration(f, big));
}

TEST_CASE("essential support") {
  const Axis a = Axis::centered(8, 2.0);
  GridSignal2D f = gen_impulse(a, a, 0, 0);
  f = add(f, gen_impulse(a, a, 2, 3));
  f = add(f, scale(gen_impulse(a, a, 5, 5), 0.5));
  f = add(f, scale(gen_impulse(a, a, 7, 1), 2.0));
  const CellSet exact = essential_support(f, 0.0);
  CHECK(exact.cells == std::vector<std::size_t>{0, 19, 45, 57});
  CHECK(exact.measure() == doctest::Approx(4 * a.step * a.step));
  CHECK(essential_support(f, 1.0).cells.empty());
  CHECK(epsilon_concentration(f, essential_support(f, 0.3)) <= 0.3);
  CHECK_THROWS_AS(essential_support(f, 1.5), ParameterError);
  CHECK_THROWS_AS(essential_support(f, -0.1), ParameterError);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> cell(0, 63), count(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Quaternion> data(64);
    const int k = count(rng);
    for (int i = 0; i < k; ++i) data[static_cast<std::size_t>(cell(rng))] = oracle::random_quaternion(rng);
    const GridSignal2D g(a, a, data);
    std::vector<double> energy(64);
    for (std::size_t i = 0; i < 64; ++i) energy[i] = norm_squared(data[i]);
    for (double eps : {0.0, 0.1, 0.3, 0.6}) {
      CHECK(essential_support(g, eps).cells.size() == oracle::min_support_bruteforce(energy, eps));
    }
  }
}

TEST_CASE("Donoho-Stark on Gaussians") {
  const Axis x = Axis::centered(64, 8.0);
  const GridSignal2D f = gen_gaussian(x, x, 1.0);
  const StqolctPlan plan = plan_for(x, kUnit, kUnit);
  const StqolctSummary s = stqolct_summarize(f, plan);
  const InequalityResult r = donoho_stark_check(f, plan, s, 0.1, 0.1);
  CHECK(r.pass);
  CHECK(r.margin > 0);
  CHECK(r.rhs == doctest::Approx(2 * std::numbers::pi * 0.64));
  const InequalityResult exact = donoho_stark_check(f, plan, s, 0.0, 0.0);
  CHECK(exact.pass);
  CHECK(exact.rhs == doctest::Approx(2 * std::numbers::pi));
  CHECK_THROWS_AS(donoho_stark_check(f, plan, s, 0.5, 0.5), ParameterError);

  // Compactly supported input: the exact-support case.
  const GridSignal2D box = GridSignal2D::from_function(x, x, [](double a, double b) {
    return std::abs(a) < 1 && std::abs(b) < 1 ? Quaternion(1.0) : Quaternion{};
  });
  const InequalityResult boxed = donoho_stark_check(box, plan, 0.0, 0.0);
  CHECK(boxed.pass);
}

TEST_CASE("Donoho-Stark margin as the Gaussian narrows") {
  // step 0.125 keeps the narrowest Gaussian resolved
  const Axis x = Axis::centered(64, 4.0);
  const StqolctPlan plan = plan_for(x, kUnit, kUnit);
  double previous = std::numeric_limits<double>::infinity();
  for (double alpha : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const GridSignal2D f = gen_gaussian(x, x, alpha);
    const InequalityResult r = donoho_stark_check(f, plan, 0.1, 0.1);
    CHECK(r.pass);
    MESSAGE("alpha=" << alpha << " margin=" << r.margin << " " << r.note);
    CHECK(r.margin <= previous);
    previous = r.margin;
  }
}

TEST_CASE("Pitt and logarithmic checks") {
  const Axis x = Axis::centered(64, 8.0);
  const GridSignal2D f = gen_gaussian(x, x, 1.0);
  for (const auto& [p1, p2] : {std::pair{kUnit, kUnit}, std::pair{kNegative, kOffset}}) {
    const StqolctPlan plan = plan_for(x, p1, p2);
    const StqolctSummary s = stqolct_summarize(f, plan);
    const InequalityResult zero = pitt_check(f, plan, s, 0.0);
    CHECK(zero.pass);
    CHECK(std::abs(zero.lhs / zero.rhs - 1) < 1e-3);
    for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
      const InequalityResult r = pitt_check(f, plan, s, alpha);
      CHECK(r.pass);
      CHECK(r.margin > 0);
    }
    const LogUpResult lu = log_up_check(f, plan, s);
    CHECK(lu.derivative.pass);
    CHECK(lu.derivative.lhs <= 1e-6);
    CHECK_FALSE(lu.literal.gated);

    // The literal form is homogeneous of degree two in f.
    const GridSignal2D f2 = scale(f, 2.0);
    const LogUpResult lu2 = log_up_check(f2, plan, stqolct_summarize(f2, plan));
    CHECK(std::abs(lu2.literal.lhs / lu.literal.lhs - 4) < 1e-12 * 4);
    CHECK(std::abs(lu2.literal.rhs / lu.literal.rhs - 4) < 1e-12 * 4);
  }
  const StqolctPlan plan = plan_for(x, kUnit, kUnit);
  CHECK_THROWS_AS(pitt_check(f, plan, stqolct_summarize(f, plan), 2.0), ParameterError);
}

TEST_CASE("Pitt sweep on a chirped Gaussian") {
  const Axis x = Axis::centered(64, 8.0);
  const GridSignal2D f = pointwise_product(gen_chirp(x, x, 0.2, -0.1, 0.5, 0.0), gen_gaussian(x, x, 0.5));
  const StqolctPlan plan = plan_for(x, kOffset, kOffset);
  const StqolctSummary s = stqolct_summarize(f, plan);
  for (double alpha : {0.25, 0.5, 1.0, 1.5}) {
    const InequalityResult r = pitt_check(f, plan, s, alpha);
    CHECK(r.pass);
    // lhs against a plain quadrature of the marginal
    double direct = 0;
    for (std::size_t m1 = 0; m1 < s.w1.n; ++m1) {
      for (std::size_t m2 = 0; m2 < s.w2.n; ++m2) {
        direct += std::pow(std::hypot(s.w1.coordinate(m1), s.w2.coordinate(m2)), -alpha) * s.marginal[m1 * s.w2.n + m2];
      }
    }
    CHECK(r.lhs == doctest::Approx(direct * s.w1.step * s.w2.step).epsilon(1e-12));
  }
}

TEST_CASE("checks that integrate over u reject subsampled windows") {
  const Axis x = Axis::centered(16, 4.0);
  const GridSignal2D f = gen_gaussian(x, x, 1.0);
  const StqolctPlan plan = StqolctPlan::make(QolctPlan::for_grid(kUnit, kUnit, x, x), gen_gaussian(x, x, 2.0), 2);
  const StqolctSummary s = stqolct_summarize(f, plan);
  CHECK_THROWS_AS(pitt_check(f, plan, s, 1.0), ParameterError);
  CHECK_THROWS_AS(donoho_stark_check(f, plan, s, 0.1, 0.1), ParameterError);
  CHECK_THROWS_AS(log_up_check(f, plan, s), ParameterError);
  CHECK_THROWS_AS(energy_check(f, plan, s), ParameterError);
  CHECK_THROWS_AS(beurling_integral(f, plan, 2.0), ParameterError);
  CHECK(boundedness_check(f, plan, s).pass);
}

TEST_CASE("Hardy fit recovers the Gaussian decay rate") {
  const Axis x = Axis::centered(128, 8.0);
  const QftPlan plan = QftPlan::for_grid(x, x);
  for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
    const HardyFit fit = hardy_decay_fit(qft_forward(gen_gaussian(x, x, alpha), plan));
    CHECK(std::abs(4 * alpha * fit.beta_hat - 1) < 0.02);
    CHECK(fit.r2 > 0.999);
    CHECK(fit.gaussian_decay);
  }
  const HardyFit chirp = hardy_decay_fit(qft_forward(gen_chirp(x, x, 0.3, 0.3, 0, 0), plan));
  CHECK_FALSE(chirp.gaussian_decay);

  std::vector<double> with_zero(16, 1.0);
  with_zero[5] = 0.0;
  const Axis w = Axis::centered(4, 1.0);
  CHECK_THROWS_AS(hardy_decay_fit(w, w, with_zero, 1, 0, 1, 0, 10.0), FitError);
}

TEST_CASE("Hardy fit on short-time slices") {
  const Axis x = Axis::centered(64, 8.0);
  const GridSignal2D f = gen_gaussian(x, x, 0.5);
  const StqolctPlan plan = plan_for(x, kOffset, kOffset, 1.0);
  const auto zero = zero_position(plan);
  CHECK(plan.u1.coordinate(zero.first) == 0.0);
  const auto best = overlap_maximizing_position(f, plan);
  CHECK(std::abs(plan.u1.coordinate(best.first)) <= x.step);
  // The input chirp turns f conj(phi) = e^{-1.5 |x|^2} into e^{-(1.5 - i g) |x|^2}
  // with g = a / 2b, whose modulus decays at rate 1.5 / (4 (1.5^2 + g^2)).
  const double g = kOffset.a() / (2 * kOffset.b());
  const double expected = 1.5 / (4 * (1.5 * 1.5 + g * g));
  const HardyFit fit = hardy_decay_fit(f, plan, zero.first, zero.second);
  CHECK(std::abs(fit.beta_hat / expected - 1) < 0.02);
}

TEST_CASE("Beurling integral") {
  const Axis x = Axis::centered(32, 4.0);
  const GridSignal2D f = gen_gaussian(x, x, 1.0);
  const StqolctPlan plan = plan_for(x, kUnit, kUnit);
  const BeurlingResult zero = beurling_integral(GridSignal2D(x, x), plan, 2.0);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.saturated);
  const BeurlingResult d2 = beurling_integral(f, plan, 2.0);
  const BeurlingResult d4 = beurling_integral(f, plan, 4.0);
  CHECK(std::isfinite(d2.value));
  CHECK_FALSE(d2.saturated);
  CHECK(d4.value <= d2.value);
  MESSAGE("beurling d=2 baseline " << std::setprecision(17) << d2.value);
  CHECK(d2.value == doctest::Approx(kBeurlingBaseline).epsilon(1e-9));

  // A large |b| stretches the w axis until e^{|x||w|} leaves the double range.
  const OlctParams stretch(0, 100, -0.01, 0, 0, 0);
  const BeurlingResult sat = beurling_integral(oracle::random_signal(x, x, 5), plan_for(x, stretch, stretch), 0.0);
  CHECK(sat.saturated);
  CHECK(std::isinf(sat.value));
}
