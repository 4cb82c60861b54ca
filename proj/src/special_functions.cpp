#include "qtf/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qtf/errors.hpp"

namespace qtf {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw ParameterError("gamma_fn: argument must be finite");
  if (x <= 0.0 && x == std::floor(x)) throw ParameterError("gamma_fn: pole at non-positive integer");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("digamma: argument must be positive and finite");
  double shift = 0.0;
  while (x < 12.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // -sum B_2k / (2k x^2k) for k = 1..6
  const double tail =
      inv2 * (-1.0 / 12 +
              inv2 * (1.0 / 120 + inv2 * (-1.0 / 252 + inv2 * (1.0 / 240 + inv2 * (-1.0 / 132 + inv2 * (691.0 / 32760))))));
  return shift + std::log(x) - 0.5 * inv + tail;
}

double pitt_constant(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw ParameterError("pitt_constant: alpha must lie in [0, 2)");
  const double ratio = gamma_fn((2.0 - alpha) / 4.0) / gamma_fn((2.0 + alpha) / 4.0);
  return 4.0 * std::numbers::pi * std::numbers::pi / std::exp2(alpha) * ratio * ratio;
}

double log_up_constant() { return std::numbers::ln2 + digamma(0.5); }

}  // namespace qtf
