#pragma once

// Reference implementations used only by the tests. None of them calls into
// the library's arithmetic: products come from the 16-entry basis table and
// transforms are literal quadruple loops over the kernel formulas.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qtf/grid_signal.hpp"
#include "qtf/qolct.hpp"
#include "qtf/quaternion.hpp"

namespace oracle {

using qtf::Axis;
using qtf::GridSignal2D;
using qtf::Quaternion;

// e_a e_b = sign[a][b] e_{index[a][b]} with e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
inline constexpr std::array<std::array<int, 4>, 4> kIndex = {{
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
}};
inline constexpr std::array<std::array<int, 4>, 4> kSign = {{
    {1, 1, 1, 1},
    {1, -1, 1, -1},
    {1, -1, -1, 1},
    {1, 1, -1, -1},
}};

inline std::array<double, 4> comps(const Quaternion& q) { return {q.q0, q.q1, q.q2, q.q3}; }

inline Quaternion mul(const Quaternion& p, const Quaternion& q) {
  const auto a = comps(p), b = comps(q);
  std::array<double, 4> out{};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) out[kIndex[x][y]] += kSign[x][y] * a[x] * b[y];
  }
  return {out[0], out[1], out[2], out[3]};
}

inline Quaternion expi(double t) { return {std::cos(t), std::sin(t), 0, 0}; }
inline Quaternion expj(double t) { return {std::cos(t), 0, std::sin(t), 0}; }

inline Quaternion random_quaternion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

inline GridSignal2D random_signal(const Axis& a1, const Axis& a2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Quaternion> data(a1.n * a2.n);
  for (auto& q : data) q = random_quaternion(rng);
  return GridSignal2D(a1, a2, std::move(data));
}

inline double max_abs(const std::vector<Quaternion>& a, const std::vector<Quaternion>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto x = comps(a[i]), y = comps(b[i]);
    for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(x[c] - y[c]));
  }
  return m;
}

inline std::vector<Quaternion> samples(const GridSignal2D& f) { return {f.samples().begin(), f.samples().end()}; }

template <class Field>
std::vector<Quaternion> samples_of(const Field& field) {
  return {field.samples().begin(), field.samples().end()};
}

/// F(w) = sum e^{-i w1 x1} f(x) e^{-j w2 x2} dx on the given output axes.
inline std::vector<Quaternion> qft(const GridSignal2D& f, const Axis& w1, const Axis& w2) {
  const double dx = f.axis1().step * f.axis2().step;
  std::vector<Quaternion> out(w1.n * w2.n);
  for (std::size_t m1 = 0; m1 < w1.n; ++m1) {
    for (std::size_t m2 = 0; m2 < w2.n; ++m2) {
      Quaternion acc;
      for (std::size_t k1 = 0; k1 < f.n1(); ++k1) {
        for (std::size_t k2 = 0; k2 < f.n2(); ++k2) {
          const Quaternion l = expi(-w1.coordinate(m1) * f.axis1().coordinate(k1));
          const Quaternion r = expj(-w2.coordinate(m2) * f.axis2().coordinate(k2));
          acc += mul(mul(l, f(k1, k2)), r);
        }
      }
      out[m1 * w2.n + m2] = acc * dx;
    }
  }
  return out;
}

/// Angle of the offset LCT kernel including the -sgn(b) pi/4 of the prefactor.
inline double olct_angle(double a, double b, double d, double p, double q, double x, double w) {
  const double sgn = b > 0 ? 1.0 : -1.0;
  return -sgn * std::numbers::pi / 4 +
         (a * x * x - 2 * x * (w - p) - 2 * w * (d * p - b * q) + d * (w * w + p * p)) / (2 * b);
}

inline std::vector<Quaternion> qolct(const GridSignal2D& f, const qtf::OlctParams& A1, const qtf::OlctParams& A2,
                                     const Axis& w1, const Axis& w2) {
  const double dx = f.axis1().step * f.axis2().step;
  const double amp = 1.0 / std::sqrt(2 * std::numbers::pi * std::abs(A1.b())) /
                     std::sqrt(2 * std::numbers::pi * std::abs(A2.b()));
  std::vector<Quaternion> out(w1.n * w2.n);
  for (std::size_t m1 = 0; m1 < w1.n; ++m1) {
    for (std::size_t m2 = 0; m2 < w2.n; ++m2) {
      Quaternion acc;
      for (std::size_t k1 = 0; k1 < f.n1(); ++k1) {
        const Quaternion l =
            expi(olct_angle(A1.a(), A1.b(), A1.d(), A1.p(), A1.q(), f.axis1().coordinate(k1), w1.coordinate(m1)));
        for (std::size_t k2 = 0; k2 < f.n2(); ++k2) {
          const Quaternion r =
              expj(olct_angle(A2.a(), A2.b(), A2.d(), A2.p(), A2.q(), f.axis2().coordinate(k2), w2.coordinate(m2)));
          acc += mul(mul(l, f(k1, k2)), r);
        }
      }
      out[m1 * w2.n + m2] = acc * (amp * dx);
    }
  }
  return out;
}

/// int e^{-i w1 x1} e^{-alpha |x|^2} e^{-j w2 x2} dx = (pi / alpha) e^{-|w|^2 / (4 alpha)}
inline double gaussian_qft(double alpha, double w1, double w2) {
  return std::numbers::pi / alpha * std::exp(-(w1 * w1 + w2 * w2) / (4 * alpha));
}

/// Fewest cells (as a count) whose complement holds at most eps^2 of the energy, by enumeration.
inline std::size_t min_support_bruteforce(const std::vector<double>& energy, double eps) {
  std::vector<double> nz;
  for (double e : energy) {
    if (e > 0) nz.push_back(e);
  }
  double total = 0;
  for (double e : nz) total += e;
  std::size_t best = nz.size();
  for (std::uint32_t mask = 0; mask < (1u << nz.size()); ++mask) {
    double outside = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < nz.size(); ++i) {
      if (mask & (1u << i)) {
        ++count;
      } else {
        outside += nz[i];
      }
    }
    if (outside <= eps * eps * total * (1 + 1e-12)) best = std::min(best, count);
  }
  return best;
}

}  // namespace oracle
