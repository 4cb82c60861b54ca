#pragma once

/**
 * @file grid_signal.hpp
 * @brief Uniformly sampled quaternion fields over a rectangular 2D grid.
 *
 * Integrals are Riemann sums: int g dx ~ sum_k g(x_k) * step1 * step2.
 * Centered grids carry a half-bin offset, so no sample sits on a coordinate
 * axis and weights such as |x|^-alpha or ln|x| stay finite.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qtf/quaternion.hpp"

namespace qtf {

struct Axis {
  std::size_t n = 0;
  double min = 0.0;
  double step = 0.0;

  /// Throws ParameterError unless n >= 2, step > 0 and min is finite.
  Axis(std::size_t n_, double min_, double step_);
  Axis() = default;

  /// n samples covering [-extent, extent): step = 2 extent / n, min = -extent + step / 2.
  static Axis centered(std::size_t n, double extent);

  double coordinate(std::size_t k) const { return min + static_cast<double>(k) * step; }
  double max() const { return coordinate(n - 1); }
  double extent() const { return static_cast<double>(n) * step; }

  bool operator==(const Axis&) const = default;
};

/// Same n and min/step equal up to a few ulps of the grid span.
bool same_grid(const Axis& a, const Axis& b);

class GridSignal2D {
 public:
  GridSignal2D() = default;
  /// Zero signal.
  GridSignal2D(Axis ax1, Axis ax2);
  /// Row-major samples, axis-2 index fastest. Throws on size mismatch or non-finite values.
  GridSignal2D(Axis ax1, Axis ax2, std::vector<Quaternion> data);

  static GridSignal2D from_function(const Axis& ax1, const Axis& ax2,
                                    const std::function<Quaternion(double, double)>& fn);

  const Axis& axis1() const { return ax1_; }
  const Axis& axis2() const { return ax2_; }
  std::size_t n1() const { return ax1_.n; }
  std::size_t n2() const { return ax2_.n; }
  std::size_t size() const { return data_.size(); }
  double cell_area() const { return ax1_.step * ax2_.step; }

  const Quaternion& operator()(std::size_t k1, std::size_t k2) const { return data_[k1 * ax2_.n + k2]; }
  std::span<const Quaternion> samples() const { return data_; }
  std::vector<Quaternion> release() && { return std::move(data_); }

  /// Same signal values on different coordinate axes (the sample counts must match).
  GridSignal2D with_axes(const Axis& ax1, const Axis& ax2) const;

 private:
  Axis ax1_;
  Axis ax2_;
  std::vector<Quaternion> data_;
};

/// Throws ShapeError unless f and g share both axes.
void require_same_grid(const GridSignal2D& f, const GridSignal2D& g, const char* what);

/// <f, g> = sum f(x) conj(g(x)) dx.
Quaternion inner_product(const GridSignal2D& f, const GridSignal2D& g);
double l2_norm_squared(const GridSignal2D& f);
double l2_norm(const GridSignal2D& f);

/// amplitude * exp(-alpha |x|^2); alpha must be positive.
GridSignal2D gen_gaussian(const Axis& ax1, const Axis& ax2, double alpha, Quaternion amplitude = 1.0);

/// exp(i (rate1 x1^2 + freq1 x1)) * exp(j (rate2 x2^2 + freq2 x2)).
GridSignal2D gen_chirp(const Axis& ax1, const Axis& ax2, double rate1, double rate2, double freq1,
                       double freq2);

/// Discrete delta: 1 / (step1 step2) at cell (k1, k2), zero elsewhere.
GridSignal2D gen_impulse(const Axis& ax1, const Axis& ax2, std::size_t k1, std::size_t k2);

/// Pointwise quaternion product f(x) g(x).
GridSignal2D pointwise_product(const GridSignal2D& f, const GridSignal2D& g);

GridSignal2D add(const GridSignal2D& f, const GridSignal2D& g);
GridSignal2D scale(const GridSignal2D& f, double s);
/// lambda * f(x) for every sample.
GridSignal2D left_multiply(const Quaternion& lambda, const GridSignal2D& f);

/// phi(x - u) with zero fill. u must be an integer multiple of the steps.
GridSignal2D translate_window(const GridSignal2D& phi, double u1, double u2);
/// phi shifted by (t1, t2) samples: out(k) = phi(k - t).
GridSignal2D translate_by_samples(const GridSignal2D& phi, long t1, long t2);

double max_abs_diff(const GridSignal2D& a, const GridSignal2D& b);
/// ||a - ref|| / ||ref||.
double relative_l2_error(const GridSignal2D& a, const GridSignal2D& ref);

}  // namespace qtf
