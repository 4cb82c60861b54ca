#pragma once

/**
 * @file qft.hpp
 * @brief Two-sided quaternion Fourier transform on sampled grids.
 *
 *   F(w) = int e^{-i w1 x1} f(x) e^{-j w2 x2} dx
 *   f(x) = (2 pi)^-2 int e^{i w1 x1} F(w) e^{j w2 x2} dw
 *
 * Frequency axes are reciprocal to the spatial ones (step_w = 2 pi / (n step_x)),
 * centered with a half-bin offset, so the discrete pair is an exact inverse.
 */

#include <vector>

#include "qtf/exp_sum.hpp"
#include "qtf/grid_signal.hpp"

namespace qtf {

/// The reciprocal centered frequency axis of a spatial axis.
Axis frequency_axis(const Axis& spatial);

struct QftPlan {
  Axis x1, x2;
  Axis w1, w2;
  SumMode mode = SumMode::fast;

  static QftPlan for_grid(const Axis& x1, const Axis& x2, SumMode mode = SumMode::fast);
};

GridSignal2D qft_forward(const GridSignal2D& f, const QftPlan& plan);
GridSignal2D qft_inverse(const GridSignal2D& spectrum, const QftPlan& plan);

/// Pointwise |F(w)| of an assembled transform.
std::vector<double> qft_modulus(const GridSignal2D& spectrum);

/// sqrt(sum_m |QFT[f_m]|^2) over the four real components of f, as in the
/// component-wise modulus definition. Differs from qft_modulus in general.
std::vector<double> qft_component_modulus(const GridSignal2D& f, const QftPlan& plan);

}  // namespace qtf
