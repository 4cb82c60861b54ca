#pragma once

/**
 * @file special_functions.hpp
 * @brief Gamma and digamma on the positive axis, and the constants of the
 * Pitt and logarithmic inequalities built from them.
 */

namespace qtf {

/// Lanczos approximation (g = 7, 9 terms), reflection below 1/2. Throws ParameterError at poles.
double gamma_fn(double x);

/// Recurrence up to x >= 12, then the asymptotic series. x > 0.
double digamma(double x);

/// C_alpha = (4 pi^2 / 2^alpha) [Gamma((2 - alpha)/4) / Gamma((2 + alpha)/4)]^2, 0 <= alpha < 2.
double pitt_constant(double alpha);

/// ln 2 + digamma(1/2)
double log_up_constant();

}  // namespace qtf
