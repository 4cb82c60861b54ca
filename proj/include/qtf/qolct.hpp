#pragma once

/**
 * @file qolct.hpp
 * @brief Two-sided quaternion offset linear canonical transform.
 *
 * For a parameter set (a, b, c, d | p, q) with ad - bc = 1 and b != 0 the
 * left kernel is
 *
 *   K(x, w) = (2 pi |b|)^-1/2 e^{-i sgn(b) pi/4}
 *             e^{i [a x^2 - 2x(w - p) - 2w(dp - bq) + d(w^2 + p^2)] / (2b)}
 *
 * and the right kernel is the same expression with j in place of i. The
 * transform is int K_1(x1, w1) f(x) K_2(x2, w2) dx. Setting p = q = 0 gives
 * the plain linear canonical transform.
 *
 * The fast path factors the phase into an input chirp in x, the Fourier
 * phase -x w / b, and an output chirp in w, so the middle step is an
 * exponential sum on the rescaled axis w / |b|.
 */

#include <string>
#include <string_view>

#include "qtf/exp_sum.hpp"
#include "qtf/grid_signal.hpp"

namespace qtf {

class OlctParams {
 public:
  /// Throws ParameterError unless |ad - bc - 1| <= 1e-12, b != 0, and all entries are finite.
  OlctParams(double a, double b, double c, double d, double p, double q);

  /// Comma-separated "a,b,c,d,p,q".
  static OlctParams parse(std::string_view text);
  std::string to_string() const;

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double p() const { return p_; }
  double q() const { return q_; }
  int sign_b() const { return b_ > 0 ? 1 : -1; }

  /// 1 / sqrt(2 pi |b|), the constant kernel modulus.
  double amplitude() const;
  /// Full kernel phase [a x^2 - 2x(w - p) - 2w(dp - bq) + d(w^2 + p^2)] / (2b).
  double phase(double x, double w) const;
  /// a x^2 / (2b) + x p / b
  double input_chirp(double x) const;
  /// -w (dp - bq) / b + d (w^2 + p^2) / (2b)
  double output_chirp(double w) const;

  bool operator==(const OlctParams&) const = default;

 private:
  double a_, b_, c_, d_, p_, q_;
};

Quaternion kernel_left(const OlctParams& params, double x1, double w1);
Quaternion kernel_right(const OlctParams& params, double x2, double w2);

/// Output axis with step 2 pi |b| / (n step_x), centered, half-bin offset.
Axis olct_output_axis(const Axis& spatial, const OlctParams& params);

struct QolctPlan {
  OlctParams params1;
  OlctParams params2;
  Axis x1, x2;
  Axis w1, w2;

  static QolctPlan for_grid(const OlctParams& p1, const OlctParams& p2, const Axis& x1, const Axis& x2);
};

/**
 * Precomputed chirp tables and exponential sums for one plan. Reused across
 * the many window positions of the short-time transform.
 */
class QolctEngine {
 public:
  QolctEngine(const QolctPlan& plan, SumMode mode);

  std::vector<Quaternion> forward(std::span<const Quaternion> f) const;
  std::vector<Quaternion> inverse(std::span<const Quaternion> spectrum) const;

  const QolctPlan& plan() const { return plan_; }
  SumMode mode() const { return mode_; }

 private:
  QolctPlan plan_;
  SumMode mode_;
  // fast path
  std::vector<Complex> in_chirp1_, in_chirp2_;    // e^{i chi(x)}
  std::vector<Complex> out_chirp1_, out_chirp2_;  // amplitude e^{i (phi(w) - sgn(b) pi/4)}
  ExpSumPlan forward_sum_;
  ExpSumPlan inverse_sum_;
  // direct path: kernel tables, rows indexed by output sample
  std::vector<Quaternion> fwd_left_, fwd_right_, inv_left_, inv_right_;
};

GridSignal2D qolct_forward(const GridSignal2D& f, const QolctPlan& plan, SumMode mode = SumMode::fast);
GridSignal2D qolct_inverse(const GridSignal2D& spectrum, const QolctPlan& plan, SumMode mode = SumMode::fast);

}  // namespace qtf
