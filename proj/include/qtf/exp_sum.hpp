#pragma once

/**
 * @file exp_sum.hpp
 * @brief The two-sided exponential sum shared by every transform.
 *
 *   out(y) = weight * sum_s  e^{sigma1 i y1 s1} g(s) e^{sigma2 j y2 s2}
 *
 * Direct mode evaluates the quadruple loop literally. Fast mode splits
 * g = za + zb j, forms P = za + i zb and M = za - i zb, and runs two complex
 * separable sums: P with signs (sigma1, sigma2), M with (sigma1, -sigma2).
 * Then out = (DP + DM)/2 + (-i (DP - DM)/2) j.
 *
 * Each 1D pass uses a radix-2 FFT when the axes are reciprocal
 * (dy * ds * n = 2 pi) and n is a power of two, else a dense phase matrix.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "qtf/grid_signal.hpp"
#include "qtf/quaternion.hpp"

namespace qtf {

enum class SumMode { direct, fast };

/// In-place radix-2 FFT: x[m] <- sum_k x[k] e^{sign 2 pi i m k / n}. n must be a power of two.
void fft_radix2(std::span<Complex> x, int sign);

bool is_power_of_two(std::size_t n);

/// One axis of the separable complex sum y_m = sum_k e^{sign i Y_m S_k} g_k.
class AxisExpSum {
 public:
  AxisExpSum(const Axis& in, const Axis& out, int sign);

  /// Reads n_in strided inputs, writes n_out strided outputs. `in` and `out` may not alias.
  void apply(const Complex* in, std::size_t in_stride, Complex* out, std::size_t out_stride,
             std::vector<Complex>& scratch) const;

  bool uses_fft() const { return use_fft_; }
  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return n_out_; }

 private:
  std::size_t n_in_;
  std::size_t n_out_;
  int sign_;
  bool use_fft_;
  std::vector<Complex> twiddle_;  // fft path
  std::vector<Complex> pre_;     // fft path: e^{sign i Y_0 k dS}
  std::vector<Complex> post_;    // fft path: e^{sign i Y_m S_0}
  std::vector<Complex> matrix_;  // dense path: n_out x n_in phases
};

/**
 * out(m1, m2) = weight * sum_k left[m1][k1] g(k1, k2) right[m2][k2]
 *
 * left is n_out1 x n1 and right is n_out2 x n2, both row-major. This is the
 * literal quadrature loop used as the oracle for every fast path.
 */
std::vector<Quaternion> kernel_sandwich_sum(std::span<const Quaternion> left, std::span<const Quaternion> right,
                                            std::span<const Quaternion> g, std::size_t n1, std::size_t n2,
                                            double weight);

class ExpSumPlan {
 public:
  ExpSumPlan(const Axis& in1, const Axis& in2, const Axis& out1, const Axis& out2, int sigma1, int sigma2,
             SumMode mode);

  /// g is row-major over (in1, in2); the result is row-major over (out1, out2).
  std::vector<Quaternion> apply(std::span<const Quaternion> g, double weight) const;

  SumMode mode() const { return mode_; }
  const Axis& out1() const { return out1_; }
  const Axis& out2() const { return out2_; }

 private:
  std::vector<Quaternion> apply_direct(std::span<const Quaternion> g, double weight) const;
  std::vector<Quaternion> apply_fast(std::span<const Quaternion> g, double weight) const;

  Axis in1_, in2_, out1_, out2_;
  int sigma1_, sigma2_;
  SumMode mode_;
  // fast mode
  AxisExpSum pass1_;
  AxisExpSum pass2_plus_;
  AxisExpSum pass2_minus_;
};

}  // namespace qtf
