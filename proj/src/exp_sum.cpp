#include "qtf/exp_sum.hpp"

#include <cmath>
#include <numbers>

#include "qtf/errors.hpp"
#include "qtf/parallel.hpp"
#include "qtf/summation.hpp"

namespace qtf {

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

namespace {

// Plain real arithmetic; std::complex multiplication goes through the slow
// Annex G path for inf/nan handling.
inline Complex cmul(const Complex& a, const Complex& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// twiddle[k] = e^{sign 2 pi i k / n} for k < n/2
std::vector<Complex> twiddle_table(std::size_t n, int sign) {
  std::vector<Complex> t(n / 2);
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return t;
}

void fft_with_table(Complex* x, std::size_t n, const std::vector<Complex>& twiddle) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex a = x[start + k];
        const Complex b = cmul(x[start + k + half], twiddle[k * step]);
        x[start + k] = a + b;
        x[start + k + half] = a - b;
      }
    }
  }
}

}  // namespace

void fft_radix2(std::span<Complex> x, int sign) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n)) throw ParameterError("fft_radix2: length must be a power of two");
  fft_with_table(x.data(), n, twiddle_table(n, sign));
}

AxisExpSum::AxisExpSum(const Axis& in, const Axis& out, int sign)
    : n_in_(in.n), n_out_(out.n), sign_(sign) {
  const double product = in.step * out.step * static_cast<double>(in.n);
  use_fft_ = in.n == out.n && is_power_of_two(in.n) &&
             std::abs(product - 2.0 * std::numbers::pi) <= 1e-12 * 2.0 * std::numbers::pi;
  if (use_fft_) {
    twiddle_ = twiddle_table(n_in_, sign);
    pre_.resize(n_in_);
    post_.resize(n_out_);
    for (std::size_t k = 0; k < n_in_; ++k) {
      pre_[k] = std::polar(1.0, sign * out.min * static_cast<double>(k) * in.step);
    }
    for (std::size_t m = 0; m < n_out_; ++m) post_[m] = std::polar(1.0, sign * out.coordinate(m) * in.min);
  } else {
    matrix_.resize(n_out_ * n_in_);
    for (std::size_t m = 0; m < n_out_; ++m) {
      const double y = out.coordinate(m);
      for (std::size_t k = 0; k < n_in_; ++k) matrix_[m * n_in_ + k] = std::polar(1.0, sign * y * in.coordinate(k));
    }
  }
}

void AxisExpSum::apply(const Complex* in, std::size_t in_stride, Complex* out, std::size_t out_stride,
                       std::vector<Complex>& scratch) const {
  if (scratch.size() < std::max(n_in_, n_out_)) scratch.resize(std::max(n_in_, n_out_));
  if (use_fft_) {
    for (std::size_t k = 0; k < n_in_; ++k) scratch[k] = cmul(in[k * in_stride], pre_[k]);
    fft_with_table(scratch.data(), n_in_, twiddle_);
    for (std::size_t m = 0; m < n_out_; ++m) out[m * out_stride] = cmul(scratch[m], post_[m]);
    return;
  }
  for (std::size_t k = 0; k < n_in_; ++k) scratch[k] = in[k * in_stride];
  std::vector<Complex> terms(n_in_);
  for (std::size_t m = 0; m < n_out_; ++m) {
    const Complex* row = &matrix_[m * n_in_];
    for (std::size_t k = 0; k < n_in_; ++k) terms[k] = cmul(row[k], scratch[k]);
    out[m * out_stride] = pairwise_sum(std::span<const Complex>(terms));
  }
}

std::vector<Quaternion> kernel_sandwich_sum(std::span<const Quaternion> left, std::span<const Quaternion> right,
                                            std::span<const Quaternion> g, std::size_t n1, std::size_t n2,
                                            double weight) {
  if (g.size() != n1 * n2 || left.size() % n1 != 0 || right.size() % n2 != 0) {
    throw ShapeError("kernel_sandwich_sum: table sizes do not match the input grid");
  }
  const std::size_t out1 = left.size() / n1;
  const std::size_t out2 = right.size() / n2;
  std::vector<Quaternion> out(out1 * out2);
  parallel_for(out1, [&](std::size_t m1) {
    std::vector<Quaternion> terms(n1 * n2);
    for (std::size_t m2 = 0; m2 < out2; ++m2) {
      for (std::size_t k1 = 0; k1 < n1; ++k1) {
        const Quaternion& l = left[m1 * n1 + k1];
        for (std::size_t k2 = 0; k2 < n2; ++k2) {
          terms[k1 * n2 + k2] = l * g[k1 * n2 + k2] * right[m2 * n2 + k2];
        }
      }
      out[m1 * out2 + m2] = pairwise_sum(std::span<const Quaternion>(terms)) * weight;
    }
  });
  return out;
}

ExpSumPlan::ExpSumPlan(const Axis& in1, const Axis& in2, const Axis& out1, const Axis& out2, int sigma1,
                       int sigma2, SumMode mode)
    : in1_(in1),
      in2_(in2),
      out1_(out1),
      out2_(out2),
      sigma1_(sigma1),
      sigma2_(sigma2),
      mode_(mode),
      pass1_(in1, out1, sigma1),
      pass2_plus_(in2, out2, sigma2),
      pass2_minus_(in2, out2, -sigma2) {}

std::vector<Quaternion> ExpSumPlan::apply(std::span<const Quaternion> g, double weight) const {
  if (g.size() != in1_.n * in2_.n) throw ShapeError("exp sum: input size does not match the plan");
  return mode_ == SumMode::direct ? apply_direct(g, weight) : apply_fast(g, weight);
}

std::vector<Quaternion> ExpSumPlan::apply_direct(std::span<const Quaternion> g, double weight) const {
  const std::size_t n1 = in1_.n, n2 = in2_.n;
  std::vector<Quaternion> left(out1_.n * n1), right(out2_.n * n2);
  for (std::size_t m = 0; m < out1_.n; ++m) {
    for (std::size_t k = 0; k < n1; ++k) {
      left[m * n1 + k] = unit_exp(ImagAxis::i, sigma1_ * out1_.coordinate(m) * in1_.coordinate(k));
    }
  }
  for (std::size_t m = 0; m < out2_.n; ++m) {
    for (std::size_t k = 0; k < n2; ++k) {
      right[m * n2 + k] = unit_exp(ImagAxis::j, sigma2_ * out2_.coordinate(m) * in2_.coordinate(k));
    }
  }
  return kernel_sandwich_sum(left, right, g, n1, n2, weight);
}

std::vector<Quaternion> ExpSumPlan::apply_fast(std::span<const Quaternion> g, double weight) const {
  const std::size_t n1 = in1_.n, n2 = in2_.n;
  const std::size_t m1n = out1_.n, m2n = out2_.n;
  std::vector<Complex> p(n1 * n2), m(n1 * n2);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const CayleyPair c = cayley_split(g[idx]);
    const Complex izb{-c.zb.imag(), c.zb.real()};
    p[idx] = c.za + izb;
    m[idx] = c.za - izb;
  }

  // axis 2 along rows, then axis 1 down columns
  std::vector<Complex> p2(n1 * m2n), m2(n1 * m2n);
  std::vector<Complex> scratch;
  for (std::size_t k1 = 0; k1 < n1; ++k1) {
    pass2_plus_.apply(&p[k1 * n2], 1, &p2[k1 * m2n], 1, scratch);
    pass2_minus_.apply(&m[k1 * n2], 1, &m2[k1 * m2n], 1, scratch);
  }
  std::vector<Complex> dp(m1n * m2n), dm(m1n * m2n);
  for (std::size_t c = 0; c < m2n; ++c) {
    pass1_.apply(&p2[c], m2n, &dp[c], m2n, scratch);
    pass1_.apply(&m2[c], m2n, &dm[c], m2n, scratch);
  }

  std::vector<Quaternion> out(m1n * m2n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const Complex za = 0.5 * (dp[idx] + dm[idx]);
    const Complex diff = dp[idx] - dm[idx];
    const Complex zb{0.5 * diff.imag(), -0.5 * diff.real()};
    out[idx] = cayley_join({za * weight, zb * weight});
  }
  return out;
}

}  // namespace qtf
