#include "qtf/qolct.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qtf/errors.hpp"
#include "qtf/qft.hpp"

namespace qtf {

OlctParams::OlctParams(double a, double b, double c, double d, double p, double q)
    : a_(a), b_(b), c_(c), d_(d), p_(p), q_(q) {
  for (double v : {a, b, c, d, p, q}) {
    if (!std::isfinite(v)) throw ParameterError("OLCT parameters must be finite");
  }
  if (b == 0.0) throw ParameterError("OLCT parameter b must be nonzero");
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "OLCT matrix must have ad - bc = 1, got " << det;
    throw ParameterError(msg.str());
  }
}

OlctParams OlctParams::parse(std::string_view text) {
  double v[6];
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 6; ++i) {
    while (p != end && *p == ' ') ++p;
    const auto [next, ec] = std::from_chars(p, end, v[i]);
    if (ec != std::errc{}) throw ParameterError("cannot parse OLCT parameters '" + std::string(text) + "'");
    p = next;
    while (p != end && *p == ' ') ++p;
    if (i < 5) {
      if (p == end || *p != ',') {
        throw ParameterError("OLCT parameters need 6 comma-separated values: '" + std::string(text) + "'");
      }
      ++p;
    }
  }
  if (p != end) throw ParameterError("trailing text after OLCT parameters: '" + std::string(text) + "'");
  return OlctParams(v[0], v[1], v[2], v[3], v[4], v[5]);
}

std::string OlctParams::to_string() const {
  std::string out;
  char buf[32];
  for (double v : {a_, b_, c_, d_, p_, q_}) {
    if (!out.empty()) out.push_back(',');
    out.append(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  }
  return out;
}

double OlctParams::amplitude() const { return 1.0 / std::sqrt(2.0 * std::numbers::pi * std::abs(b_)); }

double OlctParams::phase(double x, double w) const {
  return (a_ * x * x - 2.0 * x * (w - p_) - 2.0 * w * (d_ * p_ - b_ * q_) + d_ * (w * w + p_ * p_)) / (2.0 * b_);
}

double OlctParams::input_chirp(double x) const { return a_ * x * x / (2.0 * b_) + x * p_ / b_; }

double OlctParams::output_chirp(double w) const {
  return -w * (d_ * p_ - b_ * q_) / b_ + d_ * (w * w + p_ * p_) / (2.0 * b_);
}

namespace {

// Principal square root of 2 pi b i (or j): the prefactor carries e^{-sgn(b) pi/4}.
double kernel_angle(const OlctParams& params, double x, double w) {
  return -params.sign_b() * std::numbers::pi / 4.0 + params.phase(x, w);
}

}  // namespace

Quaternion kernel_left(const OlctParams& params, double x1, double w1) {
  return params.amplitude() * unit_exp(ImagAxis::i, kernel_angle(params, x1, w1));
}

Quaternion kernel_right(const OlctParams& params, double x2, double w2) {
  return params.amplitude() * unit_exp(ImagAxis::j, kernel_angle(params, x2, w2));
}

Axis olct_output_axis(const Axis& spatial, const OlctParams& params) {
  const Axis nu = frequency_axis(spatial);
  const double scale = std::abs(params.b());
  return Axis(nu.n, nu.min * scale, nu.step * scale);
}

QolctPlan QolctPlan::for_grid(const OlctParams& p1, const OlctParams& p2, const Axis& x1, const Axis& x2) {
  return QolctPlan{p1, p2, x1, x2, olct_output_axis(x1, p1), olct_output_axis(x2, p2)};
}

QolctEngine::QolctEngine(const QolctPlan& plan, SumMode mode)
    : plan_(plan),
      mode_(mode),
      forward_sum_(plan.x1, plan.x2, frequency_axis(plan.x1), frequency_axis(plan.x2), -plan.params1.sign_b(),
                   -plan.params2.sign_b(), SumMode::fast),
      inverse_sum_(frequency_axis(plan.x1), frequency_axis(plan.x2), plan.x1, plan.x2, plan.params1.sign_b(),
                   plan.params2.sign_b(), SumMode::fast) {
  const OlctParams& p1 = plan.params1;
  const OlctParams& p2 = plan.params2;
  if (mode == SumMode::fast) {
    auto fill_in = [](const Axis& ax, const OlctParams& p) {
      std::vector<Complex> t(ax.n);
      for (std::size_t k = 0; k < ax.n; ++k) t[k] = std::polar(1.0, p.input_chirp(ax.coordinate(k)));
      return t;
    };
    auto fill_out = [](const Axis& ax, const OlctParams& p) {
      std::vector<Complex> t(ax.n);
      const double rot = -p.sign_b() * std::numbers::pi / 4.0;
      for (std::size_t m = 0; m < ax.n; ++m) t[m] = std::polar(p.amplitude(), p.output_chirp(ax.coordinate(m)) + rot);
      return t;
    };
    in_chirp1_ = fill_in(plan.x1, p1);
    in_chirp2_ = fill_in(plan.x2, p2);
    out_chirp1_ = fill_out(plan.w1, p1);
    out_chirp2_ = fill_out(plan.w2, p2);
    return;
  }
  auto table = [](const Axis& rows, const Axis& cols, auto&& entry) {
    std::vector<Quaternion> t(rows.n * cols.n);
    for (std::size_t r = 0; r < rows.n; ++r) {
      for (std::size_t c = 0; c < cols.n; ++c) t[r * cols.n + c] = entry(rows.coordinate(r), cols.coordinate(c));
    }
    return t;
  };
  fwd_left_ = table(plan.w1, plan.x1, [&](double w, double x) { return kernel_left(p1, x, w); });
  fwd_right_ = table(plan.w2, plan.x2, [&](double w, double x) { return kernel_right(p2, x, w); });
  inv_left_ = table(plan.x1, plan.w1, [&](double x, double w) { return conj(kernel_left(p1, x, w)); });
  inv_right_ = table(plan.x2, plan.w2, [&](double x, double w) { return conj(kernel_right(p2, x, w)); });
}

std::vector<Quaternion> QolctEngine::forward(std::span<const Quaternion> f) const {
  const std::size_t n1 = plan_.x1.n, n2 = plan_.x2.n;
  if (f.size() != n1 * n2) throw ShapeError("qolct forward: input size does not match the plan");
  const double weight = plan_.x1.step * plan_.x2.step;
  if (mode_ == SumMode::direct) return kernel_sandwich_sum(fwd_left_, fwd_right_, f, n1, n2, weight);

  std::vector<Quaternion> h(f.size());
  for (std::size_t k1 = 0; k1 < n1; ++k1) {
    for (std::size_t k2 = 0; k2 < n2; ++k2) {
      h[k1 * n2 + k2] = right_mul_j(left_mul(in_chirp1_[k1], f[k1 * n2 + k2]), in_chirp2_[k2]);
    }
  }
  std::vector<Quaternion> out = forward_sum_.apply(h, weight);
  const std::size_t m2n = plan_.w2.n;
  for (std::size_t m1 = 0; m1 < plan_.w1.n; ++m1) {
    for (std::size_t m2 = 0; m2 < m2n; ++m2) {
      Quaternion& v = out[m1 * m2n + m2];
      v = right_mul_j(left_mul(out_chirp1_[m1], v), out_chirp2_[m2]);
    }
  }
  return out;
}

std::vector<Quaternion> QolctEngine::inverse(std::span<const Quaternion> spectrum) const {
  const std::size_t m1n = plan_.w1.n, m2n = plan_.w2.n;
  if (spectrum.size() != m1n * m2n) throw ShapeError("qolct inverse: input size does not match the plan");
  const double weight = plan_.w1.step * plan_.w2.step;
  if (mode_ == SumMode::direct) return kernel_sandwich_sum(inv_left_, inv_right_, spectrum, m1n, m2n, weight);

  // conj of the output chirp (including amplitude) on w, then conj of the input chirp on x.
  std::vector<Quaternion> g(spectrum.size());
  for (std::size_t m1 = 0; m1 < m1n; ++m1) {
    for (std::size_t m2 = 0; m2 < m2n; ++m2) {
      g[m1 * m2n + m2] =
          right_mul_j(left_mul(std::conj(out_chirp1_[m1]), spectrum[m1 * m2n + m2]), std::conj(out_chirp2_[m2]));
    }
  }
  std::vector<Quaternion> out = inverse_sum_.apply(g, weight);
  const std::size_t n2 = plan_.x2.n;
  for (std::size_t k1 = 0; k1 < plan_.x1.n; ++k1) {
    for (std::size_t k2 = 0; k2 < n2; ++k2) {
      Quaternion& v = out[k1 * n2 + k2];
      v = right_mul_j(left_mul(std::conj(in_chirp1_[k1]), v), std::conj(in_chirp2_[k2]));
    }
  }
  return out;
}

GridSignal2D qolct_forward(const GridSignal2D& f, const QolctPlan& plan, SumMode mode) {
  if (!same_grid(f.axis1(), plan.x1) || !same_grid(f.axis2(), plan.x2)) {
    throw ShapeError("qolct_forward: signal axes do not match the plan");
  }
  return GridSignal2D(plan.w1, plan.w2, QolctEngine(plan, mode).forward(f.samples()));
}

GridSignal2D qolct_inverse(const GridSignal2D& spectrum, const QolctPlan& plan, SumMode mode) {
  if (!same_grid(spectrum.axis1(), plan.w1) || !same_grid(spectrum.axis2(), plan.w2)) {
    throw ShapeError("qolct_inverse: spectrum axes do not match the plan");
  }
  return GridSignal2D(plan.x1, plan.x2, QolctEngine(plan, mode).inverse(spectrum.samples()));
}

}  // namespace qtf
