#include "qtf/grid_signal.hpp"

#include <cmath>
#include <string>

#include "qtf/errors.hpp"
#include "qtf/summation.hpp"

namespace qtf {

Axis::Axis(std::size_t n_, double min_, double step_) : n{n_}, min{min_}, step{step_} {
  if (n < 2) throw ParameterError("axis needs at least 2 samples");
  if (!(step > 0.0) || !std::isfinite(step)) throw ParameterError("axis step must be positive and finite");
  if (!std::isfinite(min)) throw ParameterError("axis origin must be finite");
}

Axis Axis::centered(std::size_t n, double extent) {
  if (!(extent > 0.0)) throw ParameterError("axis extent must be positive");
  if (n < 2) throw ParameterError("axis needs at least 2 samples");
  const double step = 2.0 * extent / static_cast<double>(n);
  return Axis(n, -extent + 0.5 * step, step);
}

bool same_grid(const Axis& a, const Axis& b) {
  if (a.n != b.n) return false;
  const double span = std::max(a.extent(), std::abs(a.min) + a.extent());
  const double tol = 1e-12 * span;
  return std::abs(a.min - b.min) <= tol &&
         std::abs(a.step - b.step) * static_cast<double>(a.n) <= tol;
}

GridSignal2D::GridSignal2D(Axis ax1, Axis ax2) : ax1_(ax1), ax2_(ax2), data_(ax1.n * ax2.n) {}

GridSignal2D::GridSignal2D(Axis ax1, Axis ax2, std::vector<Quaternion> data)
    : ax1_(ax1), ax2_(ax2), data_(std::move(data)) {
  if (data_.size() != ax1_.n * ax2_.n) {
    throw ShapeError("signal payload has " + std::to_string(data_.size()) + " samples, grid needs " +
                     std::to_string(ax1_.n * ax2_.n));
  }
  for (const Quaternion& q : data_) {
    if (!is_finite(q)) throw ParameterError("signal contains non-finite samples");
  }
}

GridSignal2D GridSignal2D::from_function(const Axis& ax1, const Axis& ax2,
                                         const std::function<Quaternion(double, double)>& fn) {
  std::vector<Quaternion> data(ax1.n * ax2.n);
  for (std::size_t k1 = 0; k1 < ax1.n; ++k1) {
    const double x1 = ax1.coordinate(k1);
    for (std::size_t k2 = 0; k2 < ax2.n; ++k2) data[k1 * ax2.n + k2] = fn(x1, ax2.coordinate(k2));
  }
  return GridSignal2D(ax1, ax2, std::move(data));
}

GridSignal2D GridSignal2D::with_axes(const Axis& ax1, const Axis& ax2) const {
  if (ax1.n != ax1_.n || ax2.n != ax2_.n) throw ShapeError("with_axes: sample counts differ");
  GridSignal2D out;
  out.ax1_ = ax1;
  out.ax2_ = ax2;
  out.data_ = data_;
  return out;
}

void require_same_grid(const GridSignal2D& f, const GridSignal2D& g, const char* what) {
  if (!same_grid(f.axis1(), g.axis1()) || !same_grid(f.axis2(), g.axis2())) {
    throw ShapeError(std::string(what) + ": operands live on different grids");
  }
}

Quaternion inner_product(const GridSignal2D& f, const GridSignal2D& g) {
  require_same_grid(f, g, "inner_product");
  std::vector<Quaternion> terms(f.size());
  const auto fs = f.samples();
  const auto gs = g.samples();
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = fs[i] * conj(gs[i]);
  return pairwise_sum(terms) * f.cell_area();
}

double l2_norm_squared(const GridSignal2D& f) {
  std::vector<double> terms(f.size());
  const auto fs = f.samples();
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = norm_squared(fs[i]);
  return pairwise_sum(terms) * f.cell_area();
}

double l2_norm(const GridSignal2D& f) { return std::sqrt(l2_norm_squared(f)); }

GridSignal2D gen_gaussian(const Axis& ax1, const Axis& ax2, double alpha, Quaternion amplitude) {
  if (!(alpha > 0.0)) throw ParameterError("gaussian: alpha must be positive");
  return GridSignal2D::from_function(ax1, ax2, [&](double x1, double x2) {
    return amplitude * std::exp(-alpha * (x1 * x1 + x2 * x2));
  });
}

GridSignal2D gen_chirp(const Axis& ax1, const Axis& ax2, double rate1, double rate2, double freq1,
                       double freq2) {
  return GridSignal2D::from_function(ax1, ax2, [&](double x1, double x2) {
    return unit_exp(ImagAxis::i, rate1 * x1 * x1 + freq1 * x1) *
           unit_exp(ImagAxis::j, rate2 * x2 * x2 + freq2 * x2);
  });
}

GridSignal2D gen_impulse(const Axis& ax1, const Axis& ax2, std::size_t k1, std::size_t k2) {
  if (k1 >= ax1.n || k2 >= ax2.n) throw ParameterError("impulse: index outside the grid");
  std::vector<Quaternion> data(ax1.n * ax2.n);
  data[k1 * ax2.n + k2] = 1.0 / (ax1.step * ax2.step);
  return GridSignal2D(ax1, ax2, std::move(data));
}

namespace {

template <typename Op>
GridSignal2D zip(const GridSignal2D& f, const GridSignal2D& g, const char* what, Op op) {
  require_same_grid(f, g, what);
  std::vector<Quaternion> out(f.size());
  const auto fs = f.samples();
  const auto gs = g.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(fs[i], gs[i]);
  return GridSignal2D(f.axis1(), f.axis2(), std::move(out));
}

template <typename Op>
GridSignal2D map(const GridSignal2D& f, Op op) {
  std::vector<Quaternion> out(f.size());
  const auto fs = f.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(fs[i]);
  return GridSignal2D(f.axis1(), f.axis2(), std::move(out));
}

long aligned_shift(double u, const Axis& ax) {
  const double t = u / ax.step;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw ParameterError("window offset " + std::to_string(u) + " is not a multiple of the grid step");
  }
  return static_cast<long>(r);
}

}  // namespace

GridSignal2D pointwise_product(const GridSignal2D& f, const GridSignal2D& g) {
  return zip(f, g, "pointwise_product", [](const Quaternion& a, const Quaternion& b) { return a * b; });
}

GridSignal2D add(const GridSignal2D& f, const GridSignal2D& g) {
  return zip(f, g, "add", [](const Quaternion& a, const Quaternion& b) { return a + b; });
}

GridSignal2D scale(const GridSignal2D& f, double s) {
  return map(f, [s](const Quaternion& a) { return a * s; });
}

GridSignal2D left_multiply(const Quaternion& lambda, const GridSignal2D& f) {
  return map(f, [&](const Quaternion& a) { return lambda * a; });
}

GridSignal2D translate_window(const GridSignal2D& phi, double u1, double u2) {
  return translate_by_samples(phi, aligned_shift(u1, phi.axis1()), aligned_shift(u2, phi.axis2()));
}

GridSignal2D translate_by_samples(const GridSignal2D& phi, long t1, long t2) {
  const long n1 = static_cast<long>(phi.n1());
  const long n2 = static_cast<long>(phi.n2());
  std::vector<Quaternion> out(phi.size());
  for (long k1 = 0; k1 < n1; ++k1) {
    const long s1 = k1 - t1;
    if (s1 < 0 || s1 >= n1) continue;
    for (long k2 = 0; k2 < n2; ++k2) {
      const long s2 = k2 - t2;
      if (s2 < 0 || s2 >= n2) continue;
      out[static_cast<std::size_t>(k1 * n2 + k2)] = phi(static_cast<std::size_t>(s1), static_cast<std::size_t>(s2));
    }
  }
  return GridSignal2D(phi.axis1(), phi.axis2(), std::move(out));
}

double max_abs_diff(const GridSignal2D& a, const GridSignal2D& b) {
  if (a.n1() != b.n1() || a.n2() != b.n2()) throw ShapeError("max_abs_diff: shapes differ");
  double m = 0.0;
  const auto as = a.samples();
  const auto bs = b.samples();
  for (std::size_t i = 0; i < as.size(); ++i) m = std::max(m, max_abs_diff(as[i], bs[i]));
  return m;
}

double relative_l2_error(const GridSignal2D& a, const GridSignal2D& ref) {
  if (a.n1() != ref.n1() || a.n2() != ref.n2()) throw ShapeError("relative_l2_error: shapes differ");
  std::vector<double> diff(a.size());
  std::vector<double> base(a.size());
  const auto as = a.samples();
  const auto rs = ref.samples();
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = norm_squared(as[i] - rs[i]);
    base[i] = norm_squared(rs[i]);
  }
  return std::sqrt(pairwise_sum(diff) / pairwise_sum(base));
}

}  // namespace qtf
