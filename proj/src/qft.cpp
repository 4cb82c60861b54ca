#include "qtf/qft.hpp"

#include <cmath>
#include <numbers>

#include "qtf/errors.hpp"

namespace qtf {

namespace {

void require_axes(const GridSignal2D& g, const Axis& a1, const Axis& a2, const char* what) {
  if (!same_grid(g.axis1(), a1) || !same_grid(g.axis2(), a2)) {
    throw ShapeError(std::string(what) + ": signal axes do not match the plan");
  }
}

}  // namespace

Axis frequency_axis(const Axis& spatial) {
  const double step = 2.0 * std::numbers::pi / (static_cast<double>(spatial.n) * spatial.step);
  return Axis(spatial.n, -0.5 * static_cast<double>(spatial.n) * step + 0.5 * step, step);
}

QftPlan QftPlan::for_grid(const Axis& x1, const Axis& x2, SumMode mode) {
  return QftPlan{x1, x2, frequency_axis(x1), frequency_axis(x2), mode};
}

GridSignal2D qft_forward(const GridSignal2D& f, const QftPlan& plan) {
  require_axes(f, plan.x1, plan.x2, "qft_forward");
  const ExpSumPlan sum(plan.x1, plan.x2, plan.w1, plan.w2, -1, -1, plan.mode);
  return GridSignal2D(plan.w1, plan.w2, sum.apply(f.samples(), plan.x1.step * plan.x2.step));
}

GridSignal2D qft_inverse(const GridSignal2D& spectrum, const QftPlan& plan) {
  require_axes(spectrum, plan.w1, plan.w2, "qft_inverse");
  const ExpSumPlan sum(plan.w1, plan.w2, plan.x1, plan.x2, +1, +1, plan.mode);
  const double weight = plan.w1.step * plan.w2.step / (4.0 * std::numbers::pi * std::numbers::pi);
  return GridSignal2D(plan.x1, plan.x2, sum.apply(spectrum.samples(), weight));
}

std::vector<double> qft_modulus(const GridSignal2D& spectrum) {
  std::vector<double> out(spectrum.size());
  const auto s = spectrum.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = norm(s[i]);
  return out;
}

std::vector<double> qft_component_modulus(const GridSignal2D& f, const QftPlan& plan) {
  std::vector<double> acc(f.size(), 0.0);
  for (int c = 0; c < 4; ++c) {
    std::vector<Quaternion> comp(f.size());
    const auto s = f.samples();
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const double v[4] = {s[i].q0, s[i].q1, s[i].q2, s[i].q3};
      comp[i] = v[c];
    }
    const GridSignal2D spectrum = qft_forward(GridSignal2D(f.axis1(), f.axis2(), std::move(comp)), plan);
    const auto t = spectrum.samples();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += norm_squared(t[i]);
  }
  for (double& v : acc) v = std::sqrt(v);
  return acc;
}

}  // namespace qtf
