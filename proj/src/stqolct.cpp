#include "qtf/stqolct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtf/errors.hpp"
#include "qtf/parallel.hpp"
#include "qtf/qft.hpp"
#include "qtf/summation.hpp"

namespace qtf {

namespace {

constexpr std::size_t kBatch = 32;

std::vector<Quaternion> modified_samples(const GridSignal2D& f, const GridSignal2D& window, long t1, long t2) {
  const long n1 = static_cast<long>(f.n1());
  const long n2 = static_cast<long>(f.n2());
  std::vector<Quaternion> out(f.size());
  for (long k1 = 0; k1 < n1; ++k1) {
    const long s1 = k1 - t1;
    if (s1 < 0 || s1 >= n1) continue;
    for (long k2 = 0; k2 < n2; ++k2) {
      const long s2 = k2 - t2;
      if (s2 < 0 || s2 >= n2) continue;
      out[static_cast<std::size_t>(k1 * n2 + k2)] =
          f(static_cast<std::size_t>(k1), static_cast<std::size_t>(k2)) *
          conj(window(static_cast<std::size_t>(s1), static_cast<std::size_t>(s2)));
    }
  }
  return out;
}

// One window position -> S(., u), for each of the three routes.
class SliceComputer {
 public:
  SliceComputer(const GridSignal2D& f, const StqolctPlan& plan, StRoute route)
      : f_(f), plan_(plan), route_(route) {
    const QolctPlan& q = plan.qolct;
    if (route == StRoute::direct) {
      engine_ = std::make_unique<QolctEngine>(q, SumMode::direct);
    } else if (route == StRoute::via_qolct) {
      engine_ = std::make_unique<QolctEngine>(q, SumMode::fast);
    } else {
      qft_ = std::make_unique<ExpSumPlan>(q.x1, q.x2, frequency_axis(q.x1), frequency_axis(q.x2), -1, -1,
                                          SumMode::fast);
      h_left_ = chirp_table(q.x1, q.params1);
      h_right_ = chirp_table(q.x2, q.params2);
      pre_left_ = prefactor_table(q.w1, q.params1);
      pre_right_ = prefactor_table(q.w2, q.params2);
    }
  }

  std::vector<Quaternion> compute(std::size_t j1, std::size_t j2) const {
    std::vector<Quaternion> m = modified_samples(f_, plan_.window, plan_.shift1(j1), plan_.shift2(j2));
    if (engine_) return engine_->forward(m);
    return via_qft(std::move(m));
  }

 private:
  static std::vector<Complex> chirp_table(const Axis& x, const OlctParams& p) {
    std::vector<Complex> t(x.n);
    for (std::size_t k = 0; k < x.n; ++k) {
      const double xv = x.coordinate(k);
      t[k] = std::polar(1.0, p.a() / (2.0 * p.b()) * xv * xv + xv * p.p() / p.b());
    }
    return t;
  }

  // (2 pi b i)^-1/2 e^{i [-w (dp - bq) / b + d (w^2 + p^2) / (2b)]}
  static std::vector<Complex> prefactor_table(const Axis& w, const OlctParams& p) {
    std::vector<Complex> t(w.n);
    const double amp = 1.0 / std::sqrt(2.0 * std::numbers::pi * std::abs(p.b()));
    for (std::size_t m = 0; m < w.n; ++m) {
      const double wv = w.coordinate(m);
      const double angle = -wv * (p.d() * p.p() - p.b() * p.q()) / p.b() +
                           p.d() / (2.0 * p.b()) * (wv * wv + p.p() * p.p()) - p.sign_b() * std::numbers::pi / 4.0;
      t[m] = std::polar(amp, angle);
    }
    return t;
  }

  std::vector<Quaternion> via_qft(std::vector<Quaternion> h) const {
    const QolctPlan& q = plan_.qolct;
    const std::size_t n1 = q.x1.n, n2 = q.x2.n;
    for (std::size_t k1 = 0; k1 < n1; ++k1) {
      for (std::size_t k2 = 0; k2 < n2; ++k2) {
        Quaternion& v = h[k1 * n2 + k2];
        v = right_mul_j(left_mul(h_left_[k1], v), h_right_[k2]);
      }
    }
    // QFT[h] on the centered frequency grid; w / b runs backwards through it when b < 0.
    const std::vector<Quaternion> spectrum = qft_->apply(h, q.x1.step * q.x2.step);
    const std::size_t m1n = q.w1.n, m2n = q.w2.n;
    const bool flip1 = q.params1.b() < 0, flip2 = q.params2.b() < 0;
    std::vector<Quaternion> out(m1n * m2n);
    for (std::size_t m1 = 0; m1 < m1n; ++m1) {
      const std::size_t r1 = flip1 ? m1n - 1 - m1 : m1;
      for (std::size_t m2 = 0; m2 < m2n; ++m2) {
        const std::size_t r2 = flip2 ? m2n - 1 - m2 : m2;
        out[m1 * m2n + m2] = right_mul_j(left_mul(pre_left_[m1], spectrum[r1 * m2n + r2]), pre_right_[m2]);
      }
    }
    return out;
  }

  const GridSignal2D& f_;
  const StqolctPlan& plan_;
  StRoute route_;
  std::unique_ptr<QolctEngine> engine_;
  std::unique_ptr<ExpSumPlan> qft_;
  std::vector<Complex> h_left_, h_right_, pre_left_, pre_right_;
};

void require_stride_one(std::size_t stride, const char* what) {
  if (stride != 1) throw ParameterError(std::string(what) + " needs a stride-1 window grid");
}

void require_plan_grid(const GridSignal2D& f, const StqolctPlan& plan, const char* what) {
  if (!same_grid(f.axis1(), plan.qolct.x1) || !same_grid(f.axis2(), plan.qolct.x2)) {
    throw ShapeError(std::string(what) + ": signal axes do not match the plan");
  }
}

// sum_u K^-i S(., u) K^-j phi(x - u) du / ||phi||^2 with slices supplied by `slice_at`.
GridSignal2D reconstruct_impl(const StqolctPlan& plan,
                              const std::function<std::vector<Quaternion>(std::size_t, std::size_t)>& slice_at) {
  require_stride_one(plan.stride, "reconstruction");
  const QolctEngine engine(plan.qolct, SumMode::fast);
  const double window_energy = l2_norm_squared(plan.window);
  if (!(window_energy > 0.0)) throw ParameterError("reconstruction: window has zero norm");

  const std::size_t positions = plan.positions();
  const std::size_t nx = plan.window.size();
  PairwiseAccumulator<Quaternion> acc(nx);
  std::vector<std::vector<Quaternion>> batch(kBatch);
  for (std::size_t start = 0; start < positions; start += kBatch) {
    const std::size_t count = std::min(kBatch, positions - start);
    parallel_for(count, [&](std::size_t b) {
      const std::size_t idx = start + b;
      const std::size_t j1 = idx / plan.u2.n, j2 = idx % plan.u2.n;
      std::vector<Quaternion> g = engine.inverse(slice_at(j1, j2));
      const GridSignal2D shifted = translate_by_samples(plan.window, plan.shift1(j1), plan.shift2(j2));
      const auto phi = shifted.samples();
      for (std::size_t i = 0; i < nx; ++i) g[i] = g[i] * phi[i];
      batch[b] = std::move(g);
    });
    for (std::size_t b = 0; b < count; ++b) acc.add(std::move(batch[b]));
  }
  std::vector<Quaternion> out = acc.total();
  const double weight = plan.u1.step * plan.u2.step / window_energy;
  for (Quaternion& v : out) v *= weight;
  return GridSignal2D(plan.qolct.x1, plan.qolct.x2, std::move(out));
}

}  // namespace

StqolctPlan StqolctPlan::make(const QolctPlan& qolct, const GridSignal2D& window, std::size_t stride) {
  if (!same_grid(window.axis1(), qolct.x1) || !same_grid(window.axis2(), qolct.x2)) {
    throw ShapeError("window does not live on the transform's spatial grid");
  }
  if (stride < 1) throw ParameterError("u-stride must be at least 1");
  if (!(l2_norm(window) > 0.0)) throw ParameterError("window must have nonzero norm");
  auto positions = [stride](std::size_t n) { return (n - 1) / stride + 1; };
  const std::size_t nu1 = positions(qolct.x1.n), nu2 = positions(qolct.x2.n);
  if (nu1 < 2 || nu2 < 2) throw ParameterError("u-stride leaves fewer than 2 window positions");

  StqolctPlan plan{qolct, window, stride, {}, {}, 0, 0};
  plan.first_shift1 = -static_cast<long>(qolct.x1.n / 2);
  plan.first_shift2 = -static_cast<long>(qolct.x2.n / 2);
  const double s = static_cast<double>(stride);
  plan.u1 = Axis(nu1, static_cast<double>(plan.first_shift1) * qolct.x1.step, s * qolct.x1.step);
  plan.u2 = Axis(nu2, static_cast<double>(plan.first_shift2) * qolct.x2.step, s * qolct.x2.step);
  return plan;
}

GridSignal2D modified_signal(const GridSignal2D& f, const GridSignal2D& window, double u1, double u2) {
  require_same_grid(f, window, "modified_signal");
  return pointwise_product(f, [&] {
    const GridSignal2D shifted = translate_window(window, u1, u2);
    std::vector<Quaternion> c(shifted.size());
    const auto s = shifted.samples();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = conj(s[i]);
    return GridSignal2D(shifted.axis1(), shifted.axis2(), std::move(c));
  }());
}

StqolctField::StqolctField(Axis w1, Axis w2, Axis u1, Axis u2, OlctParams p1, OlctParams p2, std::size_t stride,
                           std::vector<Quaternion> data, std::shared_ptr<const StqolctPlan> plan)
    : w1_(w1), w2_(w2), u1_(u1), u2_(u2), p1_(p1), p2_(p2), stride_(stride), data_(std::move(data)),
      plan_(std::move(plan)) {
  if (data_.size() != w1.n * w2.n * u1.n * u2.n) throw ShapeError("field payload size does not match its axes");
}

GridSignal2D StqolctField::slice(std::size_t j1, std::size_t j2) const {
  std::vector<Quaternion> out(w1_.n * w2_.n);
  for (std::size_t m1 = 0; m1 < w1_.n; ++m1) {
    for (std::size_t m2 = 0; m2 < w2_.n; ++m2) out[m1 * w2_.n + m2] = (*this)(m1, m2, j1, j2);
  }
  return GridSignal2D(w1_, w2_, std::move(out));
}

void stqolct_for_each(const GridSignal2D& f, const StqolctPlan& plan, StRoute route,
                      const std::function<void(std::size_t, std::size_t, std::span<const Quaternion>)>& visit) {
  require_plan_grid(f, plan, "stqolct");
  const SliceComputer computer(f, plan, route);
  const std::size_t positions = plan.positions();
  std::vector<std::vector<Quaternion>> batch(kBatch);
  for (std::size_t start = 0; start < positions; start += kBatch) {
    const std::size_t count = std::min(kBatch, positions - start);
    parallel_for(count, [&](std::size_t b) {
      const std::size_t idx = start + b;
      batch[b] = computer.compute(idx / plan.u2.n, idx % plan.u2.n);
    });
    for (std::size_t b = 0; b < count; ++b) {
      const std::size_t idx = start + b;
      visit(idx / plan.u2.n, idx % plan.u2.n, batch[b]);
    }
  }
}

StqolctField stqolct_forward(const GridSignal2D& f, const StqolctPlan& plan, StRoute route) {
  const QolctPlan& q = plan.qolct;
  const std::size_t nw1 = q.w1.n, nw2 = q.w2.n, nu1 = plan.u1.n, nu2 = plan.u2.n;
  std::vector<Quaternion> data(nw1 * nw2 * nu1 * nu2);
  stqolct_for_each(f, plan, route, [&](std::size_t j1, std::size_t j2, std::span<const Quaternion> s) {
    for (std::size_t m1 = 0; m1 < nw1; ++m1) {
      for (std::size_t m2 = 0; m2 < nw2; ++m2) data[((m1 * nw2 + m2) * nu1 + j1) * nu2 + j2] = s[m1 * nw2 + m2];
    }
  });
  return StqolctField(q.w1, q.w2, plan.u1, plan.u2, q.params1, q.params2, plan.stride, std::move(data),
                      std::make_shared<const StqolctPlan>(plan));
}

double stqolct_energy(const StqolctField& field) {
  const auto s = field.samples();
  std::vector<double> terms(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) terms[i] = norm_squared(s[i]);
  return pairwise_sum(terms) * field.w1().step * field.w2().step * field.u1().step * field.u2().step;
}

StqolctSummary stqolct_summarize(const GridSignal2D& f, const StqolctPlan& plan, StRoute route) {
  const QolctPlan& q = plan.qolct;
  const std::size_t nw = q.w1.n * q.w2.n;
  PairwiseAccumulator<double> acc(nw);
  double sup = 0.0;
  stqolct_for_each(f, plan, route, [&](std::size_t, std::size_t, std::span<const Quaternion> s) {
    std::vector<double> e(nw);
    for (std::size_t i = 0; i < nw; ++i) {
      e[i] = norm_squared(s[i]);
      sup = std::max(sup, std::sqrt(e[i]));
    }
    acc.add(std::move(e));
  });
  StqolctSummary out{q.w1, q.w2, acc.total(), sup, 0.0, plan.stride};
  const double du = plan.u1.step * plan.u2.step;
  for (double& v : out.marginal) v *= du;
  out.energy = pairwise_sum(out.marginal) * q.w1.step * q.w2.step;
  return out;
}

GridSignal2D stqolct_reconstruct(const StqolctField& field) {
  if (field.plan() == nullptr) throw ParameterError("field carries no plan; pass the window plan explicitly");
  return stqolct_reconstruct(field, *field.plan());
}

GridSignal2D stqolct_reconstruct(const StqolctField& field, const StqolctPlan& plan) {
  require_stride_one(field.stride(), "reconstruction");
  if (!same_grid(field.w1(), plan.qolct.w1) || !same_grid(field.w2(), plan.qolct.w2) ||
      !same_grid(field.u1(), plan.u1) || !same_grid(field.u2(), plan.u2)) {
    throw ShapeError("reconstruction: field axes do not match the plan");
  }
  return reconstruct_impl(plan, [&](std::size_t j1, std::size_t j2) { return std::move(field.slice(j1, j2)).release(); });
}

GridSignal2D stqolct_roundtrip(const GridSignal2D& f, const StqolctPlan& plan) {
  require_plan_grid(f, plan, "stqolct_roundtrip");
  const SliceComputer computer(f, plan, StRoute::via_qolct);
  return reconstruct_impl(plan, [&](std::size_t j1, std::size_t j2) { return computer.compute(j1, j2); });
}

MoyalResult moyal_check(const GridSignal2D& f, const GridSignal2D& g, const GridSignal2D& phi,
                        const GridSignal2D& psi, const QolctPlan& qolct) {
  const StqolctPlan plan_phi = StqolctPlan::make(qolct, phi, 1);
  const StqolctPlan plan_psi = StqolctPlan::make(qolct, psi, 1);
  require_plan_grid(f, plan_phi, "moyal_check");
  require_plan_grid(g, plan_phi, "moyal_check");
  const SliceComputer sf(f, plan_phi, StRoute::via_qolct);
  const SliceComputer sg(g, plan_psi, StRoute::via_qolct);

  const std::size_t positions = plan_phi.positions();
  std::vector<Quaternion> per_u(positions);
  parallel_for(positions, [&](std::size_t idx) {
    const std::size_t j1 = idx / plan_phi.u2.n, j2 = idx % plan_phi.u2.n;
    const std::vector<Quaternion> a = sf.compute(j1, j2);
    const std::vector<Quaternion> b = sg.compute(j1, j2);
    std::vector<Quaternion> terms(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) terms[i] = a[i] * conj(b[i]);
    per_u[idx] = pairwise_sum(terms);
  });
  const double weight = qolct.w1.step * qolct.w2.step * plan_phi.u1.step * plan_phi.u2.step;
  MoyalResult out;
  out.lhs = pairwise_sum(per_u) * weight;
  out.fg = inner_product(f, g);
  out.phipsi = inner_product(phi, psi);
  out.rhs = out.fg * out.phipsi;
  out.rhs_swapped = out.phipsi * out.fg;
  return out;
}

}  // namespace qtf
