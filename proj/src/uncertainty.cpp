#include "qtf/uncertainty.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qtf/errors.hpp"
#include "qtf/qft.hpp"
#include "qtf/special_functions.hpp"
#include "qtf/summation.hpp"

namespace qtf {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

using Params = std::vector<std::pair<std::string, std::string>>;

Params plan_params(const StqolctPlan& plan) {
  return {{"A1", plan.qolct.params1.to_string()},
          {"A2", plan.qolct.params2.to_string()},
          {"n", std::to_string(plan.qolct.x1.n)},
          {"extent", fmt(plan.qolct.x1.extent() / 2.0)}};
}

double abs_b1b2(const StqolctPlan& plan) { return std::abs(plan.qolct.params1.b() * plan.qolct.params2.b()); }

void require_stride_one(const StqolctSummary& s, const char* what) {
  if (s.stride != 1) throw ParameterError(std::string(what) + " needs a stride-1 window grid");
}

void require_signal_on_plan(const GridSignal2D& f, const StqolctPlan& plan, const char* what) {
  if (!same_grid(f.axis1(), plan.qolct.x1) || !same_grid(f.axis2(), plan.qolct.x2)) {
    throw ShapeError(std::string(what) + ": signal axes do not match the plan");
  }
}

std::vector<double> cell_energy(const GridSignal2D& f) {
  std::vector<double> e(f.size());
  const auto s = f.samples();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = norm_squared(s[i]);
  return e;
}

double radius(const Axis& a1, const Axis& a2, std::size_t flat) {
  return std::hypot(a1.coordinate(flat / a2.n), a2.coordinate(flat % a2.n));
}

// sum_x w(|x|) |f(x)|^2 dx
double weighted_energy(const GridSignal2D& f, const std::function<double(double)>& weight) {
  std::vector<double> terms(f.size());
  const auto s = f.samples();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = weight(radius(f.axis1(), f.axis2(), i)) * norm_squared(s[i]);
  }
  return pairwise_sum(terms) * f.cell_area();
}

double weighted_marginal(const StqolctSummary& s, const std::function<double(double)>& weight) {
  std::vector<double> terms(s.marginal.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = weight(radius(s.w1, s.w2, i)) * s.marginal[i];
  return pairwise_sum(terms) * s.w1.step * s.w2.step;
}

struct RadiusGroups {
  std::vector<std::size_t> group_of;  // per cell
  std::vector<double> radius;         // per group
};

// Cells whose radii agree to 1e-12 relative share a group.
RadiusGroups group_by_radius(const Axis& a1, const Axis& a2) {
  const std::size_t n = a1.n * a2.n;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = radius(a1, a2, i);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return r[x] < r[y]; });
  RadiusGroups g;
  g.group_of.resize(n);
  double anchor = -1.0;
  for (std::size_t idx : order) {
    if (g.radius.empty() || r[idx] - anchor > 1e-12 * std::max(1.0, r[idx])) {
      anchor = r[idx];
      g.radius.push_back(r[idx]);
    }
    g.group_of[idx] = g.radius.size() - 1;
  }
  return g;
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::less_eq:
      return "<=";
    case Relation::greater_eq:
      return ">=";
    case Relation::equal:
      return "==";
  }
  return "?";
}

InequalityResult make_result(std::string name, std::vector<std::pair<std::string, std::string>> params, double lhs,
                             double rhs, Relation relation, double tolerance, bool relative, bool gated) {
  InequalityResult r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.tolerance = tolerance;
  r.relative = relative;
  r.gated = gated;
  const double slack = relative ? tolerance * std::abs(rhs) : tolerance;
  switch (relation) {
    case Relation::less_eq:
      r.margin = rhs - lhs;
      break;
    case Relation::greater_eq:
      r.margin = lhs - rhs;
      break;
    case Relation::equal:
      r.margin = -std::abs(lhs - rhs);
      break;
  }
  r.pass = std::isfinite(r.margin) && r.margin >= -slack;
  return r;
}

double epsilon_concentration(const GridSignal2D& f, const CellSet& M) {
  if (!same_grid(f.axis1(), M.axis1) || !same_grid(f.axis2(), M.axis2)) {
    throw ShapeError("epsilon_concentration: cell set lives on another grid");
  }
  std::vector<double> e = cell_energy(f);
  const double total = pairwise_sum(e);
  if (!(total > 0.0)) throw ParameterError("epsilon_concentration: signal has zero norm");
  for (std::size_t c : M.cells) {
    if (c >= e.size()) throw ShapeError("epsilon_concentration: cell index out of range");
    e[c] = 0.0;
  }
  return std::min(1.0, std::sqrt(pairwise_sum(e) / total));
}

CellSet essential_support(const Axis& axis1, const Axis& axis2, std::span<const double> density, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ParameterError("essential_support: eps must lie in [0, 1]");
  if (density.size() != axis1.n * axis2.n) throw ShapeError("essential_support: density size does not match axes");
  std::vector<std::size_t> order(density.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return density[a] > density[b]; });

  // suffix[k]: energy left out when the first k sorted cells are kept; summed small-to-large.
  std::vector<double> suffix(order.size() + 1, 0.0);
  for (std::size_t k = order.size(); k-- > 0;) suffix[k] = suffix[k + 1] + density[order[k]];
  const double budget = eps * eps * suffix[0];
  std::size_t keep = 0;
  while (keep < order.size() && suffix[keep] > budget) ++keep;

  CellSet out{axis1, axis2, std::vector<std::size_t>(order.begin(), order.begin() + static_cast<long>(keep))};
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

CellSet essential_support(const GridSignal2D& f, double eps) {
  const std::vector<double> e = cell_energy(f);
  return essential_support(f.axis1(), f.axis2(), e, eps);
}

InequalityResult boundedness_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary) {
  require_signal_on_plan(f, plan, "boundedness_check");
  const double bound = l2_norm(f) * l2_norm(plan.window) / (2.0 * std::numbers::pi * std::sqrt(abs_b1b2(plan)));
  return make_result("boundedness", plan_params(plan), summary.sup_abs, bound, Relation::less_eq, 1e-9, false);
}

InequalityResult energy_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary) {
  require_signal_on_plan(f, plan, "energy_check");
  require_stride_one(summary, "energy_check");
  const double expected = l2_norm_squared(plan.window) * l2_norm_squared(f);
  return make_result("energy", plan_params(plan), summary.energy, expected, Relation::equal, 1e-3, true);
}

InequalityResult donoho_stark_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary,
                                    double eps_m, double eps_n) {
  require_signal_on_plan(f, plan, "donoho_stark_check");
  require_stride_one(summary, "donoho_stark_check");
  if (!(eps_m >= 0.0 && eps_n >= 0.0 && eps_m + eps_n < 1.0)) {
    throw ParameterError("donoho_stark_check: need epsM, epsN >= 0 and epsM + epsN < 1");
  }
  const CellSet M = essential_support(f, eps_m);
  const CellSet N = essential_support(summary.w1, summary.w2, summary.marginal, eps_n);
  const double gap = 1.0 - eps_m - eps_n;
  const double bound = 2.0 * std::numbers::pi * abs_b1b2(plan) * gap * gap;
  Params params = plan_params(plan);
  params.emplace_back("epsM", fmt(eps_m));
  params.emplace_back("epsN", fmt(eps_n));
  InequalityResult r =
      make_result("donoho-stark", std::move(params), M.measure() * N.measure(), bound, Relation::greater_eq, 0.0, false);
  r.note = "|M|=" + fmt(M.measure()) + " |N|=" + fmt(N.measure());
  return r;
}

InequalityResult donoho_stark_check(const GridSignal2D& f, const StqolctPlan& plan, double eps_m, double eps_n) {
  return donoho_stark_check(f, plan, stqolct_summarize(f, plan), eps_m, eps_n);
}

double pitt_lhs(const StqolctSummary& summary, double alpha) {
  require_stride_one(summary, "pitt_lhs");
  return weighted_marginal(summary, [alpha](double r) { return std::pow(r, -alpha); });
}

double pitt_rhs(const GridSignal2D& f, const StqolctPlan& plan, double alpha) {
  require_signal_on_plan(f, plan, "pitt_rhs");
  const double moment = weighted_energy(f, [alpha](double r) { return std::pow(r, alpha); });
  return pitt_constant(alpha) / (kFourPiSq * std::pow(abs_b1b2(plan), alpha)) * l2_norm_squared(plan.window) * moment;
}

InequalityResult pitt_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary,
                            double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw ParameterError("pitt_check: alpha must lie in [0, 2)");
  const double lhs = pitt_lhs(summary, alpha);
  const double rhs = pitt_rhs(f, plan, alpha);
  Params params = plan_params(plan);
  params.emplace_back("alpha", fmt(alpha));
  if (alpha == 0.0) return make_result("pitt", std::move(params), lhs, rhs, Relation::equal, 1e-3, true);
  return make_result("pitt", std::move(params), lhs, rhs, Relation::less_eq, 1e-6, true);
}

LogUpResult log_up_check(const GridSignal2D& f, const StqolctPlan& plan, const StqolctSummary& summary, double h) {
  require_signal_on_plan(f, plan, "log_up_check");
  require_stride_one(summary, "log_up_check");
  if (!(h > 0.0 && h < 2.0)) throw ParameterError("log_up_check: step h must lie in (0, 2)");
  const double phi2 = l2_norm_squared(plan.window);
  const double f2 = l2_norm_squared(f);
  const double log_b = std::log(abs_b1b2(plan));
  const double log_w = weighted_marginal(summary, [](double r) { return std::log(r); });
  const double log_x = weighted_energy(f, [](double r) { return std::log(r); });

  LogUpResult out;
  Params params = plan_params(plan);
  const double literal_lhs = log_w + phi2 / kFourPiSq * log_x;
  const double literal_rhs = (log_up_constant() + log_b) / kFourPiSq * phi2 * f2;
  out.literal = make_result("log-up-literal", params, literal_lhs, literal_rhs, Relation::greater_eq, 1e-6, true,
                            /*gated=*/false);

  const double psi0 = pitt_lhs(summary, 0.0) - pitt_rhs(f, plan, 0.0);
  const double psih = pitt_lhs(summary, h) - pitt_rhs(f, plan, h);
  const double quotient = (psih - psi0) / (h * phi2 * f2);
  params.emplace_back("h", fmt(h));
  out.derivative = make_result("log-up", std::move(params), quotient, 0.0, Relation::less_eq, 1e-6, false);
  // The same inequality with the weights that the derivative actually produces.
  out.derivative.note = "log-weighted sum " + fmt(log_w + phi2 * log_x) + " vs bound " +
                        fmt((log_up_constant() + log_b) * phi2 * f2);
  return out;
}

HardyFit hardy_decay_fit(const Axis& w1, const Axis& w2, std::span<const double> magnitude, double b1, double p1,
                         double b2, double p2, double cutoff) {
  if (magnitude.size() != w1.n * w2.n) throw ShapeError("hardy_decay_fit: magnitude size does not match axes");
  if (b1 == 0.0 || b2 == 0.0) throw ParameterError("hardy_decay_fit: b must be nonzero");
  const std::size_t n = magnitude.size();
  std::vector<double> r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = (w1.coordinate(i / w2.n) - p1) / b1;
    const double b = (w2.coordinate(i % w2.n) - p2) / b2;
    r2[i] = a * a + b * b;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r2[a] < r2[b]; });

  double limit_sq;
  if (cutoff > 0.0) {
    limit_sq = cutoff * cutoff;
  } else {
    const double peak = *std::max_element(magnitude.begin(), magnitude.end());
    if (!(peak > 0.0)) throw FitError("hardy_decay_fit: magnitude is identically zero");
    limit_sq = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
      if (!(magnitude[idx] >= 1e-6 * peak)) {
        limit_sq = r2[idx] * (1.0 - 1e-12);
        break;
      }
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t used = 0;
  double reach = 0.0;
  for (std::size_t idx : order) {
    if (r2[idx] > limit_sq) break;
    if (!(magnitude[idx] > 0.0)) throw FitError("hardy_decay_fit: nonpositive magnitude inside the fit region");
    const double x = r2[idx];
    const double y = std::log(magnitude[idx]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    reach = x;
    ++used;
  }
  if (used < 3) throw FitError("hardy_decay_fit: fewer than 3 cells in the fit region");
  const double m = static_cast<double>(used);
  const double vx = sxx - sx * sx / m;
  const double vy = syy - sy * sy / m;
  const double cxy = sxy - sx * sy / m;
  if (!(vx > 0.0)) throw FitError("hardy_decay_fit: fit region has a single radius");

  HardyFit fit;
  fit.beta_hat = -cxy / vx;
  fit.r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  fit.cutoff = std::sqrt(reach);
  fit.cells = used;
  fit.gaussian_decay = fit.beta_hat > 0.0 && fit.r2 >= 0.99;
  return fit;
}

HardyFit hardy_decay_fit(const GridSignal2D& spectrum, double cutoff) {
  const std::vector<double> m = qft_modulus(spectrum);
  return hardy_decay_fit(spectrum.axis1(), spectrum.axis2(), m, 1.0, 0.0, 1.0, 0.0, cutoff);
}

HardyFit hardy_decay_fit(const GridSignal2D& f, const StqolctPlan& plan, std::size_t j1, std::size_t j2) {
  require_signal_on_plan(f, plan, "hardy_decay_fit");
  if (j1 >= plan.u1.n || j2 >= plan.u2.n) throw ParameterError("hardy_decay_fit: u-index out of range");
  const GridSignal2D shifted = translate_by_samples(plan.window, plan.shift1(j1), plan.shift2(j2));
  std::vector<Quaternion> m(f.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.samples()[i] * conj(shifted.samples()[i]);
  const GridSignal2D S = qolct_forward(GridSignal2D(f.axis1(), f.axis2(), std::move(m)), plan.qolct);
  const OlctParams& a = plan.qolct.params1;
  const OlctParams& b = plan.qolct.params2;
  return hardy_decay_fit(S.axis1(), S.axis2(), qft_modulus(S), a.b(), a.p(), b.b(), b.p());
}

std::pair<std::size_t, std::size_t> zero_position(const StqolctPlan& plan) {
  auto nearest = [&](long first, std::size_t count) {
    const double j = -static_cast<double>(first) / static_cast<double>(plan.stride);
    return static_cast<std::size_t>(std::clamp(std::lround(j), 0L, static_cast<long>(count) - 1));
  };
  return {nearest(plan.first_shift1, plan.u1.n), nearest(plan.first_shift2, plan.u2.n)};
}

std::pair<std::size_t, std::size_t> overlap_maximizing_position(const GridSignal2D& f, const StqolctPlan& plan) {
  require_signal_on_plan(f, plan, "overlap_maximizing_position");
  const long n1 = static_cast<long>(f.n1()), n2 = static_cast<long>(f.n2());
  std::vector<double> af(f.size()), aw(f.size());
  for (std::size_t i = 0; i < af.size(); ++i) {
    af[i] = norm(f.samples()[i]);
    aw[i] = norm(plan.window.samples()[i]);
  }
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_value = -1.0;
  for (std::size_t j1 = 0; j1 < plan.u1.n; ++j1) {
    for (std::size_t j2 = 0; j2 < plan.u2.n; ++j2) {
      const long t1 = plan.shift1(j1), t2 = plan.shift2(j2);
      double acc = 0.0;
      for (long k1 = std::max(0L, t1); k1 < std::min(n1, n1 + t1); ++k1) {
        for (long k2 = std::max(0L, t2); k2 < std::min(n2, n2 + t2); ++k2) {
          acc += af[static_cast<std::size_t>(k1 * n2 + k2)] * aw[static_cast<std::size_t>((k1 - t1) * n2 + (k2 - t2))];
        }
      }
      if (acc > best_value) {
        best_value = acc;
        best = {j1, j2};
      }
    }
  }
  return best;
}

BeurlingResult beurling_integral(const GridSignal2D& f, const StqolctPlan& plan, double d) {
  require_signal_on_plan(f, plan, "beurling_integral");
  if (!(d >= 0.0) || !std::isfinite(d)) throw ParameterError("beurling_integral: d must be finite and >= 0");
  if (plan.stride != 1) throw ParameterError("beurling_integral needs a stride-1 window grid");

  const QolctPlan& q = plan.qolct;
  const RadiusGroups gx = group_by_radius(q.x1, q.x2);
  const RadiusGroups gw = group_by_radius(q.w1, q.w2);
  const std::size_t nx = gx.radius.size(), nw = gw.radius.size();
  std::vector<double> abs_f(f.size());
  for (std::size_t i = 0; i < abs_f.size(); ++i) abs_f[i] = norm(f.samples()[i]);

  // C(rx, rw) = sum_u a_u(rx) b_u(rw); the exponential weight depends on the radii only.
  std::vector<double> C(nx * nw, 0.0);
  std::vector<double> a(nx), b(nw);
  stqolct_for_each(f, plan, StRoute::via_qolct, [&](std::size_t j1, std::size_t j2, std::span<const Quaternion> S) {
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(b.begin(), b.end(), 0.0);
    const GridSignal2D shifted = translate_by_samples(plan.window, plan.shift1(j1), plan.shift2(j2));
    const auto phi = shifted.samples();
    for (std::size_t i = 0; i < abs_f.size(); ++i) a[gx.group_of[i]] += abs_f[i] * norm(phi[i]);
    for (std::size_t i = 0; i < S.size(); ++i) b[gw.group_of[i]] += norm(S[i]);
    for (std::size_t r = 0; r < nx; ++r) {
      if (a[r] == 0.0) continue;
      double* row = &C[r * nw];
      for (std::size_t c = 0; c < nw; ++c) row[c] += a[r] * b[c];
    }
  });

  const double log_cell = std::log(q.x1.step * q.x2.step * q.w1.step * q.w2.step * plan.u1.step * plan.u2.step);
  std::vector<double> logs;
  logs.reserve(C.size());
  for (std::size_t r = 0; r < nx; ++r) {
    for (std::size_t c = 0; c < nw; ++c) {
      const double v = C[r * nw + c];
      if (v <= 0.0) continue;
      const double rx = gx.radius[r], rw = gw.radius[c];
      logs.push_back(std::log(v) + rx * rw - d * std::log1p(rx + rw) + log_cell);
    }
  }
  BeurlingResult out;
  if (logs.empty()) {
    out.log_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double scaled = 0.0;
  for (double l : logs) scaled += std::exp(l - top);
  out.log_value = top + std::log(scaled);
  const double log_max = std::log(std::numeric_limits<double>::max());
  out.saturated = top > log_max || out.log_value > log_max;
  out.value = out.saturated ? std::numeric_limits<double>::infinity() : std::exp(out.log_value);
  return out;
}

}  // namespace qtf
