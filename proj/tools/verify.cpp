#include "verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>

#include "qtf/errors.hpp"
#include "qtf/qft.hpp"
#include "qtf/stqolct.hpp"

namespace qtf::cli {

namespace {

using nlohmann::json;
using Params = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

[[noreturn]] void bad(const std::string& what) { throw ParameterError("config: " + what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
  }
}

double read_double(const json& j, const std::string& key) {
  if (!j.is_number()) bad("'" + key + "' must be a number");
  return j.get<double>();
}

std::size_t read_count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad("'" + key + "' must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> read_doubles(const json& j, const std::string& key) {
  if (!j.is_array()) bad("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(read_double(v, key));
  return out;
}

OlctParams read_params(const json& j) {
  if (j.is_string()) return OlctParams::parse(j.get<std::string>());
  const std::vector<double> v = read_doubles(j, "params");
  if (v.size() != 6) bad("a parameter set needs six entries a,b,c,d,p,q");
  return OlctParams(v[0], v[1], v[2], v[3], v[4], v[5]);
}

SignalSpec read_signal(const json& j) {
  check_keys(j, {"kind", "alpha", "rate1", "rate2", "freq1", "freq2"}, "signal");
  SignalSpec s;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) bad("signal kind must be a string");
    s.kind = j["kind"].get<std::string>();
  }
  if (j.contains("alpha")) s.alpha = read_double(j["alpha"], "alpha");
  if (j.contains("rate1")) s.rate1 = read_double(j["rate1"], "rate1");
  if (j.contains("rate2")) s.rate2 = read_double(j["rate2"], "rate2");
  if (j.contains("freq1")) s.freq1 = read_double(j["freq1"], "freq1");
  if (j.contains("freq2")) s.freq2 = read_double(j["freq2"], "freq2");
  return s;
}

GridSignal2D make_signal(const SignalSpec& s, const Axis& x) {
  const GridSignal2D g = gen_gaussian(x, x, s.alpha);
  if (s.kind == "gaussian") return g;
  return pointwise_product(gen_chirp(x, x, s.rate1, s.rate2, s.freq1, s.freq2), g);
}

Params pair_params(const ParamPair& p, const Axis& x) {
  return {{"A1", p.a1.to_string()},
          {"A2", p.a2.to_string()},
          {"n", std::to_string(x.n)},
          {"extent", fmt(x.extent() / 2.0)}};
}

InequalityResult tagged(InequalityResult r, const std::string& signal) {
  r.params.emplace_back("signal", signal);
  return r;
}

void positive(double v, const std::string& what) {
  if (!(std::isfinite(v) && v > 0)) bad(what + " must be positive and finite");
}

// ST checks that share one streaming summary.
void run_summary_families(const RunConfig& cfg, const GridSignal2D& f, const std::string& label,
                          const StqolctPlan& plan, std::vector<InequalityResult>& out) {
  const bool stride_one = cfg.stride == 1;
  const bool any = cfg.wants("boundedness") ||
                   (stride_one && (cfg.wants("energy") || cfg.wants("donoho-stark") || cfg.wants("pitt") ||
                                   cfg.wants("log-up")));
  if (!any) return;
  const StqolctSummary s = stqolct_summarize(f, plan);
  if (cfg.wants("boundedness")) out.push_back(tagged(boundedness_check(f, plan, s), label));
  if (!stride_one) return;
  if (cfg.wants("energy")) out.push_back(tagged(energy_check(f, plan, s), label));
  if (cfg.wants("donoho-stark")) {
    for (double eps : cfg.eps) out.push_back(tagged(donoho_stark_check(f, plan, s, eps, eps), label));
  }
  if (cfg.wants("pitt")) {
    for (double alpha : cfg.pitt_alpha) out.push_back(tagged(pitt_check(f, plan, s, alpha), label));
  }
  if (cfg.wants("log-up")) {
    const LogUpResult lu = log_up_check(f, plan, s, cfg.log_up_h);
    out.push_back(tagged(lu.derivative, label));
    out.push_back(tagged(lu.literal, label));
  }
}

void run_moyal(const RunConfig& cfg, const ParamPair& pair, const Axis& x, std::vector<InequalityResult>& out) {
  const GridSignal2D f = make_signal(cfg.signals.front(), x);
  const GridSignal2D g = make_signal(cfg.signals.back(), x);
  const GridSignal2D phi = gen_gaussian(x, x, cfg.window_alpha);
  const GridSignal2D psi = gen_gaussian(x, x, cfg.window_alpha / 2);
  const QolctPlan q = QolctPlan::for_grid(pair.a1, pair.a2, x, x);
  const std::string labels = cfg.signals.front().label() + "," + cfg.signals.back().label();

  // phi = psi: Sc <S f, S g> = ||phi||^2 Sc <f, g>
  const MoyalResult a = moyal_check(f, g, phi, phi, q);
  InequalityResult ra = make_result("moyal-signals", pair_params(pair, x), a.lhs.q0, a.rhs.q0, Relation::equal,
                                    1e-3 * l2_norm_squared(phi) * l2_norm(f) * l2_norm(g), false);
  ra.note = "windows equal";
  out.push_back(tagged(ra, labels));

  // f = g: Sc <S_phi f, S_psi f> = Sc <phi, psi> ||f||^2
  const MoyalResult b = moyal_check(f, f, phi, psi, q);
  InequalityResult rb = make_result("moyal-windows", pair_params(pair, x), b.lhs.q0, b.rhs.q0, Relation::equal,
                                    1e-3 * l2_norm(phi) * l2_norm(psi) * l2_norm_squared(f), false);
  rb.note = "signals equal";
  out.push_back(tagged(rb, cfg.signals.front().label()));
}

void run_hardy_st(const ParamPair& pair, const GridSignal2D& f, const std::string& label,
                  const StqolctPlan& plan, std::vector<InequalityResult>& out) {
  const auto fit_at = [&](std::pair<std::size_t, std::size_t> j, const char* where) {
    InequalityResult r;
    const std::string u = "u=(" + fmt(plan.u1.coordinate(j.first)) + "," + fmt(plan.u2.coordinate(j.second)) + ")";
    try {
      const HardyFit fit = hardy_decay_fit(f, plan, j.first, j.second);
      r = make_result("hardy-st", pair_params(pair, plan.qolct.x1), fit.beta_hat, 0.0, Relation::greater_eq, 0.0,
                      false, false);
      r.note = std::string(where) + " " + u + " r2=" + fmt(fit.r2) + " cells=" + std::to_string(fit.cells);
    } catch (const FitError& e) {
      r = make_result("hardy-st", pair_params(pair, plan.qolct.x1), std::nan(""), 0.0, Relation::greater_eq, 0.0,
                      false, false);
      r.note = std::string(where) + " " + u + " " + e.what();
    }
    out.push_back(tagged(r, label));
  };
  fit_at(zero_position(plan), "zero");
  fit_at(overlap_maximizing_position(f, plan), "overlap");
}

void run_hardy_qft(const RunConfig& cfg, std::vector<InequalityResult>& out) {
  const Axis x = Axis::centered(cfg.hardy_n, cfg.hardy_extent);
  const QftPlan plan = QftPlan::for_grid(x, x);
  for (double alpha : cfg.hardy_alpha) {
    const Params params = {{"n", std::to_string(x.n)}, {"extent", fmt(cfg.hardy_extent)}, {"alpha", fmt(alpha)}};
    InequalityResult r;
    try {
      const HardyFit fit = hardy_decay_fit(qft_forward(gen_gaussian(x, x, alpha), plan));
      r = make_result("hardy", params, std::abs(4 * alpha * fit.beta_hat - 1), 0.02, Relation::less_eq, 0.0, false);
      r.pass = r.pass && fit.gaussian_decay;
      r.note = "beta=" + fmt(fit.beta_hat) + " r2=" + fmt(fit.r2);
    } catch (const FitError& e) {
      r = make_result("hardy", params, std::nan(""), 0.02, Relation::less_eq, 0.0, false);
      r.note = e.what();
    }
    out.push_back(r);
  }
}

void run_beurling(const RunConfig& cfg, const ParamPair& pair, std::vector<InequalityResult>& out) {
  const Axis x = Axis::centered(cfg.beurling_n, cfg.beurling_extent);
  const StqolctPlan plan =
      StqolctPlan::make(QolctPlan::for_grid(pair.a1, pair.a2, x, x), gen_gaussian(x, x, cfg.window_alpha), 1);
  const SignalSpec& spec = cfg.signals.front();
  const GridSignal2D f = make_signal(spec, x);
  for (double d : cfg.beurling_d) {
    const BeurlingResult b = beurling_integral(f, plan, d);
    Params params = pair_params(pair, x);
    params.emplace_back("d", fmt(d));
    InequalityResult r = make_result("beurling", params, b.log_value, std::numeric_limits<double>::infinity(),
                                     Relation::less_eq, 0.0, false, false);
    r.note = b.saturated ? "saturated" : "log of the integral";
    out.push_back(tagged(r, spec.label()));
  }
}

void run_transform_families(const RunConfig& cfg, const Axis& x, std::vector<InequalityResult>& out) {
  const QftPlan qft = QftPlan::for_grid(x, x);
  const Params grid = {{"n", std::to_string(x.n)}, {"extent", fmt(cfg.extent)}};
  for (const SignalSpec& spec : cfg.signals) {
    const GridSignal2D f = make_signal(spec, x);
    const GridSignal2D F = qft_forward(f, qft);
    if (cfg.wants("plancherel")) {
      const double ratio = l2_norm_squared(F) / (4 * std::numbers::pi * std::numbers::pi * l2_norm_squared(f));
      out.push_back(tagged(make_result("plancherel-qft", grid, ratio, 1.0, Relation::equal, 1e-6, false), spec.label()));
    }
    if (cfg.wants("roundtrip")) {
      out.push_back(tagged(make_result("roundtrip-qft", grid, relative_l2_error(qft_inverse(F, qft), f), 1e-6,
                                       Relation::less_eq, 0.0, false),
                           spec.label()));
    }
    for (const ParamPair& pair : cfg.params) {
      const QolctPlan q = QolctPlan::for_grid(pair.a1, pair.a2, x, x);
      const GridSignal2D G = qolct_forward(f, q);
      if (cfg.wants("plancherel")) {
        out.push_back(tagged(make_result("plancherel-qolct", pair_params(pair, x), l2_norm(G) / l2_norm(f), 1.0,
                                         Relation::equal, 1e-4, false),
                             spec.label()));
      }
      if (cfg.wants("roundtrip")) {
        out.push_back(tagged(make_result("roundtrip-qolct", pair_params(pair, x),
                                         relative_l2_error(qolct_inverse(G, q), f), 1e-6, Relation::less_eq, 0.0,
                                         false),
                             spec.label()));
      }
    }
  }
}

}  // namespace

std::string SignalSpec::label() const {
  if (kind == "gaussian") return "gaussian(" + fmt(alpha) + ")";
  return kind + "(" + fmt(alpha) + ";" + fmt(rate1) + "," + fmt(rate2) + "," + fmt(freq1) + "," + fmt(freq2) + ")";
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  const OlctParams unit(1, 1, 0, 1, 0, 0);
  const OlctParams offset(0.6, 0.5, -0.8, 1.0, 0.3, -0.2);
  const OlctParams negative(-0.8, -0.6, 0.6, -0.8, 0.1, 0.4);
  c.params = {{unit, unit}, {offset, offset}, {negative, offset}};
  for (double a : {0.5, 1.0, 2.0}) c.signals.push_back(SignalSpec{"gaussian", a});
  c.signals.push_back(SignalSpec{"chirp-gaussian", 0.5, 0.2, -0.1, 0.5, 0.0});
  return c;
}

bool RunConfig::wants(const std::string& family) const {
  return only.empty() || std::find(only.begin(), only.end(), family) != only.end();
}

RunConfig parse_config(const json& doc, RunConfig c) {
  check_keys(doc,
             {"n", "extent", "u_stride", "params", "signals", "window", "eps", "pitt_alpha", "log_up_h", "hardy",
              "beurling", "only"},
             "config");
  if (doc.contains("n")) c.n = read_count(doc["n"], "n");
  if (doc.contains("extent")) c.extent = read_double(doc["extent"], "extent");
  if (doc.contains("u_stride")) c.stride = read_count(doc["u_stride"], "u_stride");
  if (doc.contains("params")) {
    if (!doc["params"].is_array()) bad("'params' must be an array");
    c.params.clear();
    for (const auto& p : doc["params"]) {
      check_keys(p, {"A1", "A2"}, "params entry");
      if (!p.contains("A1")) bad("params entry needs A1");
      const OlctParams a1 = read_params(p["A1"]);
      c.params.push_back({a1, p.contains("A2") ? read_params(p["A2"]) : a1});
    }
  }
  if (doc.contains("signals")) {
    if (!doc["signals"].is_array()) bad("'signals' must be an array");
    c.signals.clear();
    for (const auto& s : doc["signals"]) c.signals.push_back(read_signal(s));
  }
  if (doc.contains("window")) {
    check_keys(doc["window"], {"alpha"}, "window");
    if (doc["window"].contains("alpha")) c.window_alpha = read_double(doc["window"]["alpha"], "window.alpha");
  }
  if (doc.contains("eps")) c.eps = read_doubles(doc["eps"], "eps");
  if (doc.contains("pitt_alpha")) c.pitt_alpha = read_doubles(doc["pitt_alpha"], "pitt_alpha");
  if (doc.contains("log_up_h")) c.log_up_h = read_double(doc["log_up_h"], "log_up_h");
  if (doc.contains("hardy")) {
    const json& h = doc["hardy"];
    check_keys(h, {"alpha", "n", "extent"}, "hardy");
    if (h.contains("alpha")) c.hardy_alpha = read_doubles(h["alpha"], "hardy.alpha");
    if (h.contains("n")) c.hardy_n = read_count(h["n"], "hardy.n");
    if (h.contains("extent")) c.hardy_extent = read_double(h["extent"], "hardy.extent");
  }
  if (doc.contains("beurling")) {
    const json& b = doc["beurling"];
    check_keys(b, {"n", "extent", "d"}, "beurling");
    if (b.contains("n")) c.beurling_n = read_count(b["n"], "beurling.n");
    if (b.contains("extent")) c.beurling_extent = read_double(b["extent"], "beurling.extent");
    if (b.contains("d")) c.beurling_d = read_doubles(b["d"], "beurling.d");
  }
  if (doc.contains("only")) {
    if (!doc["only"].is_array()) bad("'only' must be an array of family names");
    c.only.clear();
    for (const auto& o : doc["only"]) {
      if (!o.is_string()) bad("'only' must be an array of family names");
      c.only.push_back(o.get<std::string>());
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.n < 4) bad("n must be at least 4");
  positive(c.extent, "extent");
  if (c.stride < 1) bad("u_stride must be at least 1");
  if ((c.n - 1) / c.stride + 1 < 2) bad("u_stride leaves fewer than two window positions");
  if (c.params.empty()) bad("at least one parameter set is needed");
  if (c.signals.empty()) bad("at least one signal is needed");
  for (const SignalSpec& s : c.signals) {
    if (s.kind != "gaussian" && s.kind != "chirp-gaussian") bad("unknown signal kind '" + s.kind + "'");
    positive(s.alpha, "signal alpha");
    for (double v : {s.rate1, s.rate2, s.freq1, s.freq2}) {
      if (!std::isfinite(v)) bad("chirp rates and frequencies must be finite");
    }
  }
  positive(c.window_alpha, "window alpha");
  for (double e : c.eps) {
    if (!(e >= 0 && e < 0.5)) bad("eps values must lie in [0, 0.5)");
  }
  for (double a : c.pitt_alpha) {
    if (!(a >= 0 && a < 2)) bad("pitt_alpha values must lie in [0, 2)");
  }
  positive(c.log_up_h, "log_up_h");
  for (double a : c.hardy_alpha) positive(a, "hardy alpha");
  if (c.hardy_n < 8) bad("hardy.n must be at least 8");
  positive(c.hardy_extent, "hardy.extent");
  if (c.beurling_n < 4) bad("beurling.n must be at least 4");
  positive(c.beurling_extent, "beurling.extent");
  for (double d : c.beurling_d) {
    if (!(d >= 0 && std::isfinite(d))) bad("beurling.d values must be nonnegative");
  }
  for (const std::string& o : c.only) {
    if (std::find(kFamilies.begin(), kFamilies.end(), o) == kFamilies.end()) bad("unknown family '" + o + "'");
  }
}

std::vector<InequalityResult> run_verify(const RunConfig& cfg, std::ostream* progress) {
  validate(cfg);
  std::vector<InequalityResult> out;
  const Axis x = Axis::centered(cfg.n, cfg.extent);
  const GridSignal2D window = gen_gaussian(x, x, cfg.window_alpha);
  const auto note = [&](const std::string& line) {
    if (progress) *progress << line << '\n' << std::flush;
  };
  if (cfg.stride != 1) {
    note("u_stride " + std::to_string(cfg.stride) +
         ": energy, donoho-stark, pitt, log-up, moyal, reconstruction and hardy-st need stride 1, skipped");
  }

  if (cfg.wants("plancherel") || cfg.wants("roundtrip")) {
    run_transform_families(cfg, x, out);
    note("plancherel/roundtrip done");
  }
  if (cfg.wants("hardy")) {
    run_hardy_qft(cfg, out);
    note("hardy done");
  }

  for (const ParamPair& pair : cfg.params) {
    const std::string tag = pair.a1.to_string() + " | " + pair.a2.to_string();
    const StqolctPlan plan = StqolctPlan::make(QolctPlan::for_grid(pair.a1, pair.a2, x, x), window, cfg.stride);
    for (const SignalSpec& spec : cfg.signals) {
      const GridSignal2D f = make_signal(spec, x);
      run_summary_families(cfg, f, spec.label(), plan, out);
      if (cfg.stride == 1 && cfg.wants("reconstruction")) {
        const double err = relative_l2_error(stqolct_roundtrip(f, plan), f);
        out.push_back(tagged(make_result("reconstruction", pair_params(pair, x), err, 1e-3, Relation::less_eq, 0.0,
                                         false),
                             spec.label()));
      }
      if (cfg.stride == 1 && cfg.wants("hardy") && spec.kind == "gaussian") {
        run_hardy_st(pair, f, spec.label(), plan, out);
      }
      note(tag + " " + spec.label() + " done");
    }
    if (cfg.stride == 1 && cfg.wants("moyal")) {
      run_moyal(cfg, pair, x, out);
      note(tag + " moyal done");
    }
    if (cfg.wants("beurling")) {
      run_beurling(cfg, pair, out);
      note(tag + " beurling done");
    }
  }
  return out;
}

}  // namespace qtf::cli
