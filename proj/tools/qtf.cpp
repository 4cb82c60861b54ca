#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "qtf/errors.hpp"
#include "qtf/field_io.hpp"
#include "qtf/qft.hpp"
#include "qtf/qolct.hpp"
#include "qtf/report.hpp"
#include "qtf/signal_io.hpp"
#include "qtf/stqolct.hpp"
#include "verify.hpp"

namespace {

using namespace qtf;

constexpr int kOk = 0;
constexpr int kGatedFailure = 1;
constexpr int kInputError = 2;
constexpr int kShapeError = 3;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void require_signal_path(const std::string& path, const char* what) {
  if (!ends_with(path, ".qs2d") && !ends_with(path, ".csv")) {
    throw ParameterError(std::string(what) + " must end in .qs2d or .csv: " + path);
  }
}

Quaternion parse_quaternion(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("bad quaternion '" + text + "'");
    }
  }
  if (v.size() == 1) return v[0];
  if (v.size() != 4) throw ParameterError("a quaternion needs 1 or 4 comma-separated values: '" + text + "'");
  return {v[0], v[1], v[2], v[3]};
}

// Spatial axis whose forward transform lands on `w`.
Axis spatial_axis_for(const Axis& w, double abs_b) {
  const double step = 2 * std::numbers::pi * abs_b / (static_cast<double>(w.n) * w.step);
  return Axis::centered(w.n, static_cast<double>(w.n) * step / 2);
}

void require_axis(const Axis& got, const Axis& want, const char* what) {
  if (!same_grid(got, want)) throw ShapeError(std::string(what) + " is not a centered reciprocal grid");
}

struct GenOptions {
  std::string kind;
  double alpha = 1.0;
  std::string amp = "1";
  double rate1 = 0, rate2 = 0, freq1 = 0, freq2 = 0;
  std::vector<std::size_t> at;
  std::string a, b;
  std::size_t n = 64;
  double extent = 8.0;
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  require_signal_path(o.out, "output");
  GridSignal2D f;
  if (o.kind == "product") {
    if (o.a.empty() || o.b.empty()) throw ParameterError("product needs --a and --b");
    f = pointwise_product(load_signal(o.a), load_signal(o.b));
  } else {
    if (o.n < 2) throw ParameterError("--n must be at least 2");
    if (!(o.extent > 0 && std::isfinite(o.extent))) throw ParameterError("--extent must be positive");
    const Axis x = Axis::centered(o.n, o.extent);
    if (o.kind == "gaussian") {
      f = gen_gaussian(x, x, o.alpha, parse_quaternion(o.amp));
    } else if (o.kind == "chirp") {
      f = gen_chirp(x, x, o.rate1, o.rate2, o.freq1, o.freq2);
    } else if (o.kind == "impulse") {
      if (!o.at.empty() && o.at.size() != 2) throw ParameterError("--at takes k1,k2");
      f = o.at.empty() ? gen_impulse(x, x, o.n / 2, o.n / 2) : gen_impulse(x, x, o.at[0], o.at[1]);
    } else {
      throw ParameterError("unknown kind '" + o.kind + "'");
    }
  }
  save_signal(f, o.out);
  std::cerr << "wrote " << f.n1() << "x" << f.n2() << " signal to " << o.out << '\n';
  return kOk;
}

struct TransformOptions {
  std::string transform;
  std::string a1 = "1,1,0,1,0,0";
  std::string a2;
  std::string in, out, window;
  std::size_t stride = 1;
  std::string route = "via_qolct";
  std::string mode = "fast";
  bool inverse = false;
};

SumMode parse_mode(const std::string& m) {
  if (m == "fast") return SumMode::fast;
  if (m == "direct") return SumMode::direct;
  throw ParameterError("--mode must be fast or direct");
}

StRoute parse_route(const std::string& r) {
  if (r == "direct") return StRoute::direct;
  if (r == "via_qolct") return StRoute::via_qolct;
  if (r == "via_qft") return StRoute::via_qft;
  throw ParameterError("--route must be direct, via_qolct or via_qft");
}

int cmd_transform(const TransformOptions& o) {
  const SumMode mode = parse_mode(o.mode);
  const StRoute route = parse_route(o.route);
  const OlctParams p1 = OlctParams::parse(o.a1);
  const OlctParams p2 = o.a2.empty() ? p1 : OlctParams::parse(o.a2);

  if (o.transform == "stqolct") {
    if (o.window.empty()) throw ParameterError("stqolct needs --window");
    if (o.inverse) throw ParameterError("stqolct has no --inverse; use the library reconstruction");
    if (!ends_with(o.out, ".qtf4")) throw ParameterError("stqolct output must end in .qtf4");
    const GridSignal2D f = load_signal(o.in);
    const GridSignal2D phi = load_signal(o.window);
    const StqolctPlan plan = StqolctPlan::make(QolctPlan::for_grid(p1, p2, f.axis1(), f.axis2()), phi, o.stride);
    const StqolctField field = stqolct_forward(f, plan, route);
    save_field(field, o.out);
    std::cerr << "wrote " << field.samples().size() << " coefficients to " << o.out << " (energy "
              << stqolct_energy(field) << ")\n";
    return kOk;
  }

  require_signal_path(o.out, "output");
  const GridSignal2D f = load_signal(o.in);
  GridSignal2D out;
  if (o.transform == "qft") {
    if (!o.inverse) {
      out = qft_forward(f, QftPlan::for_grid(f.axis1(), f.axis2(), mode));
    } else {
      const QftPlan plan = QftPlan::for_grid(spatial_axis_for(f.axis1(), 1.0), spatial_axis_for(f.axis2(), 1.0), mode);
      require_axis(f.axis1(), plan.w1, "input axis 1");
      require_axis(f.axis2(), plan.w2, "input axis 2");
      out = qft_inverse(f, plan);
    }
  } else if (o.transform == "qolct") {
    if (!o.inverse) {
      out = qolct_forward(f, QolctPlan::for_grid(p1, p2, f.axis1(), f.axis2()), mode);
    } else {
      const QolctPlan plan = QolctPlan::for_grid(p1, p2, spatial_axis_for(f.axis1(), std::abs(p1.b())),
                                                 spatial_axis_for(f.axis2(), std::abs(p2.b())));
      require_axis(f.axis1(), plan.w1, "input axis 1");
      require_axis(f.axis2(), plan.w2, "input axis 2");
      out = qolct_inverse(f, plan, mode);
    }
  } else {
    throw ParameterError("unknown transform '" + o.transform + "'");
  }
  save_signal(out, o.out);
  std::cerr << "wrote " << out.n1() << "x" << out.n2() << " " << o.transform << (o.inverse ? " inverse" : "")
            << " to " << o.out << '\n';
  return kOk;
}

struct VerifyOptions {
  std::string config;
  std::string out = "report.jsonl";
  std::vector<std::string> only;
  std::optional<std::size_t> n;
  std::optional<double> extent;
  std::optional<std::size_t> stride;
  bool quiet = false;
};

int cmd_verify(const VerifyOptions& o) {
  cli::RunConfig cfg = cli::RunConfig::defaults();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw IoError("cannot open config " + o.config);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("config: ") + e.what());
    }
    cfg = cli::parse_config(doc, cfg);
  }
  if (o.n) cfg.n = *o.n;
  if (o.extent) cfg.extent = *o.extent;
  if (o.stride) cfg.stride = *o.stride;
  if (!o.only.empty()) cfg.only = o.only;
  cli::validate(cfg);

  const std::vector<InequalityResult> results = cli::run_verify(cfg, o.quiet ? nullptr : &std::cerr);
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw IoError("cannot write " + o.out);
  out << to_jsonl(results);
  if (!out) throw IoError("write failed: " + o.out);
  print_table(std::cout, results);
  std::cout << "report: " << o.out << '\n';
  for (const auto& r : results) {
    if (r.gated && !r.pass) return kGatedFailure;
  }
  return kOk;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  print_table(std::cout, parse_jsonl(ss.str()));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion time-frequency transforms and uncertainty checks"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a test signal");
  g->add_option("--kind", gen.kind, "gaussian, chirp, impulse or product")->required();
  g->add_option("--alpha", gen.alpha, "Gaussian decay rate");
  g->add_option("--amp", gen.amp, "Gaussian amplitude: q0 or q0,q1,q2,q3");
  g->add_option("--rate1", gen.rate1);
  g->add_option("--rate2", gen.rate2);
  g->add_option("--freq1", gen.freq1);
  g->add_option("--freq2", gen.freq2);
  g->add_option("--at", gen.at, "Impulse cell k1,k2")->delimiter(',');
  g->add_option("--a", gen.a, "First factor of a product");
  g->add_option("--b", gen.b, "Second factor of a product");
  g->add_option("--n", gen.n, "Samples per axis");
  g->add_option("--extent", gen.extent, "Grid covers [-extent, extent)");
  g->add_option("-o,--out", gen.out, "Output .qs2d or .csv")->required();

  TransformOptions tr;
  auto* t = app.add_subcommand("transform", "Apply qft, qolct or stqolct to a signal file");
  t->add_option("transform", tr.transform, "qft, qolct or stqolct")->required();
  t->add_option("--A1", tr.a1, "Axis-1 parameters a,b,c,d,p,q");
  t->add_option("--A2", tr.a2, "Axis-2 parameters (default: same as --A1)");
  t->add_option("-i,--in", tr.in, "Input signal")->required();
  t->add_option("-o,--out", tr.out, "Output file")->required();
  t->add_option("--window", tr.window, "Window signal (stqolct)");
  t->add_option("--u-stride", tr.stride, "Window position stride in samples");
  t->add_option("--route", tr.route, "stqolct route: direct, via_qolct, via_qft");
  t->add_option("--mode", tr.mode, "qft/qolct summation: fast or direct");
  t->add_flag("--inverse", tr.inverse, "Inverse qft/qolct");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Run the verification corpus");
  v->add_option("--config", ver.config, "JSON config");
  v->add_option("-o,--out", ver.out, "JSONL report path");
  v->add_option("--only", ver.only, "Restrict to these families")->delimiter(',');
  v->add_option("--n", ver.n, "Samples per axis");
  v->add_option("--extent", ver.extent, "Grid half-width");
  v->add_option("--u-stride", ver.stride, "Window position stride");
  v->add_flag("-q,--quiet", ver.quiet, "No progress lines");

  std::string report_path;
  auto* r = app.add_subcommand("report", "Pretty-print a JSONL report");
  r->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*t) return cmd_transform(tr);
    if (*v) return cmd_verify(ver);
    if (*r) return cmd_report(report_path);
  } catch (const ShapeError& e) {
    std::cerr << "shape error: " << e.what() << '\n';
    return kShapeError;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
