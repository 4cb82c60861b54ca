#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qtf/field_io.hpp"
#include "qtf/qft.hpp"
#include "qtf/report.hpp"
#include "qtf/signal_io.hpp"

using namespace qtf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("qtf_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(QTF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen writes the requested signals") {
  TempDir dir;
  REQUIRE(run("gen --kind gaussian --alpha 1 --n 64 --extent 8 -o " + (dir / "f.qs2d")) == 0);
  const GridSignal2D f = load_signal(dir / "f.qs2d");
  CHECK(f.n1() == 64);
  CHECK(f.axis1() == Axis::centered(64, 8.0));
  CHECK(max_abs_diff(f, gen_gaussian(f.axis1(), f.axis2(), 1.0)) == 0.0);

  REQUIRE(run("gen --kind impulse --at 3,5 --n 8 --extent 2 -o " + (dir / "d.csv")) == 0);
  const GridSignal2D d = load_signal(dir / "d.csv");
  std::size_t nonzero = 0;
  for (const auto& q : d.samples()) nonzero += norm(q) > 0;
  CHECK(nonzero == 1);
  CHECK(norm(d(3, 5)) > 0);

  REQUIRE(run("gen --kind chirp --rate1 0.3 --freq2 1 --n 16 --extent 4 -o " + (dir / "c.qs2d")) == 0);
  REQUIRE(run("gen --kind gaussian --alpha 0.5 --amp 0,1,1,0 --n 16 --extent 4 -o " + (dir / "g.qs2d")) == 0);
  REQUIRE(run("gen --kind product --a " + (dir / "c.qs2d") + " --b " + (dir / "g.qs2d") + " -o " + (dir / "p.qs2d")) ==
          0);
  const GridSignal2D c = load_signal(dir / "c.qs2d"), g = load_signal(dir / "g.qs2d"), p = load_signal(dir / "p.qs2d");
  for (std::size_t k1 = 0; k1 < 16; ++k1) {
    for (std::size_t k2 = 0; k2 < 16; ++k2) CHECK(max_abs_diff(p(k1, k2), oracle::mul(c(k1, k2), g(k1, k2))) < 1e-15);
  }

  CHECK(run("gen --kind bogus -o " + (dir / "x.qs2d")) == 2);
  CHECK(run("gen --kind gaussian --alpha 0 -o " + (dir / "x.qs2d")) == 2);
  CHECK(run("gen --kind gaussian -o " + (dir / "x.txt")) == 2);
  CHECK(run("gen --kind impulse --at 99,0 --n 8 -o " + (dir / "x.qs2d")) == 2);
  CHECK(run("gen --kind product --a " + (dir / "f.qs2d") + " --b " + (dir / "g.qs2d") + " -o " + (dir / "x.qs2d")) ==
        3);
}

TEST_CASE("transform qolct with the Fourier matrix") {
  TempDir dir;
  const Axis x = Axis::centered(16, 4.0);
  const GridSignal2D f = oracle::random_signal(x, x, 21);
  save_signal(f, dir / "f.qs2d");
  REQUIRE(run("transform qolct --A1 0,1,-1,0,0,0 --A2 0,1,-1,0,0,0 -i " + (dir / "f.qs2d") + " -o " +
              (dir / "F.qs2d")) == 0);
  const GridSignal2D F = load_signal(dir / "F.qs2d");
  // kernel (2 pi)^-1/2 e^{-i pi/4} e^{-i x w} on each side
  const auto ref = oracle::qft(f, F.axis1(), F.axis2());
  const Quaternion l = oracle::expi(-std::numbers::pi / 4), r = oracle::expj(-std::numbers::pi / 4);
  double worst = 0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const Quaternion want = oracle::mul(oracle::mul(l, ref[i]), r) * (1 / (2 * std::numbers::pi));
    worst = std::max(worst, max_abs_diff(F.samples()[i], want));
  }
  CHECK(worst < 1e-12);

  REQUIRE(run("transform qolct --inverse --A1 0,1,-1,0,0,0 -i " + (dir / "F.qs2d") + " -o " + (dir / "b.qs2d")) == 0);
  CHECK(relative_l2_error(load_signal(dir / "b.qs2d"), f) < 1e-12);
  REQUIRE(run("transform qft --mode direct -i " + (dir / "f.qs2d") + " -o " + (dir / "Q.csv")) == 0);
  REQUIRE(run("transform qft --inverse -i " + (dir / "Q.csv") + " -o " + (dir / "q.qs2d")) == 0);
  CHECK(relative_l2_error(load_signal(dir / "q.qs2d"), f) < 1e-12);

  CHECK(run("transform qolct --A1 1,1,1,1,0,0 -i " + (dir / "f.qs2d") + " -o " + (dir / "x.qs2d")) == 2);
  CHECK(run("transform qolct --mode sideways -i " + (dir / "f.qs2d") + " -o " + (dir / "x.qs2d")) == 2);
  CHECK(run("transform fourier -i " + (dir / "f.qs2d") + " -o " + (dir / "x.qs2d")) == 2);
  // an uncentered grid is not the output of any forward transform
  const Axis shifted(16, 0.0, 0.5);
  save_signal(GridSignal2D(shifted, shifted, oracle::samples(f)), dir / "u.qs2d");
  CHECK(run("transform qft --inverse -i " + (dir / "u.qs2d") + " -o " + (dir / "x.qs2d")) == 3);
}

TEST_CASE("transform stqolct") {
  TempDir dir;
  const Axis x = Axis::centered(32, 4.0);
  const GridSignal2D f = gen_gaussian(x, x, 1.0), phi = gen_gaussian(x, x, 2.0);
  save_signal(f, dir / "f.qs2d");
  save_signal(phi, dir / "w.qs2d");
  const std::string base = "transform stqolct --A1 0.6,0.5,-0.8,1,0.3,-0.2 --A2 -0.8,-0.6,0.6,-0.8,0.1,0.4 -i " +
                           (dir / "f.qs2d") + " --window " + (dir / "w.qs2d");
  REQUIRE(run(base + " --u-stride 1 -o " + (dir / "s.qtf4")) == 0);
  const StqolctField S = load_field(dir / "s.qtf4");
  CHECK(S.stride() == 1);
  CHECK(std::abs(stqolct_energy(S) / (l2_norm_squared(f) * l2_norm_squared(phi)) - 1) < 1e-3);

  REQUIRE(run(base + " --u-stride 3 --route via_qft -o " + (dir / "t.qtf4")) == 0);
  const StqolctField T = load_field(dir / "t.qtf4");
  CHECK(T.stride() == 3);
  CHECK(T.u1().n == 11);

  CHECK(run("transform stqolct -i " + (dir / "f.qs2d") + " -o " + (dir / "x.qtf4")) == 2);
  CHECK(run(base + " --route sideways -o " + (dir / "x.qtf4")) == 2);
  CHECK(run(base + " -o " + (dir / "x.qs2d")) == 2);
  CHECK(run(base + " --u-stride 0 -o " + (dir / "x.qtf4")) == 2);
}

TEST_CASE("verify and report") {
  TempDir dir;
  {
    std::ofstream(dir / "bad.json") << R"({"params": [{"A1": "1,1,1,1,0,0"}]})";
    std::ofstream(dir / "typo.json") << R"({"nn": 3})";
    std::ofstream(dir / "broken.json") << R"({"n": )";
    std::ofstream(dir / "eps.json") << R"({"eps": [0.7]})";
  }
  CHECK(run("verify --config " + (dir / "bad.json") + " -o " + (dir / "r.jsonl")) == 2);
  CHECK_FALSE(fs::exists(dir / "r.jsonl"));
  CHECK(run("verify --config " + (dir / "typo.json") + " -o " + (dir / "r.jsonl")) == 2);
  CHECK(run("verify --config " + (dir / "broken.json") + " -o " + (dir / "r.jsonl")) == 2);
  CHECK(run("verify --config " + (dir / "eps.json") + " -o " + (dir / "r.jsonl")) == 2);
  CHECK(run("verify --config " + (dir / "missing.json") + " -o " + (dir / "r.jsonl")) == 2);
  CHECK(run("verify --only sorcery -o " + (dir / "r.jsonl")) == 2);

  REQUIRE(run("verify --only donoho-stark --n 16 --extent 4 -o " + (dir / "ds.jsonl")) == 0);
  const auto ds = parse_jsonl(slurp(dir / "ds.jsonl"));
  CHECK(ds.size() == 3 * 4 * 3);
  for (const auto& r : ds) CHECK(r.name == "donoho-stark");

  {
    std::ofstream(dir / "small.json") << R"({"n": 16, "extent": 4, "u_stride": 2,
      "params": [{"A1": [0.6, 0.5, -0.8, 1.0, 0.3, -0.2]}],
      "signals": [{"kind": "gaussian", "alpha": 1}], "only": ["boundedness", "plancherel"]})";
  }
  REQUIRE(run("verify --config " + (dir / "small.json") + " -o " + (dir / "s.jsonl")) == 0);
  const auto small = parse_jsonl(slurp(dir / "s.jsonl"));
  std::set<std::string> names;
  for (const auto& r : small) names.insert(r.name);
  CHECK(names == std::set<std::string>{"boundedness", "plancherel-qft", "plancherel-qolct"});

  CHECK(run("report " + (dir / "s.jsonl")) == 0);
  CHECK(run("report " + (dir / "missing.jsonl")) == 2);
  {
    std::ofstream(dir / "junk.jsonl") << "{\"name\": 1}\n";
  }
  CHECK(run("report " + (dir / "junk.jsonl")) == 2);
}

TEST_CASE("default verify corpus") {
  TempDir dir;
  REQUIRE(run("verify -q -o " + (dir / "report.jsonl")) == 0);
  const auto records = parse_jsonl(slurp(dir / "report.jsonl"));
  CHECK(records.size() >= 20);
  std::set<std::string> names;
  for (const auto& r : records) {
    names.insert(r.name);
    if (r.gated) CHECK(r.pass);
  }
  for (const char* family : {"energy", "boundedness", "donoho-stark", "pitt", "log-up", "log-up-literal",
                             "moyal-signals", "moyal-windows", "reconstruction", "hardy", "hardy-st", "beurling",
                             "plancherel-qft", "plancherel-qolct", "roundtrip-qft", "roundtrip-qolct"}) {
    CHECK(names.count(family) == 1);
  }
}
