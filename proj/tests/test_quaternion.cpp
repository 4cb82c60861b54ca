#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtf/quaternion.hpp"

using qtf::Quaternion;

namespace {

bool close(const Quaternion& a, const Quaternion& b, double tol) { return qtf::max_abs_diff(a, b) <= tol; }

}  // namespace

TEST_CASE("basis products follow Hamilton's table") {
  const Quaternion one = 1.0, i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(j * i == -k);
  CHECK(k * j == -i);
  CHECK(i * k == -j);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);

  const Quaternion basis[4] = {one, i, j, k};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) CHECK(basis[a] * basis[b] == oracle::mul(basis[a], basis[b]));
  }
}

TEST_CASE("worked products") {
  CHECK((Quaternion{1, 1, 0, 0} * Quaternion{1, 0, 1, 0}) == Quaternion{1, 1, 1, 1});
  const Quaternion q{0.3, -1.2, 2.5, 0.7};
  CHECK(q * Quaternion(1.0) == q);
  CHECK(Quaternion(1.0) * q == q);
}

TEST_CASE("conjugate and norm") {
  CHECK(qtf::conj(Quaternion{1, 1, 1, 1}) == Quaternion{1, -1, -1, -1});
  CHECK(qtf::conj(Quaternion(2.5)) == Quaternion(2.5));
  CHECK(qtf::norm(Quaternion{0, 1, 1, 1}) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(qtf::norm(Quaternion{}) == 0.0);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const Quaternion p = oracle::random_quaternion(rng), q = oracle::random_quaternion(rng);
    CHECK(qtf::conj(qtf::conj(p)) == p);
    CHECK(close(p * q, oracle::mul(p, q), 1e-15));
    CHECK(std::abs(qtf::norm(p * q) - qtf::norm(p) * qtf::norm(q)) <= 1e-12 * qtf::norm(p) * qtf::norm(q));
    CHECK(close(qtf::conj(p * q), qtf::conj(q) * qtf::conj(p), 1e-13));
    CHECK(qtf::norm_squared(p) == doctest::Approx((p * qtf::conj(p)).q0).epsilon(1e-14));
  }
}

TEST_CASE("unit exponentials") {
  CHECK(qtf::unit_exp(qtf::ImagAxis::i, 0.0) == Quaternion(1.0));
  CHECK(close(qtf::unit_exp(qtf::ImagAxis::i, std::numbers::pi / 2), Quaternion::i(), 1e-16));
  const double h = std::sqrt(0.5);
  CHECK(close(qtf::unit_exp(qtf::ImagAxis::j, std::numbers::pi / 4), Quaternion{h, 0, h, 0}, 1e-15));
  CHECK(qtf::norm(qtf::unit_exp(qtf::ImagAxis::j, 1.234)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Cayley-Dickson split") {
  const auto c = qtf::cayley_split(Quaternion{1, 2, 3, 4});
  CHECK(c.za == qtf::Complex(1, 2));
  CHECK(c.zb == qtf::Complex(3, 4));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Quaternion p = oracle::random_quaternion(rng), q = oracle::random_quaternion(rng);
    CHECK(qtf::cayley_join(qtf::cayley_split(p)) == p);
    const Quaternion via_pair = qtf::cayley_join(qtf::cayley_split(p) * qtf::cayley_split(q));
    CHECK(close(via_pair, oracle::mul(p, q), 1e-14));
    const qtf::Complex z{p.q0, p.q1};
    CHECK(close(qtf::left_mul(z, q), oracle::mul(Quaternion{z.real(), z.imag(), 0, 0}, q), 1e-14));
    CHECK(close(qtf::right_mul_j(q, z), oracle::mul(q, Quaternion{z.real(), 0, z.imag(), 0}), 1e-14));
  }
  // za j = j conj(za)
  const qtf::Complex za{0.4, -1.1};
  const Quaternion zq{za.real(), za.imag(), 0, 0};
  CHECK(close(zq * Quaternion::j(), Quaternion::j() * qtf::conj(zq), 1e-16));
}

TEST_CASE("scalar part is cyclic") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const Quaternion p = oracle::random_quaternion(rng), q = oracle::random_quaternion(rng),
                     l = oracle::random_quaternion(rng);
    const double a = (p * q * l).q0, b = (q * l * p).q0, c = (l * p * q).q0;
    CHECK(std::abs(a - b) < 1e-12);
    CHECK(std::abs(a - c) < 1e-12);
  }
}
