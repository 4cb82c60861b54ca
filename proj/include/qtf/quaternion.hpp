#pragma once

/**
 * @file quaternion.hpp
 * @brief Hamilton quaternions q0 + i q1 + j q2 + k q3 over double.
 *
 * Multiplication is non-commutative:
 *   i^2 = j^2 = k^2 = -1,  ij = -ji = k,  jk = -kj = i,  ki = -ik = j.
 *
 * The Cayley-Dickson form q = za + zb j (za, zb complex in i) is what the
 * fast transform paths work in: left multiplication by an i-complex number
 * acts on both components, right multiplication mixes them via conjugation.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

namespace qtf {

using Complex = std::complex<double>;

struct Quaternion {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double r) : q0{r} {}  // NOLINT: real scalars embed implicitly
  constexpr Quaternion(double a, double b, double c, double d) : q0{a}, q1{b}, q2{c}, q3{d} {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr double scalar() const { return q0; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    q0 += o.q0;
    q1 += o.q1;
    q2 += o.q2;
    q3 += o.q3;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    q0 -= o.q0;
    q1 -= o.q1;
    q2 -= o.q2;
    q3 -= o.q3;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    q0 *= s;
    q1 *= s;
    q2 *= s;
    q3 *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
          p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
          p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
          p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

constexpr double norm_squared(const Quaternion& q) {
  return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.q0) && std::isfinite(q.q1) && std::isfinite(q.q2) && std::isfinite(q.q3);
}

inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::max({std::abs(a.q0 - b.q0), std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2),
                   std::abs(a.q3 - b.q3)});
}

enum class ImagAxis { i, j };

/// cos(theta) + axis * sin(theta).
inline Quaternion unit_exp(ImagAxis axis, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return axis == ImagAxis::i ? Quaternion{c, s, 0, 0} : Quaternion{c, 0, s, 0};
}

/// q = za + zb j with za = q0 + i q1, zb = q2 + i q3.
struct CayleyPair {
  Complex za;
  Complex zb;

  bool operator==(const CayleyPair&) const = default;
};

constexpr CayleyPair cayley_split(const Quaternion& q) { return {{q.q0, q.q1}, {q.q2, q.q3}}; }

constexpr Quaternion cayley_join(const CayleyPair& p) {
  return {p.za.real(), p.za.imag(), p.zb.real(), p.zb.imag()};
}

/// (za + zb j)(wa + wb j) = (za wa - zb conj(wb)) + (za wb + zb conj(wa)) j
inline CayleyPair operator*(const CayleyPair& p, const CayleyPair& q) {
  return {p.za * q.za - p.zb * std::conj(q.zb), p.za * q.zb + p.zb * std::conj(q.za)};
}

/// Left multiplication by an i-complex scalar acts componentwise.
inline Quaternion left_mul(const Complex& z, const Quaternion& q) {
  const double x = z.real(), y = z.imag();
  return {x * q.q0 - y * q.q1, x * q.q1 + y * q.q0, x * q.q2 - y * q.q3, x * q.q3 + y * q.q2};
}

/// Right multiplication by a j-complex number x + j y (stored as a Complex).
inline Quaternion right_mul_j(const Quaternion& q, const Complex& zj) {
  const double x = zj.real(), y = zj.imag();
  return {x * q.q0 - y * q.q2, x * q.q1 - y * q.q3, x * q.q2 + y * q.q0, x * q.q3 + y * q.q1};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ')';
}

}  // namespace qtf
