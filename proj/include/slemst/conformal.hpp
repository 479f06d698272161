#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace slemst::conformal {

using cplx = std::complex<double>;

inline constexpr double kSeriesTolerance = 1e-14;

// Nome-series theta functions for a real nome 0 < q < 1.
class Theta {
 public:
  explicit Theta(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("Theta: nome must lie in (0,1)");
  }

  double q() const { return q_; }

  // theta_1(z) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) z)
  cplx theta1(cplx z) const {
    cplx sum = 0.0;
    for (int n = 0;; ++n) {
      const double h = n + 0.5;
      const cplx term = (n % 2 ? -1.0 : 1.0) * std::pow(q_, h * h) * std::sin((2.0 * n + 1.0) * z);
      sum += term;
      if (n > 2 && std::abs(term) <= kSeriesTolerance * std::abs(sum)) break;
      if (n > 10000) break;
    }
    return 2.0 * sum;
  }

  // theta_4(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n z)
  cplx theta4(cplx z) const {
    cplx sum = 1.0;
    cplx tail = 0.0;
    for (int n = 1;; ++n) {
      const cplx term = (n % 2 ? -2.0 : 2.0) * std::pow(q_, double(n) * n) * std::cos(2.0 * n * z);
      tail += term;
      if (n > 2 && std::abs(term) <= kSeriesTolerance * std::max(1.0, std::abs(tail))) break;
      if (n > 10000) break;
    }
    return sum + tail;
  }

  double theta2_zero() const {
    double s = 0.0;
    for (int n = 0;; ++n) {
      const double h = n + 0.5;
      const double term = std::pow(q_, h * h);
      s += term;
      if (term <= kSeriesTolerance * s) break;
    }
    return 2.0 * s;
  }

  double theta3_zero() const {
    double s = 0.0;
    for (int n = 1;; ++n) {
      const double term = std::pow(q_, double(n) * n);
      s += term;
      if (term <= kSeriesTolerance * (1.0 + s)) break;
    }
    return 1.0 + 2.0 * s;
  }

 private:
  double q_;
};

// Moebius transformation (a z + b) / (c z + d).
struct Mobius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  cplx at_infinity() const { return a / c; }

  Mobius inverse() const { return {d, -b, -c, a}; }
  Mobius after(const Mobius& inner) const {
    return {a * inner.a + b * inner.c, a * inner.b + b * inner.d, c * inner.a + d * inner.c,
            c * inner.b + d * inner.d};
  }

  // Sends (z1, z2, z3) to (0, 1, infinity).
  static Mobius to_zero_one_infinity(cplx z1, cplx z2, cplx z3) {
    return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
  }
  // Sends each z_k to w_k.
  static Mobius through(const std::array<cplx, 3>& z, const std::array<cplx, 3>& w) {
    return to_zero_one_infinity(w[0], w[1], w[2]).inverse().after(to_zero_one_infinity(z[0], z[1], z[2]));
  }
};

enum class MapKind { HalfPlane, HalfAnnulus, DiskEquilateral };

// Conformal maps out of the rectangle [0, a] x [0, b].
//
// HalfPlane: w = sn(u, k) with u the rectangle recentered at (a/2, 0) and the
// modulus fixed by K'/K = 2b/a, evaluated through theta functions of nome
// q = exp(-2 pi b / a). Anchors (a/2,0) -> 0, (0,0) -> -1, (a,0) -> 1,
// (a/2,b) -> infinity, (0,b) -> -1/k, (a,b) -> 1/k.
//
// DiskEquilateral: the half-plane image followed by the Moebius map taking
// the images of (0,0), (a,0), (0,b) to the cube roots of unity 1, e^{2pi i/3},
// e^{4pi i/3} (counterclockwise order is preserved, so the half-plane lands on
// the unit disk).
class RectangleMap {
 public:
  RectangleMap(double a, double b, MapKind kind = MapKind::HalfPlane)
      : RectangleMap(a, b, kind, cube_roots()) {}

  // Disk targets for the corners (0,0), (a,0), (0,b).
  RectangleMap(double a, double b, MapKind kind, const std::array<cplx, 3>& disk_targets)
      : a_(a), b_(b), kind_(kind), theta_(std::exp(-2.0 * std::numbers::pi * b / a)) {
    if (!(a > 0.0 && b > 0.0)) throw std::domain_error("RectangleMap: dimensions must be positive");
    const double t2 = theta_.theta2_zero();
    const double t3 = theta_.theta3_zero();
    ratio_ = t3 / t2;
    modulus_ = (t2 / t3) * (t2 / t3);
    disk_ = Mobius::through({cplx{-1.0, 0.0}, cplx{1.0, 0.0}, cplx{-1.0 / modulus_, 0.0}}, disk_targets);
  }

  static std::array<cplx, 3> cube_roots() {
    const double c = std::numbers::pi * 2.0 / 3.0;
    return {cplx{1.0, 0.0}, std::polar(1.0, c), std::polar(1.0, 2.0 * c)};
  }

  double a() const { return a_; }
  double b() const { return b_; }
  MapKind kind() const { return kind_; }
  double modulus() const { return modulus_; }
  const Mobius& disk_stage() const { return disk_; }

  cplx operator()(cplx z) const;

  // sn through theta quotients; does not guard the pole.
  cplx sn(cplx z) const {
    const cplx arg = std::numbers::pi * (z - cplx{a_ / 2.0, 0.0}) / a_;
    return ratio_ * theta_.theta1(arg) / theta_.theta4(arg);
  }

  bool is_pole(cplx z) const {
    const double tol = 1e-12 * std::max(a_, b_);
    return std::abs(z.real() - a_ / 2.0) <= tol && std::abs(z.imag() - b_) <= tol;
  }

 private:
  double a_, b_;
  MapKind kind_;
  Theta theta_;
  double ratio_ = 1.0;
  double modulus_ = 1.0;
  Mobius disk_;
};

// Rectangle -> upper half-plane. Throws std::domain_error at the pole (a/2, b).
inline cplx rect_to_halfplane(cplx z, const RectangleMap& map) {
  if (map.is_pole(z)) throw std::domain_error("rect_to_halfplane: (a/2, b) maps to infinity");
  return map.sn(z);
}

// Rectangle -> half-annulus, w = exp(i pi (a - x)/a + pi (y - b/2)/a).
inline cplx rect_to_halfannulus(cplx z, const RectangleMap& map) {
  const double a = map.a();
  return std::exp(cplx{std::numbers::pi * (z.imag() - map.b() / 2.0) / a, std::numbers::pi * (a - z.real()) / a});
}

// Rectangle -> unit disk with the three corners on an equilateral triangle.
inline cplx rect_to_disk_equilateral(cplx z, const RectangleMap& map) {
  if (map.is_pole(z)) return map.disk_stage().at_infinity();
  return map.disk_stage()(map.sn(z));
}

inline cplx RectangleMap::operator()(cplx z) const {
  switch (kind_) {
    case MapKind::HalfPlane: return rect_to_halfplane(z, *this);
    case MapKind::HalfAnnulus: return rect_to_halfannulus(z, *this);
    case MapKind::DiskEquilateral: return rect_to_disk_equilateral(z, *this);
  }
  return {};
}

// Angle of w seen from the origin, measured from the positive imaginary axis
// and positive towards the positive real axis, in (-pi/2, pi/2).
inline double halfplane_angle(cplx w) {
  if (!(w.imag() > 0.0)) throw std::domain_error("halfplane_angle: point is not in the upper half-plane");
  return std::atan2(w.real(), w.imag());
}

}  // namespace slemst::conformal
