#pragma once
#include <array>
#include <cmath>
#include <complex>

#include "gop/errors.hpp"

namespace gop {

using cplx = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// small fixed-size vector for points/covectors; components beyond dim stay 0
using Vec = std::array<double, 2>;

inline Vec vec1(double a) { return {a, 0.0}; }
inline Vec vec2(double a, double b) { return {a, b}; }

inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec scale(double s, const Vec& a) { return {s * a[0], s * a[1]}; }
inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec& a) { return std::hypot(a[0], a[1]); }

inline double wrap_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// signed distance to the nearest representative, in [-pi, pi)
inline double wrap_pm_pi(double d) {
  double r = std::fmod(d + kTwoPi / 2.0, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r - kTwoPi / 2.0;
}

// equispaced periodic grid on T^dim = [0, 2pi)^dim, n_points per axis
struct TorusGrid {
  int dim = 1;
  int n_points = 0;

  static TorusGrid make(int dim, int n_points);

  double spacing() const { return kTwoPi / n_points; }
  int cells() const { return dim == 1 ? n_points : n_points * n_points; }

  int wrap(int i) const {
    int r = i % n_points;
    return r < 0 ? r + n_points : r;
  }
  int flat(int i0, int i1 = 0) const {
    return dim == 1 ? wrap(i0) : wrap(i0) * n_points + wrap(i1);
  }
  Vec point(int cell) const {
    if (dim == 1) return vec1(spacing() * cell);
    return vec2(spacing() * (cell / n_points), spacing() * (cell % n_points));
  }
  // nearest grid cell, periodic
  int cell_of(const Vec& x) const {
    auto snap = [this](double c) {
      return wrap((int)std::lround(wrap_2pi(c) / spacing()));
    };
    return dim == 1 ? snap(x[0]) : flat(snap(x[0]), snap(x[1]));
  }
  bool operator==(const TorusGrid&) const = default;
};

// discretized covector directions on the cosphere fiber.
// dim 1: the two signs {+1, -1}; dim 2: n_dirs equispaced angles.
struct DirGrid {
  int dim = 1;
  int n_dirs = 2;

  static DirGrid make(int dim, int n_dirs);

  Vec dir(int k) const {
    if (dim == 1) return vec1(k == 0 ? 1.0 : -1.0);
    const double th = kTwoPi * k / n_dirs;
    return vec2(std::cos(th), std::sin(th));
  }
  double angle(int k) const { return kTwoPi * k / n_dirs; }
  // nearest direction cell for a nonzero covector
  int cell_of(const Vec& p) const {
    if (norm(p) == 0.0) throw DomainError("direction of zero covector");
    if (dim == 1) return p[0] > 0 ? 0 : 1;
    const double th = wrap_2pi(std::atan2(p[1], p[0]));
    int k = (int)std::lround(th / (kTwoPi / n_dirs));
    return k % n_dirs;
  }
  bool operator==(const DirGrid&) const = default;
};

struct CospherePoint {
  Vec x;
  Vec omega;  // unit covector
};

struct PhasePoint {
  Vec x;
  Vec p;
};

}  // namespace gop
