#pragma once

// Axis-aligned computational window, either a box or a flat torus.

#include <stdexcept>

#include "msh/common.hpp"

namespace msh {

enum class Topology { box, torus };

struct Window {
  int d = 2;
  Vec lo;
  Vec hi;
  Topology topology = Topology::box;

  Window() = default;
  Window(int dim, Vec lower, Vec upper, Topology top = Topology::box)
      : d(dim), lo(lower), hi(upper), topology(top) {
    validate();
  }

  void validate() const {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("Window: d must be 1..3");
    for (int i = 0; i < d; ++i)
      if (!(hi[i] > lo[i])) throw std::invalid_argument("Window: upper must exceed lower");
  }

  double side(int i) const { return hi[i] - lo[i]; }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= side(i);
    return v;
  }

  Vec center() const {
    Vec c;
    for (int i = 0; i < d; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }

  bool contains(const Vec& x) const {
    for (int i = 0; i < d; ++i)
      if (x[i] < lo[i] || x[i] >= hi[i]) return false;
    return true;
  }

  // Maps x into the fundamental domain (torus only; identity on a box).
  Vec wrap(const Vec& x) const {
    if (topology == Topology::box) return x;
    Vec y = x;
    for (int i = 0; i < d; ++i) {
      const double L = side(i);
      y[i] = lo[i] + std::fmod(std::fmod(y[i] - lo[i], L) + L, L);
      if (y[i] >= hi[i]) y[i] = lo[i];  // fmod can land exactly on hi
    }
    return y;
  }

  // Shortest displacement a-b under the window's topology.
  Vec delta(const Vec& a, const Vec& b) const {
    Vec dv = a - b;
    if (topology == Topology::torus) {
      for (int i = 0; i < d; ++i) {
        const double L = side(i);
        dv[i] -= L * std::round(dv[i] / L);
      }
    }
    return dv;
  }

  double distance2(const Vec& a, const Vec& b) const { return norm2(delta(a, b)); }
  double distance(const Vec& a, const Vec& b) const { return std::sqrt(distance2(a, b)); }
};

}  // namespace msh
