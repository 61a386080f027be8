#pragma once

// Small shared utilities: fixed-dimension vectors, deterministic RNG,
// deterministic reductions. Everything here is header-only and allocation-free
// apart from det_sum.

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msh {

inline constexpr int kMaxDim = 3;

// Point/vector in R^d with d <= 3. d is carried at runtime; unused
// components stay zero so Euclidean norms are safe regardless of d.
struct Vec {
  std::array<double, kMaxDim> c{0.0, 0.0, 0.0};

  Vec() = default;
  Vec(double x, double y) : c{x, y, 0.0} {}
  Vec(double x, double y, double z) : c{x, y, z} {}

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  Vec operator+(const Vec& o) const { return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}; }
  Vec operator-(const Vec& o) const { return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}; }
  Vec operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s}; }
  Vec& operator+=(const Vec& o) {
    c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
    return *this;
  }
};

inline double dot(const Vec& a, const Vec& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("unit_ball_volume: d must be 1..3");
  }
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG. mt19937_64 has a standard-pinned sequence and the value
// transforms below avoid std::uniform_*_distribution, whose output is
// implementation-defined; results are therefore bit-identical everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : gen_(splitmix64(seed ^ splitmix64(stream + 0x5851f42d4c957f2dULL))) {}

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t uniform_int(uint64_t n) {
    assert(n > 0);
    // Rejection sampling keeps the draw exact and deterministic.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  // Standard normal via Box-Muller (no cached spare, keeps state minimal).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Pairwise-tree summation over a fixed block structure. The reduction order
// depends only on the input length, never on thread count, so energies are
// bit-stable however the per-element work was parallelized.
inline double det_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  std::vector<double> buf(v.begin(), v.end());
  size_t n = buf.size();
  while (n > 1) {
    const size_t half = n / 2;
    for (size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) {
      buf[half] = buf[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return buf[0];
}

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace msh
