// Counter-based deterministic random streams.
//
// Every random draw in the toolkit flows through a Stream keyed by
// (seed, label). Streams are stateless apart from a counter, so
// concurrent evaluation order cannot perturb results and any stream can
// be re-created from its key.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mpspec/base.hpp"

namespace mpspec {

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace detail

class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view label)
      : key_(detail::mix64(seed ^ fnv1a64(label))) {}

  std::uint64_t next_u64() { return detail::mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  // Uniform point in the closed Euclidean ball of the given radius in R^m.
  std::vector<double> ball_point(int m, double radius) {
    std::vector<double> v = unit_vector(m);
    double r = radius * std::pow(uniform(), 1.0 / m);
    for (double& x : v) x *= r;
    return v;
  }

  // Uniform direction on the unit sphere of R^m.
  std::vector<double> unit_vector(int m) {
    std::vector<double> v(m);
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (int i = 0; i < m; ++i) {
        v[i] = normal();
        nrm += v[i] * v[i];
      }
    } while (nrm < 1e-30);
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;
    return v;
  }

  // Uniform (Haar) unit vector on the sphere of C^n.
  std::vector<cplx> unit_complex_vector(int n) {
    std::vector<cplx> v(n);
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (int i = 0; i < n; ++i) {
        v[i] = complex_normal();
        nrm += std::norm(v[i]);
      }
    } while (nrm < 1e-30);
    nrm = std::sqrt(nrm);
    for (cplx& x : v) x /= nrm;
    return v;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mpspec
