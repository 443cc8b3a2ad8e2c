#pragma once

// Seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "roblev/matrix.hpp"

namespace oracle {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  roblev::Matrix normal_matrix(std::size_t n, std::size_t p, double scale = 1.0) {
    roblev::Matrix m(n, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) m(i, j) = scale * normal();
    return m;
  }

  // Intercept column followed by p − 1 generic continuous columns with
  // varied scales and offsets.
  roblev::Matrix design_with_intercept(std::size_t n, std::size_t p) {
    roblev::Matrix m(n, p);
    std::vector<double> scale(p), shift(p);
    for (std::size_t j = 1; j < p; ++j) {
      scale[j] = std::exp(uniform(-2.0, 2.0));
      shift[j] = uniform(-10.0, 10.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      m(i, 0) = 1.0;
      for (std::size_t j = 1; j < p; ++j) m(i, j) = shift[j] + scale[j] * normal();
    }
    return m;
  }

  // Binary weights with at least `min_ones` ones.
  std::vector<double> binary_weights(std::size_t n, std::size_t min_ones, double p_one = 0.7) {
    std::vector<double> w(n);
    std::size_t ones = 0;
    do {
      ones = 0;
      for (auto& v : w) {
        v = coin(p_one) ? 1.0 : 0.0;
        ones += v != 0.0;
      }
    } while (ones < min_ones);
    return w;
  }

  roblev::Matrix spd(std::size_t p, double eps = 1e-3) {
    const roblev::Matrix b = normal_matrix(p + 2, p);
    roblev::Matrix a = b.gram();
    for (std::size_t i = 0; i < p; ++i) a(i, i) += eps;
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
