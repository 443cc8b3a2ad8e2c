#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "roblev/matrix.hpp"

namespace roblev {

inline constexpr std::size_t kEnumerationLimit = 1000;

struct McdConfig {
  // Subset fraction in [0.5, 1]; 0.5 gives h = ⌊(n + p + 1)/2⌋.
  double alpha = 0.5;
  // Random elemental starts. When C(n, p+1) <= max(n_trials,
  // kEnumerationLimit) every elemental subset is enumerated instead, in
  // lexicographic order.
  std::size_t n_trials = 500;
  // Lowest-determinant candidates carried to C-step convergence.
  std::size_t n_keep = 10;
  double reweight_prob = 0.975;
  std::uint64_t seed = 1;
  bool use_small_sample_correction = true;
  // Replaces the reweighted-step factor c when set.
  std::optional<double> c_override;
  // Worker threads for the trial stage; results do not depend on it.
  unsigned threads = 1;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

struct McdFit {
  Vector location;         // T_rob
  Matrix scatter;          // C_rob = c · weighted covariance
  Vector raw_location;     // mean of the optimal h-subset
  Matrix raw_scatter;      // its covariance times the raw-stage factors
  Vector weights;          // binary w
  double c = 1.0;          // reweighted-step factor (consistency × small sample)
  double raw_consistency = 1.0;
  double raw_small_sample = 1.0;
  double consistency = 1.0;   // reweighted stage
  double small_sample = 1.0;  // reweighted stage
  std::vector<std::size_t> best_subset;  // sorted 0-based rows
  double best_logdet = 0.0;
  std::size_t h = 0;
  bool enumerated = false;   // elemental subsets enumerated exhaustively
  std::size_t candidates = 0;

  double weight_sum() const;
};

// h = ⌊2⌊(n + p + 1)/2⌋ − n + 2(n − ⌊(n + p + 1)/2⌋)·alpha⌋
std::size_t mcd_subset_size(std::size_t n, std::size_t p, double alpha);

// log det of the sample covariance of the listed rows; nullopt when singular.
std::optional<double> subset_logdet(const Matrix& x, std::span<const std::size_t> subset);

// One concentration step: the h = |subset| rows nearest (in the subset's own
// Mahalanobis metric) to the subset mean, sorted, ties to the lower row.
// Throws McdError carrying `subset` if its covariance is singular.
std::vector<std::size_t> c_step(const Matrix& x, std::span<const std::size_t> subset);

// Squared Mahalanobis distances of every row under (center, scatter).
Vector squared_distances(const Matrix& x, std::span<const double> center, const Matrix& scatter);

// alpha / P(χ²_{p+2} <= χ²_p quantile(alpha)); exactly 1 at alpha = 1.
double consistency_factor(double alpha_actual, std::size_t p);

enum class CorrectionStage { raw, reweighted };

// Simulation-fitted finite-sample correction for the MCD (Pison, Van Aelst &
// Willems 2002 approximation, in the 1/f form). Returns 1 when disabled or
// alpha == 1. `alpha` is the configured subset fraction.
double small_sample_factor(std::size_t n, std::size_t p, CorrectionStage stage,
                           double alpha = 0.5, bool enabled = true);

// Fast-MCD with one-step reweighting.
//   1. elemental (p+1)-subsets: all of them if C(n, p+1) <= max(n_trials, kEnumerationLimit), else
//      n_trials random draws whose randomness depends only on (seed, trial);
//   2. each inflated to h rows by one distance ranking, then two C-steps;
//   3. the n_keep lowest determinants iterated to a C-step fixed point;
//   4. raw moments of the best subset, scaled by the raw-stage factors;
//   5. w_i = 1 iff the squared raw distance <= χ²_p(reweight_prob);
//   6. T_rob and C_rob from the weighted moments, C_rob scaled by c.
// Ties (distances, equal determinants) resolve to lower row indices.
// Throws McdError on exact fit or degenerate input.
McdFit fast_mcd(const Matrix& x, const McdConfig& cfg = {});

}  // namespace roblev
