#include "roblev/mcd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "roblev/classical.hpp"
#include "roblev/error.hpp"
#include "roblev/stats.hpp"

namespace roblev {

double McdFit::weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::size_t mcd_subset_size(std::size_t n, std::size_t p, double alpha) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) {
    throw std::invalid_argument("MCD alpha must lie in [0.5, 1]");
  }
  const std::size_t half = (n + p + 1) / 2;
  const double h = 2.0 * static_cast<double>(half) - static_cast<double>(n) +
                   2.0 * static_cast<double>(n - half) * alpha;
  return static_cast<std::size_t>(std::floor(h + 1e-9));
}

namespace {

struct Candidate {
  double logdet = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> subset;
};

bool lex_before(const Candidate& a, const Candidate& b) {
  if (a.logdet != b.logdet) return a.logdet < b.logdet;
  return a.subset < b.subset;
}

// Preferred optimum: clearly smaller determinant, or a tie within rounding
// broken by the lexicographically smaller subset.
bool better(const Candidate& a, const Candidate& b) {
  const double tol = 1e-10 * std::max(1.0, std::abs(b.logdet));
  if (a.logdet < b.logdet - tol) return true;
  if (a.logdet > b.logdet + tol) return false;
  return a.subset < b.subset;
}

std::optional<SymmetricPosDef> factor(const Matrix& cov) {
  auto r = try_cholesky(cov);
  if (auto* spd = std::get_if<SymmetricPosDef>(&r)) return std::move(*spd);
  return std::nullopt;
}

// Rows with the h smallest distances; ties go to the lower row, result sorted.
std::vector<std::size_t> nearest(std::span<const double> d2, std::size_t h) {
  std::vector<std::size_t> idx(d2.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto cmp = [&](std::size_t a, std::size_t b) {
    return d2[a] != d2[b] ? d2[a] < d2[b] : a < b;
  };
  std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(h - 1), idx.end(), cmp);
  idx.resize(h);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Vector squared_distances(const Matrix& x, std::span<const double> center,
                         const SymmetricPosDef& spd) {
  const std::size_t p = x.cols();
  Vector d2(x.rows());
  Vector diff(p);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    for (std::size_t j = 0; j < p; ++j) diff[j] = r[j] - center[j];
    d2[i] = quad_form(spd, diff);
  }
  return d2;
}

std::string describe(std::span<const std::size_t> rows) {
  std::string s;
  for (std::size_t k = 0; k < rows.size() && k < 12; ++k) {
    if (k) s += ' ';
    s += std::to_string(rows[k] + 1);
  }
  if (rows.size() > 12) s += " ...";
  return s;
}

[[noreturn]] void exact_fit(std::span<const std::size_t> subset) {
  throw McdError("exact fit: " + std::to_string(subset.size()) +
                     " observations lie on a lower-dimensional affine subspace (rows " +
                     describe(subset) + ")",
                 std::vector<std::size_t>(subset.begin(), subset.end()));
}

// Uniform integer in [0, bound), independent of the standard library's
// distribution implementation.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

// C(n, k) if it does not exceed `cap`, else cap + 1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(r));
}

// Advance a sorted k-combination of [0, n) lexicographically.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

class TrialRunner {
 public:
  TrialRunner(const Matrix& x, std::size_t h, std::uint64_t seed) : x_(x), h_(h), seed_(seed) {}

  // Elemental start -> h-subset -> two C-steps.
  Candidate run(std::size_t trial, std::vector<std::size_t> start) const {
    const std::size_t n = x_.rows();
    std::mt19937_64 rng = trial_rng(seed_ ^ 0x9e3779b97f4a7c15ULL, trial);
    std::vector<bool> in(n, false);
    for (auto r : start) in[r] = true;

    // Grow a singular elemental subset with random rows until it spans.
    std::optional<SymmetricPosDef> spd;
    Moments m;
    while (true) {
      m = subset_moments(x_, start);
      spd = factor(m.covariance);
      if (spd) break;
      if (start.size() >= h_) {
        std::sort(start.begin(), start.end());
        exact_fit(start);
      }
      std::size_t r;
      do {
        r = static_cast<std::size_t>(below(rng, n));
      } while (in[r]);
      in[r] = true;
      start.push_back(r);
    }
    const Vector d2 = squared_distances(x_, m.mean, *spd);
    Candidate c;
    c.subset = nearest(d2, h_);
    for (int step = 0; step < 2; ++step) c.subset = c_step(x_, c.subset);
    const auto ld = subset_logdet(x_, c.subset);
    if (!ld) exact_fit(c.subset);
    c.logdet = *ld;
    return c;
  }

  std::vector<std::size_t> random_elemental(std::size_t trial) const {
    const std::size_t n = x_.rows();
    const std::size_t k = x_.cols() + 1;
    std::mt19937_64 rng = trial_rng(seed_, trial);
    std::vector<std::size_t> out;
    std::vector<bool> in(n, false);
    while (out.size() < k) {
      const auto r = static_cast<std::size_t>(below(rng, n));
      if (in[r]) continue;
      in[r] = true;
      out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const Matrix& x_;
  std::size_t h_;
  std::uint64_t seed_;
};

Candidate converge(const Matrix& x, Candidate c) {
  for (int iter = 0; iter < 500; ++iter) {
    auto next = c_step(x, c.subset);
    if (next == c.subset) break;
    const auto ld = subset_logdet(x, next);
    if (!ld) exact_fit(next);
    // Determinant can only fall; stop if rounding says otherwise.
    if (*ld > c.logdet) break;
    c.subset = std::move(next);
    c.logdet = *ld;
  }
  return c;
}

// Piecewise-linear interpolation in alpha of the fitted f(n) curves.
double interpolate_factor(double f500, double f875, double alpha) {
  if (alpha >= 1.0) return 1.0;
  const double f = alpha <= 0.875 ? f500 + (f875 - f500) / 0.375 * (alpha - 0.5)
                                  : f875 + (1.0 - f875) / 0.125 * (alpha - 0.875);
  return f;
}

// Coefficients for p > 2: (alpha_q, beta_q, q) at q = 2 and q = 3.
struct Fit3 {
  std::array<double, 3> at2;
  std::array<double, 3> at3;
};

double general_p_curve(const Fit3& c, double p, double n) {
  // Solve [1, -log(q p²)] · (a, b) = log(-alpha_q / p^beta_q) for q = 2, 3.
  const double y0 = std::log(-c.at2[0] / std::pow(p, c.at2[1]));
  const double y1 = std::log(-c.at3[0] / std::pow(p, c.at3[1]));
  const double a01 = -std::log(c.at2[2] * p * p);
  const double a11 = -std::log(c.at3[2] * p * p);
  const double b = (y0 - y1) / (a01 - a11);
  const double a = y0 - a01 * b;
  return 1.0 - std::exp(a) / std::pow(n, b);
}

}  // namespace

std::optional<double> subset_logdet(const Matrix& x, std::span<const std::size_t> subset) {
  const Moments m = subset_moments(x, subset);
  auto spd = factor(m.covariance);
  if (!spd) return std::nullopt;
  return log_det(*spd);
}

Vector squared_distances(const Matrix& x, std::span<const double> center, const Matrix& scatter) {
  auto spd = factor(scatter);
  if (!spd) throw McdError("scatter matrix is singular");
  return squared_distances(x, center, *spd);
}

std::vector<std::size_t> c_step(const Matrix& x, std::span<const std::size_t> subset) {
  const Moments m = subset_moments(x, subset);
  auto spd = factor(m.covariance);
  if (!spd) {
    std::vector<std::size_t> s(subset.begin(), subset.end());
    std::sort(s.begin(), s.end());
    exact_fit(s);
  }
  const Vector d2 = squared_distances(x, m.mean, *spd);
  return nearest(d2, subset.size());
}

double consistency_factor(double alpha_actual, std::size_t p) {
  if (!(alpha_actual > 0.0 && alpha_actual <= 1.0)) {
    throw std::domain_error("consistency factor needs alpha in (0, 1]");
  }
  if (alpha_actual >= 1.0) return 1.0;
  const double pd = static_cast<double>(p);
  const double q = chi2_quantile(alpha_actual, pd);
  return alpha_actual / chi2_cdf(q, pd + 2.0);
}

double small_sample_factor(std::size_t n, std::size_t p, CorrectionStage stage, double alpha,
                           bool enabled) {
  if (!enabled || alpha >= 1.0) return 1.0;
  if (n <= p) throw McdError("small-sample correction needs n > p");
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  double f500 = 1.0, f875 = 1.0;
  if (stage == CorrectionStage::raw) {
    if (p == 1) {
      f500 = 1.0 - std::exp(0.262024211897096) / std::pow(nd, 0.604756680630497);
      f875 = 1.0 - std::exp(-0.351584646688712) / std::pow(nd, 1.01646567502486);
    } else if (p == 2) {
      f500 = 1.0 - std::exp(0.673292623522027) / std::pow(nd, 0.691365864961895);
      f875 = 1.0 - std::exp(0.446537815635445) / std::pow(nd, 1.06690782995919);
    } else {
      f500 = general_p_curve({{{-1.42764571687802, 1.26263336932151, 2.0}},
                              {{-1.06141115981725, 1.28907991440387, 3.0}}},
                             pd, nd);
      f875 = general_p_curve({{{-0.455179464070565, 1.11192541278794, 2.0}},
                              {{-0.294241208320834, 1.09649329149811, 3.0}}},
                             pd, nd);
    }
  } else {
    if (p == 1) {
      f500 = 1.0 - std::exp(1.11098143415027) / std::pow(nd, 1.5182890270453);
      f875 = 1.0 - std::exp(-0.66046776772861) / std::pow(nd, 0.88939595831888);
    } else if (p == 2) {
      f500 = 1.0 - std::exp(3.11101712909049) / std::pow(nd, 1.91401056721863);
      f875 = 1.0 - std::exp(0.79473550581058) / std::pow(nd, 1.10081930350091);
    } else {
      f500 = general_p_curve({{{-1.02842572724793, 1.67659883081926, 2.0}},
                              {{-0.26800273450853, 1.35968562893582, 3.0}}},
                             pd, nd);
      f875 = general_p_curve({{{-0.544482443573914, 1.25994483222292, 2.0}},
                              {{-0.343791072183285, 1.25159004257133, 3.0}}},
                             pd, nd);
    }
  }
  const double f = interpolate_factor(f500, f875, alpha);
  if (!(f > 0.0)) {
    throw McdError("small-sample correction is undefined for n = " + std::to_string(n) +
                   ", p = " + std::to_string(p) + "; disable it or supply c explicitly");
  }
  return 1.0 / f;
}

McdFit fast_mcd(const Matrix& x, const McdConfig& cfg) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (p == 0) throw McdError("MCD needs at least one variable");
  if (n <= p + 1) {
    throw McdError("MCD needs more than p + 1 observations (n = " + std::to_string(n) +
                   ", p = " + std::to_string(p) + ")");
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (is_constant_column(x, j)) {
      throw McdError("continuous column " + std::to_string(j + 1) + " is constant");
    }
  }
  if (!(cfg.reweight_prob > 0.0 && cfg.reweight_prob < 1.0)) {
    throw std::invalid_argument("reweighting probability must lie in (0, 1)");
  }
  if (cfg.c_override && !(*cfg.c_override > 0.0 && std::isfinite(*cfg.c_override))) {
    throw std::invalid_argument("c override must be a positive finite number");
  }

  McdFit fit;
  fit.h = mcd_subset_size(n, p, cfg.alpha);
  const std::size_t h = fit.h;

  Candidate best;
  if (h >= n) {
    best.subset.resize(n);
    std::iota(best.subset.begin(), best.subset.end(), std::size_t{0});
    const auto ld = subset_logdet(x, best.subset);
    if (!ld) exact_fit(best.subset);
    best.logdet = *ld;
  } else {
    const std::size_t k = p + 1;
    const std::uint64_t trials = std::max<std::size_t>(cfg.n_trials, 1);
    const std::uint64_t limit = std::max<std::uint64_t>(trials, kEnumerationLimit);
    fit.enumerated = binomial_capped(n, k, limit) <= limit;

    std::vector<std::vector<std::size_t>> starts;
    if (fit.enumerated) {
      std::vector<std::size_t> comb(k);
      std::iota(comb.begin(), comb.end(), std::size_t{0});
      do {
        starts.push_back(comb);
      } while (next_combination(comb, n));
    }
    const std::size_t count = fit.enumerated ? starts.size() : static_cast<std::size_t>(trials);
    const TrialRunner runner(x, h, cfg.seed);

    std::vector<Candidate> results(count);
    std::vector<std::exception_ptr> errors(count);
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        try {
          results[t] = runner.run(t, fit.enumerated ? starts[t] : runner.random_elemental(t));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, 64));
    if (threads == 1 || count < 2 * threads) {
      work(0, count);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (count + threads - 1) / threads;
      for (unsigned w = 0; w < threads; ++w) {
        const std::size_t b = std::min(count, w * chunk);
        const std::size_t e = std::min(count, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    std::sort(results.begin(), results.end(), lex_before);
    results.erase(std::unique(results.begin(), results.end(),
                              [](const Candidate& a, const Candidate& b) {
                                return a.subset == b.subset;
                              }),
                  results.end());
    fit.candidates = results.size();
    const std::size_t keep = std::min(results.size(), std::max<std::size_t>(cfg.n_keep, 1));
    for (std::size_t i = 0; i < keep; ++i) {
      Candidate c = converge(x, std::move(results[i]));
      if (best.subset.empty() || better(c, best)) best = std::move(c);
    }
  }
  fit.best_subset = best.subset;
  fit.best_logdet = best.logdet;

  const Moments raw = subset_moments(x, fit.best_subset);
  fit.raw_consistency =
      consistency_factor(static_cast<double>(h) / static_cast<double>(n), p);
  fit.raw_small_sample = small_sample_factor(n, p, CorrectionStage::raw, cfg.alpha,
                                             cfg.use_small_sample_correction);
  fit.raw_location = raw.mean;
  fit.raw_scatter = raw.covariance;
  const double raw_factor = fit.raw_consistency * fit.raw_small_sample;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) fit.raw_scatter(a, b) *= raw_factor;

  // No trimming at h = n: every observation keeps weight 1.
  if (h >= n) {
    fit.weights.assign(n, 1.0);
  } else {
    const Vector d2 = squared_distances(x, fit.raw_location, fit.raw_scatter);
    const double cutoff = chi2_quantile(cfg.reweight_prob, static_cast<double>(p));
    fit.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.weights[i] = d2[i] <= cutoff ? 1.0 : 0.0;
  }
  const double sum_w = fit.weight_sum();
  if (sum_w < static_cast<double>(p + 1)) {
    throw McdError("only " + std::to_string(static_cast<std::size_t>(sum_w)) +
                   " observations kept weight 1; the reweighted covariance is singular");
  }

  const Moments rew = weighted_moments(x, fit.weights);
  fit.consistency = consistency_factor(sum_w / static_cast<double>(n), p);
  fit.small_sample = small_sample_factor(n, p, CorrectionStage::reweighted, cfg.alpha,
                                         cfg.use_small_sample_correction);
  fit.c = cfg.c_override ? *cfg.c_override : fit.consistency * fit.small_sample;
  fit.location = rew.mean;
  fit.scatter = rew.covariance;
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) fit.scatter(a, b) *= fit.c;
  if (!factor(fit.scatter)) {
    throw McdError("reweighted covariance is singular");
  }
  return fit;
}

}  // namespace roblev
