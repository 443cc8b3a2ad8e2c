#pragma once

namespace roblev {

// P(χ²_df ≤ q)
double chi2_cdf(double q, double df);

// q with P(χ²_df ≤ q) = prob. Throws std::domain_error unless 0 < prob < 1
// and df > 0.
double chi2_quantile(double prob, double df);

}  // namespace roblev
