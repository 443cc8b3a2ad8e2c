#include "roblev/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace roblev {

double chi2_cdf(double q, double df) {
  if (!(df > 0.0)) throw std::domain_error("chi-square degrees of freedom must be positive");
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  return boost::math::gamma_p(df / 2.0, q / 2.0);
}

double chi2_quantile(double prob, double df) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("chi-square quantile probability must lie in (0, 1)");
  }
  if (!(df > 0.0)) throw std::domain_error("chi-square degrees of freedom must be positive");
  return 2.0 * boost::math::gamma_p_inv(df / 2.0, prob);
}

}  // namespace roblev
