#include "resplan/energy_distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace resplan {

EnergyDistribution EnergyDistribution::uniform(double a, double b) {
  if (!(a >= 0.0) || !(b >= a) || !std::isfinite(b))
    throw std::invalid_argument("uniform harvest law requires 0 <= a <= b");
  return EnergyDistribution(Kind::kUniform, a, b);
}

double EnergyDistribution::pdf(double z) const {
  if (b_ == a_ || z < a_ || z > b_) return 0.0;
  return 1.0 / (b_ - a_);
}

double EnergyDistribution::cdf(double z) const {
  if (z < a_) return 0.0;
  if (z >= b_) return 1.0;
  return (z - a_) / (b_ - a_);
}

double EnergyDistribution::quantile(double phi) const {
  if (!(phi > 0.0 && phi < 1.0)) throw std::domain_error("quantile: probability must lie in (0, 1)");
  return a_ + phi * (b_ - a_);
}

}  // namespace resplan
