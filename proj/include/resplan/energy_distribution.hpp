#pragma once

#include <random>

namespace resplan {

/// Law of the power a site's harvester delivers, in watts.
///
/// Only the uniform law on [a, b] ships. A degenerate law (a == b) is a point
/// mass and is what the no-RES baseline uses with a = b = 0.
class EnergyDistribution {
 public:
  enum class Kind { kUniform };

  EnergyDistribution() = default;

  /// Throws std::invalid_argument unless 0 <= a <= b.
  static EnergyDistribution uniform(double a, double b);

  Kind kind() const { return kind_; }
  double min_power() const { return a_; }
  double max_power() const { return b_; }
  double mean() const { return 0.5 * (a_ + b_); }

  double pdf(double z) const;
  double cdf(double z) const;
  /// Inverse CDF. Throws std::domain_error unless 0 < phi < 1.
  double quantile(double phi) const;

  template <typename Rng>
  double sample(Rng& rng) const {
    if (b_ == a_) return a_;
    std::uniform_real_distribution<double> dist(a_, b_);
    return dist(rng);
  }

  bool operator==(const EnergyDistribution&) const = default;

 private:
  EnergyDistribution(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_ = Kind::kUniform;
  double a_ = 0.0;
  double b_ = 0.0;
};

}  // namespace resplan
