#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "resplan/radio_model.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

/// Absolute slack in watts on the outage (supply >= demand) constraint.
inline constexpr double kOutageTolW = 1e-6;

/// Grid draw per site, directed line flows and the line indicator matrix.
/// `flows(t, n)` is the power sent from t to n before line losses.
struct EnergyPlan {
  Eigen::VectorXd grid;
  Eigen::MatrixXd flows;
  BoolMatrix edges;

  EnergyPlan() = default;
  explicit EnergyPlan(int num_sites)
      : grid(Eigen::VectorXd::Zero(num_sites)),
        flows(Eigen::MatrixXd::Zero(num_sites, num_sites)),
        edges(BoolMatrix::Constant(num_sites, num_sites, false)) {}

  int num_edges() const { return static_cast<int>(edges.count()); }
};

double quantile(const EnergyDistribution& d, double phi);

/// Firm supply credited to site n: harvest quantile at its outage bound.
double quantile_supply(int n, const Scenario& s);

/// Delta_n: firm supply minus transmit and static demand of site n.
double surplus(const Assignment& a, int n, const Scenario& s);

/// Grid draw that exactly covers the deficit of a deployed site, else 0.
double optimal_grid_power(const Assignment& a, int n, const Scenario& s);
Eigen::VectorXd optimal_grid_powers(const Assignment& a, const Scenario& s);

/// Left-hand side of the outage constraint for site n, in watts (<= 0 is feasible).
double outage_lhs(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s);
bool outage_constraint_satisfied(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s);

/// Monte-Carlo estimate of the probability that harvest + grid + net imports
/// fall short of site n's demand. Imports and exports are treated as firm.
double simulate_outage(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s, int draws,
                       std::uint64_t seed);

}  // namespace resplan
