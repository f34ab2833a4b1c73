#pragma once

#include <vector>

#include "resplan/energy_model.hpp"
#include "resplan/radio_model.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

inline constexpr double kHoursPerYear = 8760.0;

struct CostBreakdown {
  double install = 0.0;
  double connection = 0.0;
  double grid_energy = 0.0;
  double loss_energy = 0.0;
  double total = 0.0;
};

/// EUR paid for one watt drawn continuously over the life cycle.
double lambda_t_eur_per_watt(double price_eur_per_kwh, double years);
double lambda_t_eur_per_watt(const Scenario& s);

/// Full planning objective: install + lines + lifetime grid and line-loss energy.
CostBreakdown objective_cost(const Assignment& a, const EnergyPlan& plan, const Scenario& s);

/// Cost of a deployment without inter-site lines.
double cost_c1(const BoolVector& b, const Eigen::VectorXd& grid, const Scenario& s);

/// Cost of a deployment with lines, summed over the `deployed` sites only.
double cost_c2(const BoolMatrix& edges, const Eigen::VectorXd& grid, const Eigen::MatrixXd& flows,
               const Scenario& s, const std::vector<int>& deployed);

}  // namespace resplan
