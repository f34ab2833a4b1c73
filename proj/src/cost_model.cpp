#include "resplan/cost_model.hpp"

#include <stdexcept>

namespace resplan {

double lambda_t_eur_per_watt(double price_eur_per_kwh, double years) {
  if (!(price_eur_per_kwh > 0.0)) throw std::domain_error("energy price must be > 0");
  if (!(years > 0.0)) throw std::domain_error("life cycle must be > 0 years");
  return price_eur_per_kwh * years * kHoursPerYear / 1000.0;
}

double lambda_t_eur_per_watt(const Scenario& s) { return lambda_t_eur_per_watt(s.energy_price, s.life_cycle_years); }

CostBreakdown objective_cost(const Assignment& a, const EnergyPlan& plan, const Scenario& s) {
  const double lt = lambda_t_eur_per_watt(s);
  CostBreakdown c;
  double grid_w = 0.0;
  double loss_w = 0.0;
  for (int n = 0; n < s.num_sites(); ++n) {
    if (!a.b(n)) continue;
    c.install += s.sites[n].install_cost;
    grid_w += plan.grid(n);
  }
  for (int t = 0; t < s.num_sites(); ++t) {
    for (int n = 0; n < s.num_sites(); ++n) {
      if (t == n || !plan.edges(t, n)) continue;
      c.connection += s.conn_cost(t, n);
      loss_w += s.loss_factor(t, n) * plan.flows(t, n);
    }
  }
  c.grid_energy = lt * grid_w;
  c.loss_energy = lt * loss_w;
  c.total = c.install + c.connection + c.grid_energy + c.loss_energy;
  return c;
}

double cost_c1(const BoolVector& b, const Eigen::VectorXd& grid, const Scenario& s) {
  const double lt = lambda_t_eur_per_watt(s);
  double total = 0.0;
  for (int n = 0; n < s.num_sites(); ++n)
    if (b(n)) total += s.sites[n].install_cost + lt * grid(n);
  return total;
}

double cost_c2(const BoolMatrix& edges, const Eigen::VectorXd& grid, const Eigen::MatrixXd& flows,
               const Scenario& s, const std::vector<int>& deployed) {
  const double lt = lambda_t_eur_per_watt(s);
  double total = 0.0;
  for (int t : deployed) {
    for (int n : deployed) {
      if (t == n || !edges(t, n)) continue;
      total += lt * s.loss_factor(t, n) * flows(t, n) + s.conn_cost(t, n);
    }
  }
  for (int n : deployed) total += lt * grid(n) + s.sites[n].install_cost;
  return total;
}

}  // namespace resplan
