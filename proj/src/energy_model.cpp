#include "resplan/energy_model.hpp"

#include <random>

namespace resplan {

double quantile(const EnergyDistribution& d, double phi) { return d.quantile(phi); }

double quantile_supply(int n, const Scenario& s) {
  const Site& site = s.sites[n];
  return site.harvest.quantile(site.outage_bound);
}

double surplus(const Assignment& a, int n, const Scenario& s) {
  const Site& site = s.sites[n];
  return -a.load(n) * site.tx_power_per_tp - site.static_power + quantile_supply(n, s);
}

double optimal_grid_power(const Assignment& a, int n, const Scenario& s) {
  if (!a.b(n)) return 0.0;
  return std::max(-surplus(a, n, s), 0.0);
}

Eigen::VectorXd optimal_grid_powers(const Assignment& a, const Scenario& s) {
  Eigen::VectorXd grid(s.num_sites());
  for (int n = 0; n < s.num_sites(); ++n) grid(n) = optimal_grid_power(a, n, s);
  return grid;
}

namespace {

// Exports leave at full value; imports arrive scaled by (1 - loss).
double net_imports(const EnergyPlan& plan, int n, const Scenario& s) {
  double in = 0.0;
  double out = 0.0;
  for (int t = 0; t < s.num_sites(); ++t) {
    if (t == n) continue;
    if (plan.edges(t, n)) in += (1.0 - s.loss_factor(t, n)) * plan.flows(t, n);
    if (plan.edges(n, t)) out += plan.flows(n, t);
  }
  return in - out;
}

}  // namespace

double outage_lhs(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s) {
  if (!a.b(n)) return 0.0;
  const Site& site = s.sites[n];
  return a.load(n) * site.tx_power_per_tp + site.static_power - plan.grid(n) - net_imports(plan, n, s) -
         quantile_supply(n, s);
}

bool outage_constraint_satisfied(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s) {
  return outage_lhs(a, plan, n, s) <= kOutageTolW;
}

double simulate_outage(const Assignment& a, const EnergyPlan& plan, int n, const Scenario& s, int draws,
                       std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("simulate_outage: draws must be >= 1");
  const Site& site = s.sites[n];
  const double demand = a.load(n) * site.tx_power_per_tp + site.static_power;
  const double firm = plan.grid(n) + net_imports(plan, n, s);
  std::mt19937_64 rng(seed);
  long shortfalls = 0;
  for (int k = 0; k < draws; ++k) {
    if (site.harvest.sample(rng) + firm < demand) ++shortfalls;
  }
  return static_cast<double>(shortfalls) / draws;
}

}  // namespace resplan
