#include "resplan/exact_oracle.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "resplan/cost_model.hpp"
#include "resplan/errors.hpp"
#include "resplan/planner.hpp"

namespace resplan {

namespace {

struct EnergyOptimum {
  double cost = std::numeric_limits<double>::infinity();  // lines + lifetime energy
  EnergyPlan plan;
};

class ExactSearch {
 public:
  explicit ExactSearch(const Scenario& s) : s_(s) {}

  ExactResult run() {
    const int n_sites = s_.num_sites();
    for (std::uint32_t mask = 0; mask < (1u << n_sites); ++mask) {
      Assignment a(s_.num_tps(), n_sites);
      double install = 0.0;
      for (int n = 0; n < n_sites; ++n) {
        if (mask & (1u << n)) {
          a.b(n) = true;
          install += s_.sites[n].install_cost;
        }
      }
      // Energy and line costs are non-negative, so install cost alone bounds the subtree.
      if (result_.feasible && install >= result_.best_cost) continue;
      assign_tp(a, 0, install);
    }
    return result_;
  }

 private:
  void assign_tp(Assignment& a, int m, double install) {
    if (m == s_.num_tps()) {
      evaluate(a, install);
      return;
    }
    for (int n = 0; n < s_.num_sites(); ++n) {
      if (!a.b(n) || a.load(n) >= s_.capacity) continue;
      a.p(m, n) = true;
      assign_tp(a, m + 1, install);
      a.p(m, n) = false;
    }
  }

  void evaluate(const Assignment& a, double install) {
    for (int m = 0; m < a.num_tps(); ++m)
      for (int n = 0; n < a.num_sites(); ++n)
        if (!qos_linearized_holds(a, m, n, s_)) {
          ++result_.enumerated;
          return;
        }

    const EnergyOptimum& energy = energy_for(a);
    const double total = install + energy.cost;
    if (!result_.feasible || total < result_.best_cost) {
      result_.feasible = true;
      result_.best_cost = total;
      result_.best_assign = a;
      result_.best_plan = energy.plan;
    }
  }

  // The energy subproblem depends only on the deployment and per-site loads.
  const EnergyOptimum& energy_for(const Assignment& a) {
    std::vector<int> key;
    for (int n = 0; n < a.num_sites(); ++n) key.push_back(a.b(n) ? a.load(n) : -1);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      result_.enumerated += it->second.second;
      return it->second.first;
    }

    const std::vector<int> deployed = deployed_sites(a);
    std::vector<DirectedEdge> all;
    for (int t : deployed)
      for (int n : deployed)
        if (t != n) all.emplace_back(t, n);

    // Cheapest conceivable energy bill: every line available, connection cost ignored.
    const double energy_floor = solve(a, all).second;

    EnergyOptimum best;
    std::uint64_t count = 0;
    const std::uint64_t subsets = std::uint64_t{1} << all.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      ++count;
      std::vector<DirectedEdge> edges;
      double conn = 0.0;
      for (std::size_t e = 0; e < all.size(); ++e) {
        if (mask & (std::uint64_t{1} << e)) {
          edges.push_back(all[e]);
          conn += s_.conn_cost(all[e].first, all[e].second);
        }
      }
      if (conn + energy_floor >= best.cost) continue;
      auto [plan, energy] = solve(a, edges);
      if (conn + energy < best.cost) {
        best.cost = conn + energy;
        best.plan = std::move(plan);
      }
    }
    result_.enumerated += count;
    auto [pos, inserted] = cache_.emplace(key, std::make_pair(std::move(best), count));
    return pos->second.first;
  }

  std::pair<EnergyPlan, double> solve(const Assignment& a, const std::vector<DirectedEdge>& edges) const {
    const BalancingLp model = build_balancing_lp(a, edges, s_);
    const LpSolutiond sol = solve_lp(model.lp);
    if (sol.status != LpStatus::kOptimal) throw std::runtime_error("oracle: balancing LP not optimal");
    EnergyPlan plan(s_.num_sites());
    for (std::size_t k = 0; k < model.sites.size(); ++k) plan.grid(model.sites[k]) = sol.x(model.grid_var(k));
    for (std::size_t e = 0; e < edges.size(); ++e) {
      plan.edges(edges[e].first, edges[e].second) = true;
      plan.flows(edges[e].first, edges[e].second) = sol.x(model.flow_var(e));
    }
    return {std::move(plan), sol.objective_value};
  }

  const Scenario& s_;
  ExactResult result_;
  std::map<std::vector<int>, std::pair<EnergyOptimum, std::uint64_t>> cache_;
};

}  // namespace

ExactResult solve_exact(const Scenario& s, const OracleLimits& limits) {
  if (s.num_sites() > limits.max_sites || s.num_tps() > limits.max_tps || s.capacity > limits.max_capacity)
    throw SizeError("exact oracle limited to N <= " + std::to_string(limits.max_sites) + ", M <= " +
                    std::to_string(limits.max_tps) + ", B <= " + std::to_string(limits.max_capacity));
  return ExactSearch(s).run();
}

}  // namespace resplan
