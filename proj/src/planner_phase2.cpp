#include <algorithm>
#include <limits>
#include <stdexcept>

#include "resplan/cost_model.hpp"
#include "resplan/planner.hpp"

namespace resplan {

std::vector<int> deployed_sites(const Assignment& a) {
  std::vector<int> out;
  for (int n = 0; n < a.num_sites(); ++n)
    if (a.b(n)) out.push_back(n);
  return out;
}

BalancingLp build_balancing_lp(const Assignment& a, const std::vector<DirectedEdge>& edges, const Scenario& s) {
  BalancingLp out;
  out.sites = deployed_sites(a);
  out.edges = edges;
  const std::size_t num_sites = out.sites.size();
  std::vector<int> slot(s.num_sites(), -1);
  for (std::size_t k = 0; k < num_sites; ++k) slot[out.sites[k]] = static_cast<int>(k);
  for (const auto& [t, n] : edges) {
    if (t == n || t < 0 || n < 0 || t >= s.num_sites() || n >= s.num_sites() || slot[t] < 0 || slot[n] < 0)
      throw std::invalid_argument("balancing LP: edge outside the deployed set");
  }

  const double lt = lambda_t_eur_per_watt(s);
  out.lp = LpProblemd(static_cast<Eigen::Index>(num_sites + edges.size()));
  for (std::size_t k = 0; k < num_sites; ++k) {
    out.lp.set_objective_coeff(out.grid_var(k), lt);
    out.lp.set_name(out.grid_var(k), "grid_" + std::to_string(out.sites[k]));
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [t, n] = edges[e];
    out.lp.set_objective_coeff(out.flow_var(e), lt * s.loss_factor(t, n));
    out.lp.set_name(out.flow_var(e), "flow_" + std::to_string(t) + "_" + std::to_string(n));
  }

  // -g_n + sum_out f - sum_in (1 - eps) f <= Delta_n
  for (std::size_t k = 0; k < num_sites; ++k) {
    const int n = out.sites[k];
    Eigen::VectorXd row = Eigen::VectorXd::Zero(out.lp.num_vars());
    row(out.grid_var(k)) = -1.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [from, to] = edges[e];
      if (from == n) row(out.flow_var(e)) += 1.0;
      if (to == n) row(out.flow_var(e)) -= 1.0 - s.loss_factor(from, to);
    }
    out.lp.add_constraint(row, Relation::kLessEqual, surplus(a, n, s));
  }
  return out;
}

namespace {

struct Snapshot {
  std::vector<DirectedEdge> edges;
  Eigen::VectorXd grid;
  Eigen::MatrixXd flows;
};

}  // namespace

Phase2Result run_phase2(const Phase1Result& p1, const Scenario& s, std::uint64_t /*seed*/) {
  if (!p1.found) throw std::invalid_argument("phase 2 requires a feasible phase-1 result");
  const std::vector<int> deployed = deployed_sites(p1.assign);
  const int num_sites = s.num_sites();

  std::vector<DirectedEdge> edges;
  for (int t : deployed)
    for (int n : deployed)
      if (t != n) edges.emplace_back(t, n);

  Phase2Result result;
  result.initial_edges = static_cast<int>(edges.size());

  double fixed = 0.0;
  for (int n : deployed) fixed += s.sites[n].install_cost;

  double best = std::numeric_limits<double>::infinity();
  Snapshot best_snap;

  while (!edges.empty()) {
    ++result.iterations;
    const BalancingLp model = build_balancing_lp(p1.assign, edges, s);
    const LpSolutiond sol = solve_lp(model.lp);
    if (sol.status != LpStatus::kOptimal) throw std::runtime_error("balancing LP not optimal");

    double cost = sol.objective_value + fixed;
    for (const auto& [t, n] : edges) cost += s.conn_cost(t, n);
    if (cost > best) break;

    best = cost;
    best_snap.edges = edges;
    best_snap.grid = Eigen::VectorXd::Zero(num_sites);
    best_snap.flows = Eigen::MatrixXd::Zero(num_sites, num_sites);
    for (std::size_t k = 0; k < model.sites.size(); ++k) best_snap.grid(model.sites[k]) = sol.x(model.grid_var(k));
    for (std::size_t e = 0; e < edges.size(); ++e)
      best_snap.flows(edges[e].first, edges[e].second) = sol.x(model.flow_var(e));

    // Drop every idle line and the single weakest carrying line.
    std::vector<DirectedEdge> kept;
    std::size_t weakest = edges.size();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const double f = sol.x(model.flow_var(e));
      if (f <= kZeroFlowW) continue;
      if (weakest == edges.size() || f < sol.x(model.flow_var(weakest))) weakest = e;
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (e == weakest || sol.x(model.flow_var(e)) <= kZeroFlowW) continue;
      kept.push_back(edges[e]);
    }
    edges = std::move(kept);
  }

  const double c1 = cost_c1(p1.assign.b, p1.grid, s);
  result.plan = EnergyPlan(num_sites);
  if (c1 < best) {
    result.fell_back = true;
    result.plan.grid = p1.grid;
    result.cost = c1;
    return result;
  }
  result.plan.grid = best_snap.grid;
  result.plan.flows = best_snap.flows;
  for (const auto& [t, n] : best_snap.edges) result.plan.edges(t, n) = true;
  result.cost = best;
  return result;
}

}  // namespace resplan
