#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "resplan/energy_model.hpp"
#include "resplan/lp_core.hpp"
#include "resplan/radio_model.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

/// Flow at or below this many watts counts as zero when pruning lines.
inline constexpr double kZeroFlowW = 1e-6;

// ---------------------------------------------------------------------------
// Phase 1: QoS-aware deployment without inter-site lines.
// ---------------------------------------------------------------------------

struct Phase1Result {
  bool found = false;
  Assignment assign;
  Eigen::VectorXd grid;  // closed-form grid draw per site
  double cost = 0.0;     // install + lifetime grid energy
  int outer_iterations = 0;
  /// Cost of the accepted configuration after each accepted removal,
  /// starting with the initial nearest-site configuration.
  std::vector<double> cost_history;
};

/// Every TP, in id order, joins the nearest site that still has a free
/// resource block (ties to the lower site id).
Assignment initial_assignment(const Scenario& s);

/// Greedy removal of least-loaded sites while the displaced TPs can be
/// re-homed on surplus sites and all QoS targets still hold.
Phase1Result run_phase1(const Scenario& s, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Phase 2: energy balancing over directed lines between deployed sites.
// ---------------------------------------------------------------------------

using DirectedEdge = std::pair<int, int>;  // (from, to)

/// LP over grid draws of the deployed sites and flows on `edges`.
/// Variable layout: grid draws first (in `sites` order), then one flow per edge.
struct BalancingLp {
  LpProblemd lp{0};
  std::vector<int> sites;
  std::vector<DirectedEdge> edges;

  Eigen::Index grid_var(std::size_t k) const { return static_cast<Eigen::Index>(k); }
  Eigen::Index flow_var(std::size_t e) const { return static_cast<Eigen::Index>(sites.size() + e); }
};

std::vector<int> deployed_sites(const Assignment& a);

/// Minimises lifetime grid plus line-loss energy cost subject to each deployed
/// site's firm supply covering its demand. Constant install and line costs are
/// left out of the objective.
BalancingLp build_balancing_lp(const Assignment& a, const std::vector<DirectedEdge>& edges, const Scenario& s);

struct Phase2Result {
  EnergyPlan plan;
  double cost = 0.0;
  int iterations = 0;
  int initial_edges = 0;
  bool fell_back = false;
};

/// Starts from the complete directed graph on the deployed sites and prunes
/// zero-flow lines plus the weakest positive line each round, keeping the
/// cheapest configuration seen. `seed` is unused; the procedure is deterministic.
Phase2Result run_phase2(const Phase1Result& p1, const Scenario& s, std::uint64_t seed = 0);

}  // namespace resplan
