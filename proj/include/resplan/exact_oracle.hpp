#pragma once

#include <cstdint>

#include "resplan/energy_model.hpp"
#include "resplan/radio_model.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

/// Largest instance the exhaustive solver accepts.
struct OracleLimits {
  int max_sites = 4;
  int max_tps = 6;
  int max_capacity = 3;
};

struct ExactResult {
  bool feasible = false;
  double best_cost = 0.0;
  Assignment best_assign;
  EnergyPlan best_plan;
  /// (deployment, assignment, line set) combinations examined. Deployments whose
  /// install cost alone reaches the incumbent are skipped without counting.
  std::uint64_t enumerated = 0;
};

/// Exhaustive minimum of the full planning objective. Every deployment vector,
/// every capacity-respecting single-homing assignment passing the linearised
/// QoS test, and every directed line set over the deployed sites is covered;
/// grid draws and flows come from the balancing LP. Line sets whose connection
/// cost alone cannot beat the incumbent are counted but not solved.
///
/// Throws SizeError beyond `limits`. `feasible == false` when nothing satisfies
/// the constraints.
ExactResult solve_exact(const Scenario& s, const OracleLimits& limits = {});

}  // namespace resplan
