#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resplan/cost_model.hpp"
#include "resplan/planner.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

/// Network variants compared by the sweeps.
enum class PlanConfig {
  kNoRes,      // no harvesters, cheaper sites, phase 1 only
  kResNoConn,  // harvesters, phase 1 only
  kResConn,    // harvesters, phase 1 then line balancing
};

const char* label(PlanConfig config);

/// splitmix64 over (base, stream, index): per-run seeds independent of run order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Sample mean and normal-approximation half-width z * s / sqrt(n).
/// Throws StatisticsError with fewer than two samples or confidence outside (0, 1).
std::pair<double, double> batch_mean_ci(const std::vector<double>& samples, double confidence);

// ---------------------------------------------------------------------------
// Single plan
// ---------------------------------------------------------------------------

struct PlanOptions {
  bool no_res = false;
  bool balancing = true;
  double no_res_install_cost = 55000.0;
  std::uint64_t seed = 1;
};

struct PlanReport {
  Scenario scenario;  // the instance actually planned (no-RES variant applied)
  Phase1Result phase1;
  std::optional<Phase2Result> phase2;
  EnergyPlan plan;
  CostBreakdown cost;
};

PlanReport plan_network(const Scenario& s, const PlanOptions& options);
std::string plan_to_json(const PlanReport& report);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepSpec {
  int runs = 100;
  double confidence = 0.95;
  std::uint64_t seed = 1;
  GenerationParams base;
  std::vector<int> capacities{12};
  std::vector<double> life_cycles{6, 8, 10, 12, 14, 16, 18, 20};  // lifecycle sweep x-axis
  int spread_steps = 10;                                          // spread sweep k = 0..steps-1
  double no_res_install_cost = 55000.0;
};

struct SweepRow {
  double x = 0.0;
  PlanConfig config = PlanConfig::kResConn;
  int b_cap = 0;
  int n_runs = 0;
  int n_infeasible = 0;
  double mean_cost = 0.0;
  double ci_half_width = 0.0;
};

/// Iteration-bound bookkeeping across every planner invocation of a sweep.
struct TerminationStats {
  long phase1_runs = 0;
  long phase1_violations = 0;  // outer iterations > N
  long phase2_runs = 0;
  long phase2_violations = 0;  // iterations > initial line count
  void merge(const TerminationStats& o);
};

struct SweepResult {
  std::vector<SweepRow> rows;
  TerminationStats termination;
  std::vector<std::string> notes;  // emitted as leading '#' lines in the CSV
};

/// Life-cycle sweep: every run draws a fresh instance (TP layout and per-site
/// harvest bounds) and reuses it across all x points.
SweepResult run_lifecycle_sweep(const SweepSpec& spec);

/// Harvest-spread sweep on one fixed TP layout: step k sets a = 100 - 10k W and
/// b = 190 W at every site (mean 145 - 5k W, spread 90 + 10k W).
SweepResult run_spread_sweep(const SweepSpec& spec);

const SweepRow* find_row(const SweepResult& r, double x, PlanConfig config, int b_cap);
std::string to_csv(const SweepResult& r);

// ---------------------------------------------------------------------------
// Heuristic vs exact optimum on small instances
// ---------------------------------------------------------------------------

struct OracleCompareSpec {
  int instances = 50;
  std::uint64_t seed = 1;
  GenerationParams base = [] {
    GenerationParams p;
    p.num_sites = 4;
    p.num_tps = 6;
    p.capacity = 3;
    return p;
  }();
};

struct OracleCompareRow {
  int instance = 0;
  std::uint64_t seed = 0;
  double exact_cost = 0.0;
  double heuristic_cost = 0.0;
  double gap = 0.0;  // (heuristic - exact) / exact
};

struct OracleCompareResult {
  std::vector<OracleCompareRow> rows;
  int skipped = 0;
  TerminationStats termination;
  double gap_min = 0.0, gap_median = 0.0, gap_p90 = 0.0, gap_max = 0.0;
};

OracleCompareResult run_oracle_compare(const OracleCompareSpec& spec);
std::string to_csv(const OracleCompareResult& r);

}  // namespace resplan
