#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resplan/energy_distribution.hpp"

namespace resplan {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
using BoolVector = Eigen::Matrix<bool, Eigen::Dynamic, 1>;

/// Candidate base-station site with its co-located harvester.
struct Site {
  int id = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // m
  double install_cost = 0.0;                           // EUR
  double tx_power_per_tp = 0.0;                        // W, per served TP
  double static_power = 0.0;                           // W
  double outage_bound = 0.05;                          // probability
  EnergyDistribution harvest;

  bool operator==(const Site&) const = default;
};

struct TestPoint {
  int id = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double noise_power = 0.0;  // W
  double sinr_min = 1.0;     // linear

  bool operator==(const TestPoint&) const = default;
};

/// Propagation constants of the log-distance model, both in dB.
struct PathlossParams {
  double la_db = 148.1;
  double lb_db = 37.6;

  bool operator==(const PathlossParams&) const = default;
};

/// Immutable planning instance: N candidate sites, M test points.
///
/// `gains` is M x N (linear). `conn_cost` and `loss_factor` are N x N and
/// indexed [from][to]; their diagonals are unused.
struct Scenario {
  double area_m = 3000.0;
  std::vector<Site> sites;
  std::vector<TestPoint> tps;
  Eigen::MatrixXd gains;
  Eigen::MatrixXd conn_cost;    // EUR per directed line
  Eigen::MatrixXd loss_factor;  // fraction lost on the line
  int capacity = 12;            // B
  double energy_price = 0.3;    // EUR/kWh
  double life_cycle_years = 10.0;
  double edge_unit_cost = 10.0;  // EUR/m, informational once conn_cost is filled
  PathlossParams pathloss;

  int num_sites() const { return static_cast<int>(sites.size()); }
  int num_tps() const { return static_cast<int>(tps.size()); }

  double tp_site_distance(int m, int n) const { return (tps[m].position - sites[n].position).norm(); }
  double site_distance(int t, int n) const { return (sites[t].position - sites[n].position).norm(); }

  bool operator==(const Scenario& other) const;
};

/// Throws ValidationError naming the first broken invariant.
void validate(const Scenario& s);

/// Harvest law drawn per site: a ~ U[a_lo, a_hi], b ~ U[b_lo, b_hi].
/// Equal bounds pin the value.
struct HarvestRanges {
  double a_lo = 0.0, a_hi = 100.0;
  double b_lo = 100.0, b_hi = 200.0;
};

/// Instance generator settings; defaults reproduce the reference table.
struct GenerationParams {
  double area_m = 3000.0;
  int num_sites = 9;
  int num_tps = 20;
  int capacity = 12;
  double install_cost = 60000.0;
  double tx_power = 20.0;
  double static_power = 19.0;
  double outage_bound = 0.05;
  double noise_dbm = -114.0;
  double sinr_min_db = 0.0;
  PathlossParams pathloss;
  double edge_unit_cost = 10.0;
  double loss_factor = 0.01;
  double energy_price = 0.3;
  double life_cycle_years = 10.0;
  HarvestRanges harvest;
};

/// Sites on a centred sqrt(N) x sqrt(N) grid, TPs i.i.d. uniform over the area.
/// Throws ConfigError when N is not a perfect square and CapacityError when M > B*N.
Scenario generate_scenario(const GenerationParams& params, std::uint64_t seed);

/// Recomputes `gains` from positions and the pathloss constants.
void fill_gains(Scenario& s);
/// Recomputes `conn_cost` as unit cost times site distance, with a uniform loss factor.
void fill_edges(Scenario& s, double unit_cost_eur_per_m, double loss_factor);

// Copy-and-modify helpers used by the experiment harness.
Scenario with_life_cycle(const Scenario& s, double years);
Scenario with_capacity(const Scenario& s, int capacity);
Scenario with_uniform_harvest(const Scenario& s, double a, double b);
/// Baseline without harvesters: zero harvest and the given install cost.
Scenario without_res(const Scenario& s, double install_cost);

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Text format (JSON). See README for the schema.
Scenario load_scenario(const std::string& text);
std::string save_scenario(const Scenario& s);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& s, const std::string& path);

}  // namespace resplan
