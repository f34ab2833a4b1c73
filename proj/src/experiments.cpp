#include "resplan/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "json.hpp"
#include "resplan/errors.hpp"
#include "resplan/exact_oracle.hpp"

namespace resplan {

const char* label(PlanConfig config) {
  switch (config) {
    case PlanConfig::kNoRes:
      return "no-res";
    case PlanConfig::kResNoConn:
      return "res-no-conn";
    case PlanConfig::kResConn:
      return "res-conn";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ index);
}

std::pair<double, double> batch_mean_ci(const std::vector<double>& samples, double confidence) {
  if (samples.size() < 2) throw StatisticsError("confidence interval needs at least two samples");
  if (!(confidence > 0.0 && confidence < 1.0)) throw StatisticsError("confidence level must lie in (0, 1)");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
  return {mean, z * sd / std::sqrt(n)};
}

void TerminationStats::merge(const TerminationStats& o) {
  phase1_runs += o.phase1_runs;
  phase1_violations += o.phase1_violations;
  phase2_runs += o.phase2_runs;
  phase2_violations += o.phase2_violations;
}

// ---------------------------------------------------------------------------

namespace {

struct Outcome {
  bool found = false;
  double cost = 0.0;
};

// Runs both phases as needed and records iteration bounds.
Outcome evaluate(const Scenario& s, PlanConfig config, std::uint64_t seed, double no_res_cost,
                 TerminationStats& stats) {
  const Scenario planned = config == PlanConfig::kNoRes ? without_res(s, no_res_cost) : s;
  const Phase1Result p1 = run_phase1(planned, seed);
  ++stats.phase1_runs;
  if (p1.outer_iterations > planned.num_sites()) ++stats.phase1_violations;
  if (!p1.found) return {};
  if (config != PlanConfig::kResConn) return {true, p1.cost};
  const Phase2Result p2 = run_phase2(p1, planned, seed);
  ++stats.phase2_runs;
  if (p2.iterations > p2.initial_edges) ++stats.phase2_violations;
  return {true, p2.cost};
}

SweepRow summarize(double x, PlanConfig config, int b_cap, const std::vector<Outcome>& outcomes, double confidence) {
  SweepRow row;
  row.x = x;
  row.config = config;
  row.b_cap = b_cap;
  row.n_runs = static_cast<int>(outcomes.size());
  std::vector<double> costs;
  for (const Outcome& o : outcomes) {
    if (o.found)
      costs.push_back(o.cost);
    else
      ++row.n_infeasible;
  }
  if (costs.size() >= 2) {
    std::tie(row.mean_cost, row.ci_half_width) = batch_mean_ci(costs, confidence);
  } else if (costs.size() == 1) {
    row.mean_cost = costs.front();
  } else {
    row.mean_cost = std::nan("");
  }
  return row;
}

constexpr int kMaxLayoutDraws = 1000;

void check_spec(const SweepSpec& spec) {
  if (spec.runs < 1) throw ConfigError("runs must be >= 1");
  if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
  if (spec.capacities.empty()) throw ConfigError("at least one capacity is required");
}

}  // namespace

SweepResult run_lifecycle_sweep(const SweepSpec& spec) {
  check_spec(spec);
  const std::vector<PlanConfig> configs{PlanConfig::kNoRes, PlanConfig::kResNoConn, PlanConfig::kResConn};
  const std::size_t n_x = spec.life_cycles.size();
  const std::size_t n_b = spec.capacities.size();

  // outcomes[x][b][config][run]
  std::vector<std::vector<std::vector<std::vector<Outcome>>>> outcomes(
      n_x, std::vector<std::vector<std::vector<Outcome>>>(n_b, std::vector<std::vector<Outcome>>(configs.size())));

  SweepResult result;
  for (int run = 0; run < spec.runs; ++run) {
    const std::uint64_t instance_seed = derive_seed(spec.seed, 0, static_cast<std::uint64_t>(run));
    const std::uint64_t planner_seed = derive_seed(spec.seed, 1, static_cast<std::uint64_t>(run));
    for (std::size_t bi = 0; bi < n_b; ++bi) {
      GenerationParams params = spec.base;
      params.capacity = spec.capacities[bi];
      const Scenario instance = generate_scenario(params, instance_seed);
      for (std::size_t xi = 0; xi < n_x; ++xi) {
        const Scenario s = with_life_cycle(instance, spec.life_cycles[xi]);
        for (std::size_t ci = 0; ci < configs.size(); ++ci)
          outcomes[xi][bi][ci].push_back(
              evaluate(s, configs[ci], planner_seed, spec.no_res_install_cost, result.termination));
      }
    }
  }

  for (std::size_t xi = 0; xi < n_x; ++xi)
    for (std::size_t ci = 0; ci < configs.size(); ++ci)
      for (std::size_t bi = 0; bi < n_b; ++bi)
        result.rows.push_back(
            summarize(spec.life_cycles[xi], configs[ci], spec.capacities[bi], outcomes[xi][bi][ci], spec.confidence));

  result.notes.push_back("sweep=lifecycle x=life_cycle_years runs=" + std::to_string(spec.runs) +
                         " seed=" + std::to_string(spec.seed));
  result.notes.push_back("harvest a_n~U[" + std::to_string(spec.base.harvest.a_lo) + "," +
                         std::to_string(spec.base.harvest.a_hi) + "] W, b_n~U[" +
                         std::to_string(spec.base.harvest.b_lo) + "," + std::to_string(spec.base.harvest.b_hi) +
                         "] W, redrawn per run");
  return result;
}

SweepResult run_spread_sweep(const SweepSpec& spec) {
  check_spec(spec);
  const std::vector<PlanConfig> configs{PlanConfig::kResNoConn, PlanConfig::kResConn};
  const std::size_t n_b = spec.capacities.size();

  // One TP layout for the whole sweep; capacity only changes B. Layouts on which
  // some B admits no QoS-feasible nearest-site assignment are redrawn.
  GenerationParams params = spec.base;
  params.capacity = *std::max_element(spec.capacities.begin(), spec.capacities.end());
  Scenario layout;
  int attempt = 0;
  for (;; ++attempt) {
    if (attempt == kMaxLayoutDraws) throw ConfigError("spread sweep: no QoS-feasible TP layout found");
    layout = generate_scenario(params, derive_seed(spec.seed, 0, static_cast<std::uint64_t>(attempt)));
    const bool feasible = std::all_of(spec.capacities.begin(), spec.capacities.end(), [&](int b) {
      const Scenario s = with_capacity(layout, b);
      return infeasible_set(initial_assignment(s), s).empty();
    });
    if (feasible) break;
  }

  SweepResult result;
  for (int k = 0; k < spec.spread_steps; ++k) {
    const double a = 100.0 - 10.0 * k;
    const double b = 190.0;
    const Scenario harvested = with_uniform_harvest(layout, a, b);
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      for (std::size_t bi = 0; bi < n_b; ++bi) {
        const Scenario s = with_capacity(harvested, spec.capacities[bi]);
        validate(s);
        if (static_cast<long>(s.num_tps()) > static_cast<long>(s.capacity) * s.num_sites())
          throw CapacityError("spread sweep: M exceeds B*N for B = " + std::to_string(s.capacity));
        std::vector<Outcome> outcomes;
        for (int run = 0; run < spec.runs; ++run) {
          const std::uint64_t planner_seed = derive_seed(spec.seed, 1, static_cast<std::uint64_t>(run));
          outcomes.push_back(evaluate(s, configs[ci], planner_seed, spec.no_res_install_cost, result.termination));
        }
        result.rows.push_back(summarize(b - a, configs[ci], spec.capacities[bi], outcomes, spec.confidence));
      }
    }
  }

  result.notes.push_back("sweep=spread x=harvest_spread_w (max b_n - min a_n) runs=" + std::to_string(spec.runs) +
                         " seed=" + std::to_string(spec.seed) + " life_cycle_years=" +
                         std::to_string(spec.base.life_cycle_years) + " layout_draws=" + std::to_string(attempt + 1));
  result.notes.push_back("harvest schedule: step k uses a_n = 100-10k W, b_n = 190 W at every site "
                         "(mean 145-5k W, spread 90+10k W); one fixed TP layout");
  return result;
}

const SweepRow* find_row(const SweepResult& r, double x, PlanConfig config, int b_cap) {
  for (const SweepRow& row : r.rows)
    if (row.x == x && row.config == config && row.b_cap == b_cap) return &row;
  return nullptr;
}

namespace {

std::string fmt_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

std::string to_csv(const SweepResult& r) {
  std::ostringstream out;
  for (const std::string& note : r.notes) out << "# " << note << "\n";
  out << "sweep_x,config,b_cap,n_runs,n_infeasible,mean_cost_eur,ci_half_width_eur\n";
  for (const SweepRow& row : r.rows) {
    out << fmt_double(row.x, 3) << ',' << label(row.config) << ',' << row.b_cap << ',' << row.n_runs << ','
        << row.n_infeasible << ',' << fmt_double(row.mean_cost, 4) << ',' << fmt_double(row.ci_half_width, 4)
        << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------

OracleCompareResult run_oracle_compare(const OracleCompareSpec& spec) {
  if (spec.instances < 1) throw ConfigError("instances must be >= 1");
  OracleCompareResult result;
  std::vector<double> gaps;
  for (int i = 0; i < spec.instances; ++i) {
    const std::uint64_t seed = derive_seed(spec.seed, 2, static_cast<std::uint64_t>(i));
    const Scenario s = generate_scenario(spec.base, seed);
    const Outcome heuristic =
        evaluate(s, PlanConfig::kResConn, derive_seed(spec.seed, 3, static_cast<std::uint64_t>(i)), 0.0,
                 result.termination);
    const ExactResult exact = solve_exact(s);
    if (!heuristic.found || !exact.feasible) {
      ++result.skipped;
      continue;
    }
    OracleCompareRow row;
    row.instance = i;
    row.seed = seed;
    row.exact_cost = exact.best_cost;
    row.heuristic_cost = heuristic.cost;
    row.gap = (heuristic.cost - exact.best_cost) / exact.best_cost;
    result.rows.push_back(row);
    gaps.push_back(row.gap);
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    auto at = [&](double q) {
      // Linear interpolation between order statistics.
      const double pos = q * static_cast<double>(gaps.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
      const std::size_t hi = std::min(lo + 1, gaps.size() - 1);
      return gaps[lo] + (pos - static_cast<double>(lo)) * (gaps[hi] - gaps[lo]);
    };
    result.gap_min = gaps.front();
    result.gap_median = at(0.5);
    result.gap_p90 = at(0.9);
    result.gap_max = gaps.back();
  }
  return result;
}

std::string to_csv(const OracleCompareResult& r) {
  std::ostringstream out;
  out << "# compared=" << r.rows.size() << " skipped=" << r.skipped << " gap_min=" << fmt_double(r.gap_min, 6)
      << " gap_median=" << fmt_double(r.gap_median, 6) << " gap_p90=" << fmt_double(r.gap_p90, 6)
      << " gap_max=" << fmt_double(r.gap_max, 6) << "\n";
  out << "instance,seed,exact_cost_eur,heuristic_cost_eur,relative_gap\n";
  for (const OracleCompareRow& row : r.rows) {
    out << row.instance << ',' << row.seed << ',' << fmt_double(row.exact_cost, 4) << ','
        << fmt_double(row.heuristic_cost, 4) << ',' << fmt_double(row.gap, 6) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------

PlanReport plan_network(const Scenario& s, const PlanOptions& options) {
  PlanReport report;
  report.scenario = options.no_res ? without_res(s, options.no_res_install_cost) : s;
  report.phase1 = run_phase1(report.scenario, options.seed);
  report.plan = EnergyPlan(report.scenario.num_sites());
  if (report.phase1.found) {
    report.plan.grid = report.phase1.grid;
    if (options.balancing && !options.no_res) {
      report.phase2 = run_phase2(report.phase1, report.scenario, options.seed);
      report.plan = report.phase2->plan;
    }
  }
  report.cost = objective_cost(report.phase1.assign, report.plan, report.scenario);
  return report;
}

std::string plan_to_json(const PlanReport& r) {
  using nlohmann::json;
  const Scenario& s = r.scenario;
  json doc;
  doc["found"] = r.phase1.found;
  doc["phase1_outer_iterations"] = r.phase1.outer_iterations;
  if (r.phase2) {
    doc["phase2_iterations"] = r.phase2->iterations;
    doc["phase2_fell_back"] = r.phase2->fell_back;
  }

  json sites = json::array();
  for (int n = 0; n < s.num_sites(); ++n) {
    if (!r.phase1.assign.b(n)) continue;
    json tps = json::array();
    for (int m = 0; m < s.num_tps(); ++m)
      if (r.phase1.assign.p(m, n)) tps.push_back(m);
    sites.push_back({{"site", n},
                     {"x_m", s.sites[n].position.x()},
                     {"y_m", s.sites[n].position.y()},
                     {"tps", std::move(tps)},
                     {"surplus_w", surplus(r.phase1.assign, n, s)},
                     {"grid_w", r.plan.grid(n)}});
  }
  doc["deployed_sites"] = std::move(sites);

  json assignment = json::array();
  for (int m = 0; m < s.num_tps(); ++m) {
    const int n = r.phase1.assign.serving_site(m);
    json entry = {{"tp", m}, {"site", n}};
    if (n >= 0) entry["sinr_db"] = linear_to_db(sinr(r.phase1.assign, m, n, s));
    assignment.push_back(std::move(entry));
  }
  doc["assignment"] = std::move(assignment);

  json edges = json::array();
  for (int t = 0; t < s.num_sites(); ++t)
    for (int n = 0; n < s.num_sites(); ++n)
      if (t != n && r.plan.edges(t, n)) edges.push_back({{"from", t}, {"to", n}, {"flow_w", r.plan.flows(t, n)}});
  doc["edges"] = std::move(edges);

  doc["cost_eur"] = {{"install", r.cost.install},
                     {"connection", r.cost.connection},
                     {"grid_energy", r.cost.grid_energy},
                     {"loss_energy", r.cost.loss_energy},
                     {"total", r.cost.total}};
  return doc.dump(2) + "\n";
}

}  // namespace resplan
