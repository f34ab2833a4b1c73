// Acceptance checks for the planning library. One PASS/FAIL line per criterion;
// exit status is non-zero when any criterion fails.
//
// Usage: acceptance <path-to-resplan-cli> [scratch-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "resplan/cost_model.hpp"
#include "resplan/energy_model.hpp"
#include "resplan/experiments.hpp"
#include "resplan/lp_core.hpp"
#include "resplan/planner.hpp"
#include "resplan/radio_model.hpp"
#include "resplan/scenario.hpp"

using namespace resplan;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Sweep results are shared between the trend and termination criteria.
struct SharedRuns {
  OracleCompareResult oracle;
  SweepResult lifecycle;
  SweepResult spread;
};

// ---------------------------------------------------------------------------

Verdict linearization_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> small(1, 3);
  std::uniform_real_distribution<double> coord(0.0, 1500.0);
  std::uniform_real_distribution<double> gamma_db(-10.0, 30.0);
  long checked = 0, mismatches = 0, served_true = 0, served_false = 0;

  for (int inst = 0; inst < 200; ++inst) {
    GenerationParams gp;
    Scenario s;
    const int n_sites = small(rng), n_tps = small(rng);
    s.capacity = small(rng);
    for (int n = 0; n < n_sites; ++n) {
      Site site;
      site.id = n;
      site.position = {coord(rng), coord(rng)};
      site.install_cost = gp.install_cost;
      site.tx_power_per_tp = gp.tx_power;
      site.static_power = gp.static_power;
      site.outage_bound = gp.outage_bound;
      site.harvest = EnergyDistribution::uniform(50, 150);
      s.sites.push_back(site);
    }
    for (int m = 0; m < n_tps; ++m) {
      TestPoint tp;
      tp.id = m;
      tp.position = {coord(rng), coord(rng)};
      tp.noise_power = dbm_to_watt(gp.noise_dbm);
      tp.sinr_min = db_to_linear(gamma_db(rng));
      s.tps.push_back(tp);
    }
    fill_gains(s);
    fill_edges(s, gp.edge_unit_cost, gp.loss_factor);

    const int bits = n_sites * n_tps;
    for (int mask = 0; mask < (1 << bits); ++mask) {
      Assignment a(n_tps, n_sites);
      for (int k = 0; k < bits; ++k)
        if (mask & (1 << k)) a.attach(k / n_sites, k % n_sites);
      if (!respects_capacity(a, s.capacity)) continue;
      for (int m = 0; m < n_tps; ++m) {
        for (int n = 0; n < n_sites; ++n) {
          const bool direct = !a.p(m, n) || sinr(a, m, n, s) >= s.tps[m].sinr_min * (1.0 - kSinrRelTol);
          const bool linear = qos_linearized_holds(a, m, n, s);
          ++checked;
          if (direct != linear) ++mismatches;
          if (a.p(m, n)) ++(direct ? served_true : served_false);
        }
      }
    }
  }
  return {mismatches == 0 && served_true > 0 && served_false > 0,
          std::to_string(checked) + " (m,n,p) triples, " + std::to_string(mismatches) + " mismatches; served pairs " +
              std::to_string(served_true) + " meeting / " + std::to_string(served_false) + " missing target"};
}

// ---------------------------------------------------------------------------

Verdict closed_form_grid() {
  int outputs = 0, perturbed = 0, failures = 0;
  double worst_lhs = -1e300;
  for (std::uint64_t seed = 1; outputs < 100 && seed < 1000; ++seed) {
    const Scenario s = generate_scenario(GenerationParams{}, derive_seed(11, 0, seed));
    const Phase1Result r = run_phase1(s, derive_seed(11, 1, seed));
    if (!r.found) continue;
    ++outputs;
    EnergyPlan plan(s.num_sites());
    plan.grid = r.grid;
    for (int n = 0; n < s.num_sites(); ++n) {
      const double lhs = outage_lhs(r.assign, plan, n, s);
      worst_lhs = std::max(worst_lhs, lhs);
      if (lhs > kOutageTolW) ++failures;
      if (!r.assign.b(n) || surplus(r.assign, n, s) >= 0.0) continue;
      EnergyPlan lower = plan;
      lower.grid(n) -= 1e-3;
      ++perturbed;
      if (outage_constraint_satisfied(r.assign, lower, n, s)) ++failures;
    }
  }
  return {outputs == 100 && perturbed > 0 && failures == 0,
          std::to_string(outputs) + " phase-1 outputs, " + std::to_string(perturbed) +
              " deficit sites perturbed by -1e-3 W, " + std::to_string(failures) + " failures, max LHS " +
              fmt("%.3e", worst_lhs) + " W"};
}

// ---------------------------------------------------------------------------

Verdict chance_constraint() {
  constexpr double kMargin = 0.007;
  constexpr int kDraws = 100000;
  int plans = 0, checked = 0, violations = 0;
  double worst_excess = -1.0;
  for (std::uint64_t i = 0; plans < 20 && i < 1000; ++i) {
    const Scenario s = generate_scenario(GenerationParams{}, derive_seed(13, 0, i));
    PlanOptions opt;
    opt.seed = derive_seed(13, 1, i);
    const PlanReport rep = plan_network(s, opt);
    if (!rep.phase1.found) continue;
    ++plans;
    for (int n = 0; n < s.num_sites(); ++n) {
      if (!rep.phase1.assign.b(n)) continue;
      const double p = simulate_outage(rep.phase1.assign, rep.plan, n, s, kDraws, derive_seed(13, 2, i * 64 + n));
      const double excess = p - s.sites[n].outage_bound;
      worst_excess = std::max(worst_excess, excess);
      ++checked;
      if (excess > kMargin) ++violations;
    }
  }
  return {plans == 20 && violations == 0,
          std::to_string(plans) + " plans, " + std::to_string(checked) + " deployed sites x 1e5 draws, worst outage - phi = " +
              fmt("%+.4f", worst_excess) + " (limit +0.007)"};
}

// ---------------------------------------------------------------------------

Verdict oracle_gap(const SharedRuns& runs) {
  const OracleCompareResult& r = runs.oracle;
  int dominance_violations = 0;
  for (const auto& row : r.rows)
    if (row.heuristic_cost < row.exact_cost * (1.0 - 1e-9)) ++dominance_violations;
  const bool pass = dominance_violations == 0 && !r.rows.empty() && r.gap_median <= 0.20;
  return {pass, std::to_string(r.rows.size()) + " compared, " + std::to_string(r.skipped) +
                    " skipped (no feasible plan), dominance violations " + std::to_string(dominance_violations) +
                    ", gap median " + fmt("%.4f", r.gap_median) + " (limit 0.20), p90 " + fmt("%.4f", r.gap_p90) +
                    ", max " + fmt("%.4f", r.gap_max)};
}

// ---------------------------------------------------------------------------

Verdict lifecycle_trends(const SharedRuns& runs, std::string& sub) {
  const SweepResult& r = runs.lifecycle;
  const std::vector<double> years{6, 8, 10, 12, 14, 16, 18, 20};
  std::ostringstream out;

  // (a) strictly increasing no-RES cost
  bool a_ok = true;
  double prev = -1.0;
  for (double t : years) {
    const SweepRow* row = find_row(r, t, PlanConfig::kNoRes, 12);
    if (!row || row->mean_cost <= prev) a_ok = false;
    if (row) prev = row->mean_cost;
  }

  // (b) res-conn spread below 2 %
  double lo = 1e300, hi = -1e300;
  for (double t : years) {
    const SweepRow* row = find_row(r, t, PlanConfig::kResConn, 12);
    if (!row) continue;
    lo = std::min(lo, row->mean_cost);
    hi = std::max(hi, row->mean_cost);
  }
  const double variation = (hi - lo) / lo;
  const bool b_ok = variation < 0.02;

  // (c) ordering and CI separation at T = 20
  const SweepRow* conn = find_row(r, 20, PlanConfig::kResConn, 12);
  const SweepRow* noconn = find_row(r, 20, PlanConfig::kResNoConn, 12);
  const SweepRow* nores = find_row(r, 20, PlanConfig::kNoRes, 12);
  bool order_ok = false, sep_ok = false;
  if (conn && noconn && nores) {
    order_ok = conn->mean_cost <= noconn->mean_cost && noconn->mean_cost <= nores->mean_cost;
    sep_ok = conn->mean_cost + conn->ci_half_width < nores->mean_cost - nores->ci_half_width;
  }
  const bool c_ok = order_ok && sep_ok;

  out << "(a) " << (a_ok ? "PASS" : "FAIL") << " no-res T=6 " << fmt("%.0f", find_row(r, 6, PlanConfig::kNoRes, 12)->mean_cost)
      << " -> T=20 " << fmt("%.0f", nores->mean_cost) << "; (b) " << (b_ok ? "PASS" : "FAIL")
      << " res-conn variation " << fmt("%.4f", variation) << " (limit 0.02); (c) " << (c_ok ? "PASS" : "FAIL")
      << " ordering " << (order_ok ? "ok" : "violated") << " [res-conn " << fmt("%.0f", conn->mean_cost) << " +/- "
      << fmt("%.0f", conn->ci_half_width) << ", res-no-conn " << fmt("%.0f", noconn->mean_cost) << ", no-res "
      << fmt("%.0f", nores->mean_cost) << " +/- " << fmt("%.0f", nores->ci_half_width) << "], CI separation "
      << (sep_ok ? "ok" : "not achieved");
  sub = out.str();
  return {a_ok && b_ok && c_ok, ""};
}

// ---------------------------------------------------------------------------

Verdict spread_trends(const SharedRuns& runs) {
  const SweepResult& r = runs.spread;
  const double x0 = 90.0, x9 = 180.0;
  const PlanConfig configs[] = {PlanConfig::kResNoConn, PlanConfig::kResConn};
  const SweepRow* best = find_row(r, x9, PlanConfig::kResConn, 12);
  bool lowest = best != nullptr;
  bool rising = true;
  std::ostringstream out;
  for (PlanConfig c : configs) {
    for (int b : {6, 12}) {
      const SweepRow* first = find_row(r, x0, c, b);
      const SweepRow* last = find_row(r, x9, c, b);
      if (!first || !last) {
        rising = lowest = false;
        continue;
      }
      if (!(last->mean_cost > first->mean_cost)) rising = false;
      if (best && best->mean_cost > last->mean_cost) lowest = false;
      out << label(c) << "/B=" << b << " " << fmt("%.0f", first->mean_cost) << "->" << fmt("%.0f", last->mean_cost)
          << "; ";
    }
  }
  out << "res-conn/B=12 lowest at k=9: " << (lowest ? "yes" : "no") << ", all rise k=0->9: " << (rising ? "yes" : "no");
  return {lowest && rising, out.str()};
}

// ---------------------------------------------------------------------------

Verdict termination(const SharedRuns& runs) {
  TerminationStats t;
  t.merge(runs.oracle.termination);
  t.merge(runs.lifecycle.termination);
  t.merge(runs.spread.termination);
  return {t.phase1_runs > 0 && t.phase2_runs > 0 && t.phase1_violations == 0 && t.phase2_violations == 0,
          std::to_string(t.phase1_runs) + " phase-1 runs (" + std::to_string(t.phase1_violations) +
              " over N), " + std::to_string(t.phase2_runs) + " phase-2 runs (" +
              std::to_string(t.phase2_violations) + " over |E|)"};
}

// ---------------------------------------------------------------------------

struct GoldenLp {
  std::string name;
  LpProblemd problem;
  LpStatus status;
  double objective;
};

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

std::vector<GoldenLp> golden_suite() {
  std::vector<GoldenLp> suite;
  auto add = [&](std::string name, int n, std::function<void(LpProblemd&)> build, LpStatus st, double obj) {
    LpProblemd p(n);
    build(p);
    suite.push_back({std::move(name), std::move(p), st, obj});
  };
  const auto le = Relation::kLessEqual, ge = Relation::kGreaterEqual, eq = Relation::kEqual;
  const double lt = 26.28, loss = 0.01;

  add("single bound", 1, [&](auto& p) { p.set_objective(v({1})); p.add_constraint(v({1}), ge, 5); },
      LpStatus::kOptimal, 5.0);
  add("lossy transfer", 2, [&](auto& p) {
        p.set_objective(v({1, 0.2628 * loss}));
        p.add_constraint(v({-1, -(1 - loss)}), le, -50);
      }, LpStatus::kOptimal, 0.2628 * loss * 50.0 / 0.99);
  add("contradictory bounds", 1, [&](auto& p) { p.add_constraint(v({1}), le, 1); p.add_constraint(v({1}), ge, 2); },
      LpStatus::kInfeasible, 0.0);
  add("unbounded ray", 2, [&](auto& p) { p.set_objective(v({-1, 0})); p.add_constraint(v({1, -1}), le, 1); },
      LpStatus::kUnbounded, 0.0);
  add("two-row maximisation", 2, [&](auto& p) {
        p.set_objective(v({-1, -1}));
        p.add_constraint(v({1, 2}), le, 4);
        p.add_constraint(v({3, 1}), le, 6);
      }, LpStatus::kOptimal, -2.8);
  add("equality with shifted bounds", 2, [&](auto& p) {
        p.set_objective(v({1, 2}));
        p.add_constraint(v({1, 1}), eq, 4);
        p.set_lower_bound(0, 1.5);
        p.set_lower_bound(1, -1);
      }, LpStatus::kOptimal, 3.0);
  add("redundant equalities", 2, [&](auto& p) {
        p.set_objective(v({1, 1}));
        p.add_constraint(v({1, 2}), eq, 4);
        p.add_constraint(v({2, 4}), eq, 8);
      }, LpStatus::kOptimal, 2.0);
  add("cycling-prone degenerate", 4, [&](auto& p) {
        p.set_objective(v({-0.75, 150, -0.02, 6}));
        p.add_constraint(v({0.25, -60, -0.04, 9}), le, 0);
        p.add_constraint(v({0.5, -90, -0.02, 3}), le, 0);
        p.add_constraint(v({0, 0, 1, 0}), le, 1);
      }, LpStatus::kOptimal, -0.05);
  add("covering", 2, [&](auto& p) {
        p.set_objective(v({2, 3}));
        p.add_constraint(v({1, 1}), ge, 4);
        p.add_constraint(v({1, 3}), ge, 6);
      }, LpStatus::kOptimal, 9.0);
  add("klee-minty 3d", 3, [&](auto& p) {
        p.set_objective(v({-4, -2, -1}));
        p.add_constraint(v({1, 0, 0}), le, 5);
        p.add_constraint(v({4, 1, 0}), le, 25);
        p.add_constraint(v({8, 4, 1}), le, 125);
      }, LpStatus::kOptimal, -125.0);
  add("transportation 2x2", 4, [&](auto& p) {
        p.set_objective(v({1, 3, 2, 1}));
        p.add_constraint(v({1, 1, 0, 0}), eq, 20);
        p.add_constraint(v({0, 0, 1, 1}), eq, 30);
        p.add_constraint(v({1, 0, 1, 0}), eq, 25);
        p.add_constraint(v({0, 1, 0, 1}), eq, 25);
      }, LpStatus::kOptimal, 55.0);
  add("negative lower bound", 1, [&](auto& p) {
        p.set_objective(v({1}));
        p.set_lower_bound(0, -10);
        p.add_constraint(v({1}), ge, -3);
      }, LpStatus::kOptimal, -3.0);
  add("difference with negative bounds", 2, [&](auto& p) {
        p.set_objective(v({1, 1}));
        p.set_lower_bound(0, -5);
        p.set_lower_bound(1, -5);
        p.add_constraint(v({1, -1}), eq, 2);
      }, LpStatus::kOptimal, -8.0);
  add("inconsistent equalities", 2, [&](auto& p) {
        p.add_constraint(v({1, 1}), eq, 1);
        p.add_constraint(v({1, 1}), eq, 2);
      }, LpStatus::kInfeasible, 0.0);
  add("negative cap on nonnegatives", 2, [&](auto& p) { p.add_constraint(v({1, 1}), le, -1); },
      LpStatus::kInfeasible, 0.0);
  add("unbounded along equality", 2, [&](auto& p) {
        p.set_objective(v({-1, 0}));
        p.add_constraint(v({1, -1}), eq, 0);
      }, LpStatus::kUnbounded, 0.0);
  add("degenerate corner", 2, [&](auto& p) {
        p.set_objective(v({-1, -1}));
        p.add_constraint(v({1, 0}), le, 1);
        p.add_constraint(v({0, 1}), le, 1);
        p.add_constraint(v({1, 1}), le, 2);
      }, LpStatus::kOptimal, -2.0);
  add("zero objective", 2, [&](auto& p) { p.add_constraint(v({1, 1}), ge, 1); }, LpStatus::kOptimal, 0.0);
  // Grids g0..g2 then flows 1->0, 2->0; surpluses -60, 30, 40.
  add("three-site balancing", 5, [&](auto& p) {
        p.set_objective(v({lt, lt, lt, lt * loss, lt * loss}));
        p.add_constraint(v({-1, 0, 0, -(1 - loss), -(1 - loss)}), le, -60);
        p.add_constraint(v({0, -1, 0, 1, 0}), le, 30);
        p.add_constraint(v({0, 0, -1, 0, 1}), le, 40);
      }, LpStatus::kOptimal, lt * loss * 60.0 / 0.99);
  // Grids g0, g1 then flow 1->0; the exporter only has 30 W to spare.
  add("exporter-limited balancing", 3, [&](auto& p) {
        p.set_objective(v({lt, lt, lt * loss}));
        p.add_constraint(v({-1, 0, -(1 - loss)}), le, -100);
        p.add_constraint(v({0, -1, 1}), le, 30);
      }, LpStatus::kOptimal, lt * (100.0 - 0.99 * 30.0) + lt * loss * 30.0);
  return suite;
}

Verdict lp_golden() {
  const auto suite = golden_suite();
  int wrong = 0;
  std::string first_wrong;
  double worst = 0.0;
  for (const auto& g : suite) {
    const auto sol = solve_lp(g.problem);
    bool ok = sol.status == g.status;
    if (ok && g.status == LpStatus::kOptimal) {
      const double err = std::abs(sol.objective_value - g.objective);
      worst = std::max(worst, err);
      ok = err <= 1e-6 && max_violation(g.problem, sol.x) <= 1e-7;
    }
    if (!ok) {
      ++wrong;
      if (first_wrong.empty()) first_wrong = g.name;
    }
  }
  // The balancing LP must also land on the stated vertex.
  const auto sol = solve_lp(suite[1].problem);
  const bool vertex = sol.status == LpStatus::kOptimal && std::abs(sol.x(0)) <= 1e-6 &&
                      std::abs(sol.x(1) - 50.0 / 0.99) <= 1e-6;
  return {suite.size() == 20 && wrong == 0 && vertex,
          std::to_string(suite.size()) + " LPs, " + std::to_string(wrong) + " wrong" +
              (first_wrong.empty() ? "" : " (first: " + first_wrong + ")") + ", max objective error " +
              fmt("%.2e", worst) + ", balancing vertex " + (vertex ? "ok" : "wrong")};
}

// ---------------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Verdict cli_determinism(const std::string& cli, const std::string& dir) {
  if (cli.empty()) return {false, "no CLI path given"};
  const std::string a = dir + "/acceptance_sweep_a.csv", b = dir + "/acceptance_sweep_b.csv";
  std::remove(a.c_str());
  std::remove(b.c_str());
  const std::string base = "\"" + cli + "\" sweep lifecycle --seed 1 --out ";
  const int ra = std::system((base + "\"" + a + "\"").c_str());
  const int rb = std::system((base + "\"" + b + "\"").c_str());
  const std::string ca = slurp(a), cb = slurp(b);
  const bool pass = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
  return {pass, "two `sweep lifecycle --seed 1` runs, " + std::to_string(ca.size()) + " bytes each, " +
                    (ca == cb ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string dir = argc > 2 ? argv[2] : ".";
  int failed = 0;

  auto report = [&](int id, const Verdict& verdict, double seconds) {
    std::cout << "criterion " << id << " [PRIMARY] " << (verdict.pass ? "PASS" : "FAIL") << ": " << verdict.detail
              << " (" << fmt("%.2f", seconds) << " s)" << std::endl;
    if (!verdict.pass) ++failed;
  };
  auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto verdict = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::make_pair(verdict, s);
  };

  {
    auto [v, s] = timed(linearization_equivalence);
    report(1, v, s);
  }
  {
    auto [v, s] = timed(closed_form_grid);
    report(2, v, s);
  }
  {
    auto [v, s] = timed(chance_constraint);
    report(3, v, s);
  }

  SharedRuns runs;
  double oracle_s = 0, lifecycle_s = 0, spread_s = 0;
  std::tie(runs.oracle, oracle_s) = timed([] { return run_oracle_compare(OracleCompareSpec{}); });
  std::tie(runs.lifecycle, lifecycle_s) = timed([] { return run_lifecycle_sweep(SweepSpec{}); });
  std::tie(runs.spread, spread_s) = timed([] {
    SweepSpec spec;
    spec.capacities = {6, 12};
    return run_spread_sweep(spec);
  });

  report(4, oracle_gap(runs), oracle_s);
  {
    std::string sub;
    Verdict v = lifecycle_trends(runs, sub);
    v.detail = sub;
    report(5, v, lifecycle_s);
  }
  report(6, spread_trends(runs), spread_s);
  report(7, termination(runs), 0.0);
  {
    auto [v, s] = timed(lp_golden);
    report(8, v, s);
  }
  {
    auto [v, s] = timed([&] { return cli_determinism(cli, dir); });
    report(9, v, s);
  }

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
