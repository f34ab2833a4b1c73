// Command-line front end: single plans, parameter sweeps and the oracle comparison.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "resplan/errors.hpp"
#include "resplan/experiments.hpp"
#include "resplan/scenario.hpp"

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning of harvester-powered cellular networks"};
  app.require_subcommand(1);

  // plan
  std::string scenario_path;
  std::string plan_out;
  resplan::PlanOptions plan_opts;
  bool no_balancing = false;
  auto* plan = app.add_subcommand("plan", "Plan one scenario file and print the result as JSON");
  plan->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  plan->add_option("--seed", plan_opts.seed, "Seed for random tie-breaking");
  plan->add_flag("--no-res", plan_opts.no_res, "Plan without harvesters (baseline install cost)");
  plan->add_option("--no-res-cost", plan_opts.no_res_install_cost, "Install cost of a site without harvester, EUR");
  plan->add_flag("--no-balancing", no_balancing, "Skip inter-site line selection");
  plan->add_option("--out", plan_out, "Write the plan here instead of stdout");

  // generate
  resplan::GenerationParams gen;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a random scenario file");
  generate->add_option("--seed", gen_seed);
  generate->add_option("--sites", gen.num_sites, "Candidate sites (perfect square)");
  generate->add_option("--tps", gen.num_tps, "Test points");
  generate->add_option("--b", gen.capacity, "TPs per base station");
  generate->add_option("--years", gen.life_cycle_years, "Network life cycle");
  generate->add_option("--out", gen_out);

  // sweep
  std::string sweep_kind;
  std::string sweep_out;
  resplan::SweepSpec sweep_spec;
  std::vector<int> sweep_b;
  auto* sweep = app.add_subcommand("sweep", "Cost sweeps over life cycle or harvest spread, as CSV");
  sweep->add_option("kind", sweep_kind, "lifecycle | spread")
      ->required()
      ->check(CLI::IsMember({"lifecycle", "spread"}));
  sweep->add_option("--runs", sweep_spec.runs, "Runs per point")->check(CLI::PositiveNumber);
  sweep->add_option("--confidence", sweep_spec.confidence, "Confidence level")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--seed", sweep_spec.seed, "Base seed");
  sweep->add_option("--b", sweep_b, "TPs per base station (repeatable)");
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  // compare-oracle
  resplan::OracleCompareSpec cmp_spec;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare-oracle", "Heuristic vs exhaustive optimum on small instances");
  compare->add_option("--instances", cmp_spec.instances)->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp_spec.seed);
  compare->add_option("--out", cmp_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      plan_opts.balancing = !no_balancing;
      const auto s = resplan::load_scenario_file(scenario_path);
      const auto report = resplan::plan_network(s, plan_opts);
      emit(resplan::plan_to_json(report), plan_out);
      if (!report.phase1.found) {
        std::cerr << "no feasible deployment: some TPs cannot meet their SINR target\n";
        return 2;
      }
    } else if (generate->parsed()) {
      emit(resplan::save_scenario(resplan::generate_scenario(gen, gen_seed)), gen_out);
    } else if (sweep->parsed()) {
      if (sweep_kind == "lifecycle") {
        sweep_spec.capacities = sweep_b.empty() ? std::vector<int>{12} : sweep_b;
        emit(resplan::to_csv(resplan::run_lifecycle_sweep(sweep_spec)), sweep_out);
      } else {
        sweep_spec.capacities = sweep_b.empty() ? std::vector<int>{6, 12} : sweep_b;
        emit(resplan::to_csv(resplan::run_spread_sweep(sweep_spec)), sweep_out);
      }
    } else if (compare->parsed()) {
      const auto result = resplan::run_oracle_compare(cmp_spec);
      emit(resplan::to_csv(result), cmp_out);
      std::cerr << "compared " << result.rows.size() << " instances, skipped " << result.skipped
                << ", median gap " << result.gap_median << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
