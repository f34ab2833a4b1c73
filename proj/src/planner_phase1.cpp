#include <algorithm>
#include <limits>
#include <random>

#include "resplan/cost_model.hpp"
#include "resplan/errors.hpp"
#include "resplan/planner.hpp"

namespace resplan {

namespace {

// Nearest site among `allowed`, ties to the lower id; -1 if none qualifies.
template <typename Pred>
int nearest_site(const Scenario& s, int m, Pred allowed) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int n = 0; n < s.num_sites(); ++n) {
    if (!allowed(n)) continue;
    const double d = s.tp_site_distance(m, n);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

void check_capacity(const Scenario& s) {
  if (static_cast<long>(s.num_tps()) > static_cast<long>(s.capacity) * s.num_sites())
    throw CapacityError("M exceeds B*N; not every TP can be served");
}

}  // namespace

Assignment initial_assignment(const Scenario& s) {
  check_capacity(s);
  Assignment a(s.num_tps(), s.num_sites());
  for (int m = 0; m < s.num_tps(); ++m) {
    const int n = nearest_site(s, m, [&](int k) { return a.load(k) < s.capacity; });
    if (n < 0) throw CapacityError("radio resources exhausted during initial assignment");
    a.attach(m, n);
  }
  return a;
}

Phase1Result run_phase1(const Scenario& s, std::uint64_t seed) {
  Phase1Result result;
  Assignment a = initial_assignment(s);
  auto finish = [&](const Assignment& accepted) {
    result.assign = accepted;
    result.grid = optimal_grid_powers(accepted, s);
    result.cost = cost_c1(accepted.b, result.grid, s);
  };

  if (!infeasible_set(a, s).empty()) {
    result.found = false;
    finish(a);
    return result;
  }

  result.found = true;
  Assignment snapshot = a;
  result.cost_history.push_back(cost_c1(a.b, optimal_grid_powers(a, s), s));
  std::mt19937_64 rng(seed);

  while (true) {
    std::vector<int> deployed = deployed_sites(a);
    if (deployed.empty()) break;
    ++result.outer_iterations;

    int min_load = std::numeric_limits<int>::max();
    for (int n : deployed) min_load = std::min(min_load, a.load(n));
    std::vector<int> least;
    for (int n : deployed)
      if (a.load(n) == min_load) least.push_back(n);
    const int removed = least[std::uniform_int_distribution<std::size_t>(0, least.size() - 1)(rng)];

    std::vector<int> detached;
    for (int m = 0; m < s.num_tps(); ++m)
      if (a.p(m, removed)) detached.push_back(m);
    a.p.col(removed).setConstant(false);
    a.b(removed) = false;

    bool all_placed = true;
    for (int m : detached) {
      const int n = nearest_site(s, m, [&](int k) {
        return k != removed && a.b(k) && a.load(k) < s.capacity &&
               surplus(a, k, s) > 0.0;
      });
      if (n < 0) {
        all_placed = false;
        continue;
      }
      a.attach(m, n);
    }

    if (all_placed && infeasible_set(a, s).empty()) {
      snapshot = a;
      result.cost_history.push_back(cost_c1(a.b, optimal_grid_powers(a, s), s));
    } else {
      a = snapshot;
      break;
    }
  }

  finish(snapshot);
  return result;
}

}  // namespace resplan
