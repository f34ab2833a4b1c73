#include "resplan/radio_model.hpp"

namespace resplan {

double load_ratio(const Assignment& a, int t, int capacity) {
  return static_cast<double>(a.load(t)) / capacity;
}

namespace {

// sum_{t != n, b_t = 1} rho_t P_t h_{m,t} + delta_m
double interference_plus_noise(const Assignment& a, int m, int n, const Scenario& s) {
  double acc = 0.0;
  for (int t = 0; t < s.num_sites(); ++t) {
    if (t == n || !a.b(t)) continue;
    acc += load_ratio(a, t, s.capacity) * s.sites[t].tx_power_per_tp * s.gains(m, t);
  }
  return acc + s.tps[m].noise_power;
}

}  // namespace

double sinr(const Assignment& a, int m, int n, const Scenario& s) {
  return s.sites[n].tx_power_per_tp * s.gains(m, n) / interference_plus_noise(a, m, n, s);
}

double big_m(int m, int n, const Scenario& s) {
  double acc = 0.0;
  for (int t = 0; t < s.num_sites(); ++t)
    if (t != n) acc += s.sites[t].tx_power_per_tp * s.gains(m, t);
  return s.tps[m].sinr_min * (acc + s.tps[m].noise_power);
}

bool qos_linearized_holds(const Assignment& a, int m, int n, const Scenario& s) {
  const double p = a.p(m, n) ? 1.0 : 0.0;
  double load_weighted = 0.0;
  for (int t = 0; t < s.num_sites(); ++t) {
    if (t == n) continue;
    load_weighted += a.load(t) * s.sites[t].tx_power_per_tp * s.gains(m, t);
  }
  const double lhs = big_m(m, n, s) * (1.0 - p) + s.sites[n].tx_power_per_tp * s.gains(m, n) * p;
  const double rhs = s.tps[m].sinr_min * (load_weighted / s.capacity + s.tps[m].noise_power);
  return lhs >= rhs * (1.0 - kSinrRelTol);
}

bool qos_holds(const Assignment& a, int m, int n, const Scenario& s) {
  if (!a.p(m, n)) return true;
  return sinr(a, m, n, s) >= s.tps[m].sinr_min * (1.0 - kSinrRelTol);
}

std::vector<int> infeasible_set(const Assignment& a, const Scenario& s) {
  std::vector<int> omega;
  for (int m = 0; m < a.num_tps(); ++m) {
    const int n = a.serving_site(m);
    if (n < 0 || !qos_holds(a, m, n, s)) omega.push_back(m);
  }
  return omega;
}

bool respects_capacity(const Assignment& a, int capacity) {
  for (int n = 0; n < a.num_sites(); ++n)
    if (a.load(n) > capacity) return false;
  return true;
}

bool fully_assigned(const Assignment& a) {
  for (int m = 0; m < a.num_tps(); ++m)
    if (a.p.row(m).count() != 1) return false;
  return true;
}

bool links_deployed(const Assignment& a) {
  for (int n = 0; n < a.num_sites(); ++n)
    if (!a.b(n) && a.load(n) > 0) return false;
  return true;
}

}  // namespace resplan
