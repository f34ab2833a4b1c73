#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "resplan/scenario.hpp"

namespace resplan {

/// Relative slack on every SINR >= threshold comparison.
inline constexpr double kSinrRelTol = 1e-9;
/// Distances below this are clamped before taking the logarithm.
inline constexpr double kMinDistanceM = 1.0;

/// TP-to-BS assignment `p` (M x N) and deployment vector `b` (N).
struct Assignment {
  BoolMatrix p;
  BoolVector b;

  Assignment() = default;
  Assignment(int num_tps, int num_sites)
      : p(BoolMatrix::Constant(num_tps, num_sites, false)), b(BoolVector::Constant(num_sites, false)) {}

  int num_tps() const { return static_cast<int>(p.rows()); }
  int num_sites() const { return static_cast<int>(p.cols()); }

  /// Number of TPs attached to site n.
  int load(int n) const { return static_cast<int>(p.col(n).count()); }
  /// Serving site of TP m, or -1.
  int serving_site(int m) const {
    for (int n = 0; n < num_sites(); ++n)
      if (p(m, n)) return n;
    return -1;
  }

  void attach(int m, int n) {
    p(m, n) = true;
    b(n) = true;
  }

  bool operator==(const Assignment& o) const { return p == o.p && b == o.b; }
};

/// Log-distance pathloss, distance in metres, constants in dB:
/// 10^(-(la + lb * log10(d / 1 km)) / 10).
template <typename Scalar>
Scalar pathloss_gain(Scalar distance_m, Scalar la_db, Scalar lb_db) {
  using std::log10;
  using std::max;
  using std::pow;
  const Scalar d = max(distance_m, Scalar(kMinDistanceM));
  return pow(Scalar(10), -(la_db + lb_db * log10(d / Scalar(1000))) / Scalar(10));
}

/// Fraction rho_t of site t's B resource blocks in use.
double load_ratio(const Assignment& a, int t, int capacity);

/// Downlink SINR of TP m on site n. Interference comes from the other
/// deployed sites, each scaled by its current load ratio.
double sinr(const Assignment& a, int m, int n, const Scenario& s);

/// gamma_m * (sum_{t != n} P_t h_{m,t} + delta_m), over all candidates.
double big_m(int m, int n, const Scenario& s);

/// The big-M linear form of SINR_{m,n} >= gamma_m * p_{m,n}.
bool qos_linearized_holds(const Assignment& a, int m, int n, const Scenario& s);

/// SINR_{m,n} >= gamma_m * p_{m,n}, evaluated directly.
bool qos_holds(const Assignment& a, int m, int n, const Scenario& s);

/// TPs that are unassigned or whose serving SINR is below target, ascending.
std::vector<int> infeasible_set(const Assignment& a, const Scenario& s);

/// Structural checks: p <= b, one BS per TP, column sums <= B.
bool respects_capacity(const Assignment& a, int capacity);
bool fully_assigned(const Assignment& a);
bool links_deployed(const Assignment& a);

}  // namespace resplan
