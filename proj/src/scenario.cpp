#include "resplan/scenario.hpp"

#include <cmath>
#include <random>
#include <string>

#include "resplan/errors.hpp"
#include "resplan/radio_model.hpp"

namespace resplan {

bool Scenario::operator==(const Scenario& o) const {
  auto same = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
  };
  return area_m == o.area_m && sites == o.sites && tps == o.tps && same(gains, o.gains) &&
         same(conn_cost, o.conn_cost) && same(loss_factor, o.loss_factor) && capacity == o.capacity &&
         energy_price == o.energy_price && life_cycle_years == o.life_cycle_years &&
         edge_unit_cost == o.edge_unit_cost && pathloss == o.pathloss;
}

namespace {

void require(bool ok, const std::string& invariant) {
  if (!ok) throw ValidationError("invariant violated: " + invariant);
}

}  // namespace

void validate(const Scenario& s) {
  const int n_sites = s.num_sites();
  const int n_tps = s.num_tps();
  require(s.capacity >= 1, "capacity >= 1");
  require(s.energy_price > 0.0, "energy_price > 0");
  require(s.life_cycle_years > 0.0, "life_cycle_years > 0");
  require(s.area_m > 0.0, "area_m > 0");
  for (const Site& site : s.sites) {
    const std::string at = "site " + std::to_string(site.id) + ": ";
    require(site.install_cost >= 0.0, at + "install_cost >= 0");
    require(site.tx_power_per_tp > 0.0, at + "tx_power > 0");
    require(site.static_power >= 0.0, at + "static_power >= 0");
    require(site.outage_bound > 0.0 && site.outage_bound < 1.0, at + "0 < outage_bound < 1");
    require(site.harvest.min_power() >= 0.0 && site.harvest.min_power() <= site.harvest.max_power(),
            at + "0 <= a <= b");
  }
  for (const TestPoint& tp : s.tps) {
    const std::string at = "tp " + std::to_string(tp.id) + ": ";
    require(tp.noise_power > 0.0, at + "noise_power > 0");
    require(tp.sinr_min > 0.0, at + "sinr_min > 0");
  }
  require(s.gains.rows() == n_tps && s.gains.cols() == n_sites, "gains is M x N");
  require((s.gains.array() > 0.0).all() && (s.gains.array() <= 1.0).all(), "gains in (0, 1]");
  require(s.conn_cost.rows() == n_sites && s.conn_cost.cols() == n_sites, "conn_cost is N x N");
  require(s.loss_factor.rows() == n_sites && s.loss_factor.cols() == n_sites, "loss_factor is N x N");
  require((s.conn_cost.array() >= 0.0).all(), "conn_cost >= 0");
  require((s.loss_factor.array() >= 0.0).all() && (s.loss_factor.array() <= 1.0).all(),
          "0 <= loss_factor <= 1");
}

void fill_gains(Scenario& s) {
  s.gains.resize(s.num_tps(), s.num_sites());
  for (int m = 0; m < s.num_tps(); ++m)
    for (int n = 0; n < s.num_sites(); ++n)
      s.gains(m, n) = pathloss_gain(s.tp_site_distance(m, n), s.pathloss.la_db, s.pathloss.lb_db);
}

void fill_edges(Scenario& s, double unit_cost_eur_per_m, double loss_factor) {
  const int n_sites = s.num_sites();
  s.edge_unit_cost = unit_cost_eur_per_m;
  s.conn_cost = Eigen::MatrixXd::Zero(n_sites, n_sites);
  s.loss_factor = Eigen::MatrixXd::Constant(n_sites, n_sites, loss_factor);
  for (int t = 0; t < n_sites; ++t)
    for (int n = 0; n < n_sites; ++n)
      if (t != n) s.conn_cost(t, n) = unit_cost_eur_per_m * s.site_distance(t, n);
  s.loss_factor.diagonal().setZero();
}

Scenario generate_scenario(const GenerationParams& params, std::uint64_t seed) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(params.num_sites))));
  if (params.num_sites < 1 || side * side != params.num_sites)
    throw ConfigError("number of candidate sites must be a positive perfect square, got " +
                      std::to_string(params.num_sites));
  if (params.capacity < 1) throw ConfigError("capacity must be >= 1");
  if (params.num_tps < 0) throw ConfigError("number of test points must be >= 0");
  if (static_cast<long>(params.num_tps) > static_cast<long>(params.capacity) * params.num_sites)
    throw CapacityError("M = " + std::to_string(params.num_tps) + " exceeds B*N = " +
                        std::to_string(params.capacity * params.num_sites));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, params.area_m);

  Scenario s;
  s.area_m = params.area_m;
  s.capacity = params.capacity;
  s.energy_price = params.energy_price;
  s.life_cycle_years = params.life_cycle_years;
  s.pathloss = params.pathloss;

  const double spacing = params.area_m / side;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      Site site;
      site.id = static_cast<int>(s.sites.size());
      site.position = {spacing * (i + 0.5), spacing * (j + 0.5)};
      site.install_cost = params.install_cost;
      site.tx_power_per_tp = params.tx_power;
      site.static_power = params.static_power;
      site.outage_bound = params.outage_bound;
      s.sites.push_back(site);
    }
  }

  const double noise = dbm_to_watt(params.noise_dbm);
  const double gamma = db_to_linear(params.sinr_min_db);
  for (int m = 0; m < params.num_tps; ++m) {
    TestPoint tp;
    tp.id = m;
    const double x = coord(rng);
    const double y = coord(rng);
    tp.position = {x, y};
    tp.noise_power = noise;
    tp.sinr_min = gamma;
    s.tps.push_back(tp);
  }

  const HarvestRanges& h = params.harvest;
  for (Site& site : s.sites) {
    const double a = h.a_lo == h.a_hi ? h.a_lo : std::uniform_real_distribution<double>(h.a_lo, h.a_hi)(rng);
    const double b = h.b_lo == h.b_hi ? h.b_lo : std::uniform_real_distribution<double>(h.b_lo, h.b_hi)(rng);
    site.harvest = EnergyDistribution::uniform(a, std::max(a, b));
  }

  fill_gains(s);
  fill_edges(s, params.edge_unit_cost, params.loss_factor);
  validate(s);
  return s;
}

Scenario with_life_cycle(const Scenario& s, double years) {
  Scenario out = s;
  out.life_cycle_years = years;
  return out;
}

Scenario with_capacity(const Scenario& s, int capacity) {
  Scenario out = s;
  out.capacity = capacity;
  return out;
}

Scenario with_uniform_harvest(const Scenario& s, double a, double b) {
  Scenario out = s;
  for (Site& site : out.sites) site.harvest = EnergyDistribution::uniform(a, b);
  return out;
}

Scenario without_res(const Scenario& s, double install_cost) {
  Scenario out = with_uniform_harvest(s, 0.0, 0.0);
  for (Site& site : out.sites) site.install_cost = install_cost;
  return out;
}

}  // namespace resplan
