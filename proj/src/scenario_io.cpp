#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "resplan/errors.hpp"
#include "resplan/scenario.hpp"

namespace resplan {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field " + path + "." + key);
  return *it;
}

double number(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw ParseError("field " + path + "." + key + ": expected a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer()) throw ParseError("field " + path + "." + key + ": expected an integer");
  return v.get<int>();
}

const json& array(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array()) throw ParseError("field " + path + "." + key + ": expected an array");
  return v;
}

// Accepts nested rows or a flat row-major array.
Eigen::MatrixXd matrix(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  Eigen::MatrixXd out(rows, cols);
  if (!v.is_array()) throw ParseError("field " + path + ": expected an array");
  const bool nested = !v.empty() && v.front().is_array();
  if (nested) {
    if (static_cast<Eigen::Index>(v.size()) != rows)
      throw ParseError("field " + path + ": expected " + std::to_string(rows) + " rows");
    for (Eigen::Index i = 0; i < rows; ++i) {
      const json& row = v[i];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        throw ParseError("field " + path + "[" + std::to_string(i) + "]: expected " + std::to_string(cols) +
                         " entries");
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (!row[j].is_number()) throw ParseError("field " + path + ": non-numeric entry");
        out(i, j) = row[j].get<double>();
      }
    }
  } else {
    if (static_cast<Eigen::Index>(v.size()) != rows * cols)
      throw ParseError("field " + path + ": expected " + std::to_string(rows * cols) + " entries");
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
      if (!v[k].is_number()) throw ParseError("field " + path + ": non-numeric entry");
      out(k / cols, k % cols) = v[k].get<double>();
    }
  }
  return out;
}

json to_json(const Eigen::MatrixXd& mat) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  const std::string root = "scenario";

  Scenario s;
  s.area_m = number(doc, "area_m", root);
  s.capacity = integer(doc, "capacity", root);
  s.energy_price = number(doc, "energy_price_eur_per_kwh", root);
  s.life_cycle_years = number(doc, "life_cycle_years", root);
  const double unit_cost = number(doc, "edge_unit_cost_eur_per_m", root);
  const double loss = number(doc, "loss_factor", root);
  if (doc.contains("pathloss")) {
    const json& pl = doc["pathloss"];
    s.pathloss.la_db = number(pl, "la_db", root + ".pathloss");
    s.pathloss.lb_db = number(pl, "lb_db", root + ".pathloss");
  }

  const json& sites = array(doc, "sites", root);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::string path = "sites[" + std::to_string(i) + "]";
    const json& js = sites[i];
    Site site;
    site.id = static_cast<int>(i);
    site.position = {number(js, "x_m", path), number(js, "y_m", path)};
    site.install_cost = number(js, "install_cost_eur", path);
    site.tx_power_per_tp = number(js, "tx_power_w", path);
    site.static_power = number(js, "static_power_w", path);
    site.outage_bound = number(js, "outage_bound", path);
    const json& h = field(js, "harvest", path);
    const std::string kind = field(h, "kind", path + ".harvest").is_string() ? h["kind"].get<std::string>() : "";
    if (kind != "uniform") throw ParseError("field " + path + ".harvest.kind: unsupported law '" + kind + "'");
    const double a = number(h, "a_w", path + ".harvest");
    const double b = number(h, "b_w", path + ".harvest");
    if (!(a >= 0.0 && a <= b)) throw ValidationError("invariant violated: " + path + ": 0 <= a <= b");
    site.harvest = EnergyDistribution::uniform(a, b);
    s.sites.push_back(site);
  }

  const json& tps = array(doc, "tps", root);
  for (std::size_t i = 0; i < tps.size(); ++i) {
    const std::string path = "tps[" + std::to_string(i) + "]";
    const json& jt = tps[i];
    TestPoint tp;
    tp.id = static_cast<int>(i);
    tp.position = {number(jt, "x_m", path), number(jt, "y_m", path)};
    // Exact linear values win over the dB forms when both are present.
    tp.noise_power = jt.contains("noise_w") ? number(jt, "noise_w", path) : dbm_to_watt(number(jt, "noise_dbm", path));
    tp.sinr_min = jt.contains("sinr_min") ? number(jt, "sinr_min", path) : db_to_linear(number(jt, "sinr_min_db", path));
    s.tps.push_back(tp);
  }

  if (doc.contains("gains"))
    s.gains = matrix(doc["gains"], s.num_tps(), s.num_sites(), root + ".gains");
  else
    fill_gains(s);

  fill_edges(s, unit_cost, loss);
  if (doc.contains("conn_cost_eur"))
    s.conn_cost = matrix(doc["conn_cost_eur"], s.num_sites(), s.num_sites(), root + ".conn_cost_eur");
  if (doc.contains("loss_factors"))
    s.loss_factor = matrix(doc["loss_factors"], s.num_sites(), s.num_sites(), root + ".loss_factors");

  validate(s);
  return s;
}

std::string save_scenario(const Scenario& s) {
  json doc;
  doc["area_m"] = s.area_m;
  doc["capacity"] = s.capacity;
  doc["energy_price_eur_per_kwh"] = s.energy_price;
  doc["life_cycle_years"] = s.life_cycle_years;
  doc["edge_unit_cost_eur_per_m"] = s.edge_unit_cost;
  doc["loss_factor"] = s.num_sites() > 1 ? s.loss_factor(0, 1) : 0.0;
  doc["pathloss"] = {{"la_db", s.pathloss.la_db}, {"lb_db", s.pathloss.lb_db}};

  json sites = json::array();
  for (const Site& site : s.sites) {
    sites.push_back({{"x_m", site.position.x()},
                     {"y_m", site.position.y()},
                     {"install_cost_eur", site.install_cost},
                     {"tx_power_w", site.tx_power_per_tp},
                     {"static_power_w", site.static_power},
                     {"outage_bound", site.outage_bound},
                     {"harvest", {{"kind", "uniform"}, {"a_w", site.harvest.min_power()}, {"b_w", site.harvest.max_power()}}}});
  }
  doc["sites"] = std::move(sites);

  json tps = json::array();
  for (const TestPoint& tp : s.tps) {
    tps.push_back({{"x_m", tp.position.x()},
                   {"y_m", tp.position.y()},
                   {"noise_dbm", watt_to_dbm(tp.noise_power)},
                   {"sinr_min_db", linear_to_db(tp.sinr_min)},
                   {"noise_w", tp.noise_power},
                   {"sinr_min", tp.sinr_min}});
  }
  doc["tps"] = std::move(tps);

  doc["gains"] = to_json(s.gains);
  doc["conn_cost_eur"] = to_json(s.conn_cost);
  doc["loss_factors"] = to_json(s.loss_factor);
  return doc.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << save_scenario(s);
}

}  // namespace resplan
