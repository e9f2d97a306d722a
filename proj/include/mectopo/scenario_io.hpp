#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mectopo/scenario.hpp"
#include "mectopo/tree.hpp"

namespace mectopo {

// On-disk scenario document. SNR goes out as the upper triangle
// (row-major, dB) and is mirrored on load. nlohmann sorts object keys,
// so identical scenarios serialize to identical bytes.
inline nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json j;
  j["bandwidth_mhz"] = sc.bandwidth_mhz;
  j["cycles_per_bit"] = sc.cycles_per_bit;
  j["task_size"] = sc.task_size;
  j["comm_range_m"] = sc.comm_range_m;
  j["seed"] = sc.seed;
  j["servers"] = nlohmann::json::array();
  for (const auto& s : sc.servers)
    j["servers"].push_back(
        {{"id", s.id}, {"x", s.x}, {"y", s.y}, {"f_mhz", s.f_mhz}});
  auto tri = nlohmann::json::array();
  const int n = sc.size();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) tri.push_back(sc.snr_db_at(i, k));
  j["snr_db"] = std::move(tri);
  return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario sc;
  sc.bandwidth_mhz = j.at("bandwidth_mhz").get<double>();
  sc.cycles_per_bit = j.at("cycles_per_bit").get<double>();
  sc.task_size = j.at("task_size").get<double>();
  sc.comm_range_m = j.at("comm_range_m").get<double>();
  sc.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("servers"))
    sc.servers.push_back({s.at("id").get<int>(), s.at("x").get<double>(),
                          s.at("y").get<double>(), s.at("f_mhz").get<double>()});
  const int n = sc.size();
  const auto& tri = j.at("snr_db");
  if (static_cast<int>(tri.size()) != n * (n - 1) / 2)
    throw std::invalid_argument("scenario: snr_db must hold one entry per pair");
  sc.init_snr(0.0);
  std::size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) sc.set_snr_db(i, k, tri[t++].get<double>());
  validate(sc);
  return sc;
}

inline void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << scenario_to_json(sc).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

// Topology + split dump, for --dump-tree and debugging.
inline nlohmann::json tree_to_json(const OffloadTree& tree) {
  nlohmann::json j;
  j["clusters"] = nlohmann::json::array();
  for (const auto& c : tree.clusters)
    j["clusters"].push_back({{"head", c.head},
                             {"members", c.members},
                             {"team_s_per_gbit", c.team_cost}});
  auto shares = nlohmann::json::object();
  for (const auto& [id, y] : tree.shares) shares[std::to_string(id)] = y;
  j["shares"] = std::move(shares);
  j["model_makespan_s"] = tree.model_makespan;
  return j;
}

}  // namespace mectopo
