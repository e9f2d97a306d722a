#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mectopo {

struct Server {
  int id = 0;  // 0 is the master
  double x = 0.0;
  double y = 0.0;
  double f_mhz = 0.0;  // compute capacity
};

// Immutable world description. All internal units are seconds, Gbits
// and meters; SNR is stored in dB and converted to a linear ratio at
// the point of use.
struct Scenario {
  std::vector<Server> servers;
  double bandwidth_mhz = 50.0;
  double cycles_per_bit = 1.0;
  double task_size = 100.0;  // Gbits
  double comm_range_m = 50.0;
  std::vector<double> snr_db;  // n*n symmetric, diagonal unused
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(servers.size()); }

  double snr_db_at(int i, int j) const {
    return snr_db[static_cast<std::size_t>(i) * servers.size() +
                  static_cast<std::size_t>(j)];
  }

  // linear SNR ratio used by the spectral-efficiency term
  double snr_linear(int i, int j) const {
    return std::pow(10.0, snr_db_at(i, j) / 10.0);
  }

  void set_snr_db(int i, int j, double db) {
    snr_db[static_cast<std::size_t>(i) * servers.size() +
           static_cast<std::size_t>(j)] = db;
    snr_db[static_cast<std::size_t>(j) * servers.size() +
           static_cast<std::size_t>(i)] = db;
  }

  void init_snr(double db = 30.0) {
    snr_db.assign(servers.size() * servers.size(), db);
  }
};

inline void validate(const Scenario& sc) {
  if (sc.servers.empty()) throw std::invalid_argument("scenario: no servers");
  for (std::size_t i = 0; i < sc.servers.size(); ++i) {
    if (sc.servers[i].id != static_cast<int>(i))
      throw std::invalid_argument(
          "scenario: server ids must be 0..N-1 in order (duplicate or gap at " +
          std::to_string(i) + ")");
    if (!(sc.servers[i].f_mhz > 0.0))
      throw std::invalid_argument("scenario: compute capacity must be > 0");
  }
  if (!(sc.task_size > 0.0))
    throw std::invalid_argument("scenario: task size must be > 0");
  if (!(sc.bandwidth_mhz > 0.0))
    throw std::invalid_argument("scenario: bandwidth must be > 0");
  if (!(sc.comm_range_m >= 0.0))
    throw std::invalid_argument("scenario: comm range must be >= 0");
  if (!(sc.cycles_per_bit > 0.0))
    throw std::invalid_argument("scenario: cycles per bit must be > 0");
  const std::size_t n = sc.servers.size();
  if (sc.snr_db.size() != n * n)
    throw std::invalid_argument("scenario: snr table must be N x N");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sc.snr_db[i * n + j] != sc.snr_db[j * n + i])
        throw std::invalid_argument("scenario: snr table must be symmetric");
}

}  // namespace mectopo
