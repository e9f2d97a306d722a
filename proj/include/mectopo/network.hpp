#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mectopo/scenario.hpp"

namespace mectopo {

// Derived graph view: servers are connected iff their Euclidean
// distance is within the (inclusive) communication range.
struct Network {
  int n = 0;
  std::vector<std::uint8_t> adjacency;     // n*n, symmetric, zero diagonal
  std::vector<double> distances;           // n*n
  std::vector<std::vector<int>> neighbors; // ascending ids per server

  bool adjacent(int i, int j) const {
    return adjacency[static_cast<std::size_t>(i) * n + j] != 0;
  }
  double distance(int i, int j) const {
    return distances[static_cast<std::size_t>(i) * n + j];
  }
};

inline Network build_network(const Scenario& sc) {
  validate(sc);
  const int n = sc.size();
  Network net;
  net.n = n;
  net.adjacency.assign(static_cast<std::size_t>(n) * n, 0);
  net.distances.assign(static_cast<std::size_t>(n) * n, 0.0);
  net.neighbors.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = sc.servers[i].x - sc.servers[j].x;
      const double dy = sc.servers[i].y - sc.servers[j].y;
      const double d = std::hypot(dx, dy);
      net.distances[static_cast<std::size_t>(i) * n + j] = d;
      net.distances[static_cast<std::size_t>(j) * n + i] = d;
      if (d <= sc.comm_range_m) {
        net.adjacency[static_cast<std::size_t>(i) * n + j] = 1;
        net.adjacency[static_cast<std::size_t>(j) * n + i] = 1;
        net.neighbors[i].push_back(j);
        net.neighbors[j].push_back(i);
      }
    }
  }
  return net;
}

// Spectral efficiency of the i-j link in bit/s/Hz.
inline double spectral_efficiency(const Scenario& sc, const Network& net,
                                  int i, int j) {
  const double d = net.distance(i, j);
  return std::log2(1.0 + sc.snr_linear(i, j) / (d * d));
}

// Link rate in Gbit/s when the transmitter serves m receivers at once
// (bandwidth split evenly over orthogonal channels). bandwidth_mhz MHz
// at log2(1+snr/d^2) bit/s/Hz gives Mbit/s; /1000 converts to Gbit/s.
inline double link_rate(const Network& net, const Scenario& sc, int i, int j,
                        int m) {
  if (i == j) throw std::domain_error("link_rate: no self links");
  if (!net.adjacent(i, j))
    throw std::domain_error("link_rate: servers not in range");
  if (m < 1) throw std::invalid_argument("link_rate: m must be >= 1");
  return (sc.bandwidth_mhz / m) * spectral_efficiency(sc, net, i, j) / 1000.0;
}

// Seconds per Gbit of local processing: cycles_per_bit * 1e9 cycles
// over f_mhz * 1e6 cycles/s.
inline double unit_compute_time(const Server& s, const Scenario& sc) {
  return 1000.0 * sc.cycles_per_bit / s.f_mhz;
}

// Seconds per Gbit over the i-j link with the whole bandwidth (m = 1).
// With m simultaneous receivers the per-unit delay is m times this.
inline double unit_tx_delay(const Network& net, const Scenario& sc, int i,
                            int j) {
  return 1.0 / link_rate(net, sc, i, j, 1);
}

// Cached m=1 per-unit delays for every edge; NaN off-edge.
struct UnitDelayTable {
  int n = 0;
  std::vector<double> delay;

  UnitDelayTable() = default;
  UnitDelayTable(const Scenario& sc, const Network& net) : n(net.n) {
    delay.assign(static_cast<std::size_t>(n) * n,
                 std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < n; ++i)
      for (int j : net.neighbors[i])
        delay[static_cast<std::size_t>(i) * n + j] = unit_tx_delay(net, sc, i, j);
  }

  double at(int i, int j) const {
    return delay[static_cast<std::size_t>(i) * n + j];
  }
};

}  // namespace mectopo
