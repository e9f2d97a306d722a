#pragma once

#include <cstdint>
#include <stdexcept>

#include "mectopo/rng.hpp"
#include "mectopo/scenario.hpp"

namespace mectopo {

struct GenParams {
  int n = 20;
  double area_w_m = 100.0;
  double area_h_m = 100.0;
  double master_x_m = 20.0;
  double master_y_m = 20.0;
  double comm_range_m = 50.0;
  double f_min_mhz = 0.1;
  double f_max_mhz = 10.0;
  double snr_db_min = 30.0;
  double snr_db_max = 40.0;
  double bandwidth_mhz = 50.0;
  double cycles_per_bit = 1.0;
  double task_size = 100.0;  // Gbits
};

inline void validate(const GenParams& p) {
  if (p.n < 1) throw std::invalid_argument("gen: need at least one server");
  if (!(p.area_w_m > 0.0) || !(p.area_h_m > 0.0))
    throw std::invalid_argument("gen: area must have positive extent");
  if (!(p.f_min_mhz > 0.0) || p.f_min_mhz > p.f_max_mhz)
    throw std::invalid_argument("gen: compute range must be positive and ordered");
  if (p.snr_db_min > p.snr_db_max)
    throw std::invalid_argument("gen: snr range is inverted");
  if (!(p.comm_range_m >= 0.0))
    throw std::invalid_argument("gen: comm range must be >= 0");
  if (p.master_x_m < 0.0 || p.master_x_m > p.area_w_m || p.master_y_m < 0.0 ||
      p.master_y_m > p.area_h_m)
    throw std::invalid_argument("gen: master must sit inside the area");
  if (!(p.task_size > 0.0)) throw std::invalid_argument("gen: task size must be > 0");
  if (!(p.bandwidth_mhz > 0.0))
    throw std::invalid_argument("gen: bandwidth must be > 0");
  if (!(p.cycles_per_bit > 0.0))
    throw std::invalid_argument("gen: cycles per bit must be > 0");
}

// Deterministic world sampling. Three substreams in a fixed order
// (positions, compute power, snr) keep draws independent of each other,
// so the same seed reproduces the same world byte for byte.
inline Scenario generate_scenario(std::uint64_t seed, const GenParams& p) {
  validate(p);
  Scenario sc;
  sc.seed = seed;
  sc.bandwidth_mhz = p.bandwidth_mhz;
  sc.cycles_per_bit = p.cycles_per_bit;
  sc.task_size = p.task_size;
  sc.comm_range_m = p.comm_range_m;
  sc.servers.resize(p.n);
  sc.servers[0] = {0, p.master_x_m, p.master_y_m, 0.0};

  SplitMix64 pos = substream(seed, 0);
  for (int i = 1; i < p.n; ++i) {
    for (;;) {
      const double x = pos.uniform(0.0, p.area_w_m);
      const double y = pos.uniform(0.0, p.area_h_m);
      bool clash = false;  // coincident servers would make the link rate blow up
      for (int j = 0; j < i && !clash; ++j)
        clash = sc.servers[j].x == x && sc.servers[j].y == y;
      if (!clash) {
        sc.servers[i] = {i, x, y, 0.0};
        break;
      }
    }
  }

  SplitMix64 power = substream(seed, 1);
  for (int i = 0; i < p.n; ++i)
    sc.servers[i].f_mhz = power.uniform(p.f_min_mhz, p.f_max_mhz);

  SplitMix64 snr = substream(seed, 2);
  sc.init_snr(0.0);
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j)
      sc.set_snr_db(i, j, snr.uniform(p.snr_db_min, p.snr_db_max));

  return sc;
}

}  // namespace mectopo
