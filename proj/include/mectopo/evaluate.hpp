#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mectopo/network.hpp"
#include "mectopo/scenario.hpp"
#include "mectopo/tree.hpp"

namespace mectopo {

// Completion time with per-server pipelining: each share is charged the
// transmission of exactly its own bytes over every hop it crosses, at
// the bandwidth split the topology implies, plus local processing. This
// can come out below the team-capacity model makespan, which bills a
// head's whole team share for the first hop.
inline double evaluate_eq1(const OffloadTree& tree, const Scenario& sc,
                           const Network&, const UnitDelayTable& delays) {
  for (const auto& [id, share] : tree.shares)
    if (!tree.contains(id))
      throw std::invalid_argument("evaluate_eq1: allocation references server " +
                                  std::to_string(id) + " outside the tree");

  const auto share_of = [&](int id) {
    auto it = tree.shares.find(id);
    return it == tree.shares.end() ? 0.0 : it->second;
  };

  const int n_heads = static_cast<int>(tree.clusters.size());
  double makespan = share_of(0) * unit_compute_time(sc.servers[0], sc);
  for (const auto& c : tree.clusters) {
    const double master_leg = n_heads * delays.at(0, c.head);
    makespan = std::max(
        makespan, share_of(c.head) * (master_leg +
                                      unit_compute_time(sc.servers[c.head], sc)));
    const int m = static_cast<int>(c.members.size());
    for (int j : c.members)
      makespan = std::max(
          makespan, share_of(j) * (m * delays.at(c.head, j) + master_leg +
                                   unit_compute_time(sc.servers[j], sc)));
  }
  return makespan;
}

inline double evaluate_eq1(const OffloadTree& tree, const Scenario& sc,
                           const Network& net) {
  return evaluate_eq1(tree, sc, net, UnitDelayTable(sc, net));
}

}  // namespace mectopo
