#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mectopo/allocation.hpp"
#include "mectopo/network.hpp"
#include "mectopo/scenario.hpp"

namespace mectopo {

struct Cluster {
  int head = 0;
  std::vector<int> members;        // admission order
  double team_cost = 0.0;          // s/Gbit for head+members as a team
};

// The three-layer offload topology: master -> cluster heads -> members,
// with the per-server task split and its predicted makespan under the
// team-capacity model (whole team share transits the master->head link).
struct OffloadTree {
  std::vector<Cluster> clusters;      // selection order
  std::map<int, double> shares;       // per server id, master included
  double model_makespan = 0.0;

  bool contains(int id) const {
    if (id == 0) return true;
    for (const auto& c : clusters) {
      if (c.head == id) return true;
      if (std::find(c.members.begin(), c.members.end(), id) !=
          c.members.end())
        return true;
    }
    return false;
  }

  int cm_count() const {
    int k = 0;
    for (const auto& c : clusters) k += static_cast<int>(c.members.size());
    return k;
  }
};

// Structural invariants: heads are distinct master neighbors, members
// sit in exactly one cluster adjacent to their head, master is in no
// cluster. Throws on the first violation.
inline void validate_tree(const std::vector<Cluster>& clusters,
                          const Network& net) {
  std::set<int> seen;
  for (const auto& c : clusters) {
    if (c.head == 0) throw std::invalid_argument("tree: master cannot be a head");
    if (!net.adjacent(0, c.head))
      throw std::invalid_argument("tree: head " + std::to_string(c.head) +
                                  " not adjacent to master");
    if (!seen.insert(c.head).second)
      throw std::invalid_argument("tree: server " + std::to_string(c.head) +
                                  " appears twice");
    for (int m : c.members) {
      if (m == 0) throw std::invalid_argument("tree: master cannot be a member");
      if (m == c.head)
        throw std::invalid_argument("tree: head cannot be its own member");
      if (!net.adjacent(c.head, m))
        throw std::invalid_argument("tree: member " + std::to_string(m) +
                                    " not adjacent to head " +
                                    std::to_string(c.head));
      if (!seen.insert(m).second)
        throw std::invalid_argument("tree: server " + std::to_string(m) +
                                    " appears twice");
    }
  }
}

// Optimal split for a fixed topology, by balancing twice with the
// closed form: members against their head within each team (bandwidth
// split |C_i| ways), then the teams against the master (bandwidth split
// over the |C_0| heads). Fills team costs, shares and the makespan.
inline OffloadTree allocate_tree(std::vector<Cluster> clusters,
                                 const Scenario& sc, const Network& net,
                                 const UnitDelayTable& delays) {
  validate_tree(clusters, net);
  OffloadTree tree;
  const double total = sc.task_size;
  const double master_cost = unit_compute_time(sc.servers[0], sc);

  if (clusters.empty()) {
    tree.shares[0] = total;
    tree.model_makespan = master_cost * total;
    return tree;
  }

  // per-team balanced split of a unit task
  std::vector<Allocation> team_unit(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    auto& c = clusters[i];
    const int m = static_cast<int>(c.members.size());
    std::vector<double> caps;
    caps.push_back(unit_compute_time(sc.servers[c.head], sc));
    for (int j : c.members)
      caps.push_back(unit_compute_time(sc.servers[j], sc) +
                     m * delays.at(c.head, j));
    team_unit[i] = balanced_allocation(caps, 1.0);
    c.team_cost = team_unit[i].makespan;
  }

  // teams vs master; a team's capacity adds the share-adjusted
  // master->head transmission delay
  const int n_heads = static_cast<int>(clusters.size());
  std::vector<double> team_caps;
  team_caps.push_back(master_cost);
  for (const auto& c : clusters)
    team_caps.push_back(c.team_cost + n_heads * delays.at(0, c.head));
  Allocation top = balanced_allocation(team_caps, total);

  tree.shares[0] = top.shares[0];
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const double team_share = top.shares[i + 1];
    const auto& c = clusters[i];
    tree.shares[c.head] = team_unit[i].shares[0] * team_share;
    for (std::size_t j = 0; j < c.members.size(); ++j)
      tree.shares[c.members[j]] = team_unit[i].shares[j + 1] * team_share;
  }
  tree.model_makespan = top.makespan;
  tree.clusters = std::move(clusters);
  return tree;
}

inline OffloadTree allocate_tree(std::vector<Cluster> clusters,
                                 const Scenario& sc, const Network& net) {
  return allocate_tree(std::move(clusters), sc, net, UnitDelayTable(sc, net));
}

}  // namespace mectopo
