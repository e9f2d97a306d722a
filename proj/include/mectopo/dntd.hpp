#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mectopo/incremental.hpp"
#include "mectopo/network.hpp"
#include "mectopo/scenario.hpp"
#include "mectopo/tree.hpp"

namespace mectopo {

struct LcfStep {
  int candidate = 0;
  double indicator = 0.0;
  bool committed = false;
};

struct LcfResult {
  Cluster cluster;
  std::vector<int> ids;        // head first, then members in admission order
  std::vector<double> shares;  // aligned with ids, sums to the task size
  double makespan = 0.0;
  std::vector<LcfStep> steps;
};

namespace detail {

// Greedy member admission for one candidate head. Each round the
// cheapest remaining neighbor (capacity at the post-admission bandwidth
// split, lowest id on ties) is tested; it joins only if the makespan
// ratio clears 1, and the first rejection ends the loop.
inline LcfResult lcf_impl(int head, std::vector<int> pool, double y,
                          std::span<const double> compute_cost,
                          const UnitDelayTable& delays) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  IncrementalAllocator state(head, compute_cost[head], y);
  LcfResult res;
  res.cluster.head = head;
  std::vector<double> member_tx;  // admission order, matches members
  std::vector<double> updated;

  const std::size_t rounds = pool.size();
  for (std::size_t k = 0; k < rounds && !pool.empty(); ++k) {
    const int m = static_cast<int>(k) + 1;  // receivers after admission

    int best = -1;
    double best_cap = std::numeric_limits<double>::infinity();
    for (int j : pool) {
      const double cap = compute_cost[j] + m * delays.at(head, j);
      if (cap < best_cap) {
        best_cap = cap;
        best = j;
      }
    }

    updated.clear();
    updated.push_back(compute_cost[head]);
    for (std::size_t l = 0; l < res.cluster.members.size(); ++l)
      updated.push_back(compute_cost[res.cluster.members[l]] +
                        m * member_tx[l]);

    const double gain = state.indicator(best, best_cap, updated);
    const bool take = gain > 1.0;
    res.steps.push_back({best, gain, take});
    if (!take) break;

    state.commit(best, best_cap, gain, updated);
    res.cluster.members.push_back(best);
    member_tx.push_back(delays.at(head, best));
    pool.erase(std::find(pool.begin(), pool.end(), best));
  }

  res.cluster.team_cost = res.cluster.members.empty()
                              ? compute_cost[head]
                              : state.makespan() / y;
  res.ids = state.ids();
  res.shares = state.shares();
  res.makespan = state.makespan();
  return res;
}

inline std::vector<double> all_compute_costs(const Scenario& sc) {
  std::vector<double> costs;
  costs.reserve(sc.servers.size());
  for (const auto& s : sc.servers) costs.push_back(unit_compute_time(s, sc));
  return costs;
}

}  // namespace detail

// Local cluster formation for one head over an explicit candidate pool.
// The resulting member set does not depend on y; shares scale linearly
// with it.
inline LcfResult lcf(int head, const std::vector<int>& pool, double y,
                     const Scenario& sc, const Network& net,
                     const UnitDelayTable& delays) {
  if (!(y > 0.0)) throw std::invalid_argument("lcf: task size must be > 0");
  for (int j : pool)
    if (j == head || !net.adjacent(head, j))
      throw std::domain_error("lcf: pool server " + std::to_string(j) +
                              " is not a neighbor of head " +
                              std::to_string(head));
  return detail::lcf_impl(head, pool, y, detail::all_compute_costs(sc), delays);
}

inline LcfResult lcf(int head, const std::vector<int>& pool, double y,
                     const Scenario& sc, const Network& net) {
  return lcf(head, pool, y, sc, net, UnitDelayTable(sc, net));
}

// Per-unit capacity of a candidate head together with its cluster:
// team processing cost plus the master-link delay at the bandwidth
// share it would get once the head count reaches c0_size_after.
inline double eta_capacity(const Cluster& candidate, int c0_size_after,
                           const Scenario& sc, const Network& net) {
  if (!net.adjacent(0, candidate.head))
    throw std::domain_error("eta_capacity: head " +
                            std::to_string(candidate.head) +
                            " is not a master neighbor");
  return candidate.team_cost +
         c0_size_after * unit_tx_delay(net, sc, 0, candidate.head);
}

struct DntdStep {
  int head = 0;
  double indicator = 0.0;
  double makespan_after = 0.0;
};

struct DntdTrace {
  double initial_makespan = 0.0;
  std::vector<DntdStep> steps;  // committed iterations only
};

// Full topology builder. Every outer iteration re-forms candidate
// clusters over the servers not yet in the tree, admits the candidate
// head whose team capacity is lowest if that improves the makespan,
// then removes the new cluster from the world; the first rejection
// stops the search. The allocation carried along stays optimal for the
// topology built so far.
inline OffloadTree dntd_to(const Scenario& sc, const Network& net,
                           double total, DntdTrace* trace = nullptr) {
  if (!(total > 0.0)) throw std::invalid_argument("dntd_to: task size must be > 0");
  const UnitDelayTable delays(sc, net);
  const std::vector<double> compute_cost = detail::all_compute_costs(sc);
  const int n = net.n;

  IncrementalAllocator state(0, compute_cost[0], total);
  // committed team costs and master-link delays, aligned with state ids;
  // the master is a team of one with no transmission leg, so its
  // capacity stays at its compute cost as the head count grows
  std::vector<double> team_cost{compute_cost[0]};
  std::vector<double> master_tx{0.0};

  std::vector<Cluster> clusters;
  std::vector<LcfResult> committed_lcf;
  std::vector<int> pool = net.neighbors[0];  // ascending
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;

  if (trace) {
    trace->initial_makespan = state.makespan();
    trace->steps.clear();
  }

  std::vector<int> member_pool;
  std::vector<double> updated;
  const std::size_t rounds = pool.size();
  for (std::size_t k = 0; k < rounds && !pool.empty(); ++k) {
    // re-form every unselected candidate's cluster over what is left
    std::vector<LcfResult> formed(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) {
      member_pool.clear();
      for (int j : net.neighbors[pool[c]])
        if (!in_tree[j]) member_pool.push_back(j);
      formed[c] =
          detail::lcf_impl(pool[c], member_pool, total, compute_cost, delays);
    }

    const int c0_after = static_cast<int>(clusters.size()) + 1;
    int best = -1;
    double best_eta = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < pool.size(); ++c) {
      const double eta =
          formed[c].cluster.team_cost + c0_after * delays.at(0, pool[c]);
      if (eta < best_eta) {
        best_eta = eta;
        best = static_cast<int>(c);
      }
    }

    updated.clear();
    for (std::size_t l = 0; l < team_cost.size(); ++l)
      updated.push_back(team_cost[l] + c0_after * master_tx[l]);

    const int head = pool[best];
    const double gain = state.indicator(head, best_eta, updated);
    if (!(gain > 1.0)) break;

    state.commit(head, best_eta, gain, updated);
    team_cost.push_back(formed[best].cluster.team_cost);
    master_tx.push_back(delays.at(0, head));
    clusters.push_back(formed[best].cluster);
    committed_lcf.push_back(std::move(formed[best]));

    in_tree[head] = 1;
    for (int j : clusters.back().members) in_tree[j] = 1;
    std::erase_if(pool, [&](int j) { return in_tree[j] != 0; });

    if (trace) trace->steps.push_back({head, gain, state.makespan()});
  }

  OffloadTree tree;
  tree.clusters = clusters;
  tree.shares[0] = state.shares()[0];
  for (std::size_t i = 1; i < state.ids().size(); ++i) {
    const double scale = state.shares()[i] / total;  // LCF ran with y = total
    const LcfResult& lr = committed_lcf[i - 1];
    for (std::size_t w = 0; w < lr.ids.size(); ++w)
      tree.shares[lr.ids[w]] = lr.shares[w] * scale;
  }
  tree.model_makespan = state.makespan();
  return tree;
}

}  // namespace mectopo
