#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mectopo/network.hpp"
#include "mectopo/scenario.hpp"
#include "mectopo/tree.hpp"

namespace mectopo {

namespace detail {

// members join greedily chosen heads; pick(v, head) scores a candidate
// head from server v's point of view, higher wins, lowest head id on ties
template <typename Score>
inline void attach_members(std::vector<Cluster>& clusters, const Network& net,
                           Score&& pick) {
  std::vector<char> taken(net.n, 0);
  taken[0] = 1;
  for (const auto& c : clusters) taken[c.head] = 1;
  for (int v = 0; v < net.n; ++v) {
    if (taken[v]) continue;
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      const int h = clusters[ci].head;
      if (!net.adjacent(v, h)) continue;
      const double s = pick(v, h);
      if (s > best_score || (s == best_score && best >= 0 &&
                             h < clusters[best].head)) {
        best_score = s;
        best = static_cast<int>(ci);
      }
    }
    if (best >= 0) clusters[best].members.push_back(v);
  }
}

inline std::vector<int> by_power_desc(const Scenario& sc,
                                      std::vector<int> ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (sc.servers[a].f_mhz != sc.servers[b].f_mhz)
      return sc.servers[a].f_mhz > sc.servers[b].f_mhz;
    return a < b;
  });
  return ids;
}

}  // namespace detail

// Power-ranked head election with range-conflict suppression: taking a
// head knocks its in-range rivals out of candidacy. Members join the
// nearest head.
inline OffloadTree unequal(const Scenario& sc, const Network& net) {
  const std::vector<int> order = detail::by_power_desc(sc, net.neighbors[0]);
  std::vector<char> suppressed(net.n, 0);
  std::vector<Cluster> clusters;
  for (int c : order) {
    if (suppressed[c]) continue;
    clusters.push_back({c, {}, 0.0});
    for (int rival : net.neighbors[0])
      if (rival != c && net.adjacent(c, rival)) suppressed[rival] = 1;
  }
  detail::attach_members(clusters, net,
                         [&](int v, int h) { return -net.distance(v, h); });
  return allocate_tree(std::move(clusters), sc, net);
}

// Centralized election of the top fraction of master neighbors by
// compute power. Members join the head with the strongest received
// signal (snr over squared distance).
inline OffloadTree leach_c(const Scenario& sc, const Network& net,
                           double ch_fraction = 0.2) {
  if (!(ch_fraction > 0.0) || ch_fraction > 1.0)
    throw std::invalid_argument("leach_c: ch_fraction must be in (0, 1]");
  const std::vector<int> order = detail::by_power_desc(sc, net.neighbors[0]);
  const int want = static_cast<int>(
      std::ceil(ch_fraction * static_cast<double>(order.size())));
  std::vector<Cluster> clusters;
  for (int i = 0; i < want; ++i) clusters.push_back({order[i], {}, 0.0});
  detail::attach_members(clusters, net, [&](int v, int h) {
    const double d = net.distance(v, h);
    return sc.snr_linear(v, h) / (d * d);
  });
  return allocate_tree(std::move(clusters), sc, net);
}

struct LbasWeights {
  double compute = 1.0 / 3.0;
  double degree = 1.0 / 3.0;
  double proximity = 1.0 / 3.0;
};

// Iterative multi-criteria election: compute power, neighborhood size
// and proximity are min-max normalized over the surviving candidates;
// the top scorer becomes a head and its candidate neighbors drop out.
// Members rate the adjacent heads with the same blend and join the
// best one.
inline OffloadTree lbas(const Scenario& sc, const Network& net,
                        const LbasWeights& w = {}) {
  const auto norm = [](double x, double lo, double hi) {
    return hi > lo ? (x - lo) / (hi - lo) : 0.5;
  };
  std::vector<int> pool = net.neighbors[0];
  std::vector<Cluster> clusters;
  while (!pool.empty()) {
    double f_lo = std::numeric_limits<double>::infinity(), f_hi = -f_lo;
    double g_lo = f_lo, g_hi = -f_lo;
    double d_lo = f_lo, d_hi = -f_lo;
    for (int c : pool) {
      f_lo = std::min(f_lo, sc.servers[c].f_mhz);
      f_hi = std::max(f_hi, sc.servers[c].f_mhz);
      g_lo = std::min(g_lo, static_cast<double>(net.neighbors[c].size()));
      g_hi = std::max(g_hi, static_cast<double>(net.neighbors[c].size()));
      d_lo = std::min(d_lo, net.distance(0, c));
      d_hi = std::max(d_hi, net.distance(0, c));
    }
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c : pool) {  // ascending ids, strict > keeps the lowest on ties
      const double score =
          w.compute * norm(sc.servers[c].f_mhz, f_lo, f_hi) +
          w.degree * norm(static_cast<double>(net.neighbors[c].size()), g_lo,
                          g_hi) +
          w.proximity * (1.0 - norm(net.distance(0, c), d_lo, d_hi));
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    clusters.push_back({best, {}, 0.0});
    std::erase_if(pool,
                  [&](int c) { return c == best || net.adjacent(best, c); });
  }

  // normalization populations for the joining scores
  double f_lo = std::numeric_limits<double>::infinity(), f_hi = -f_lo;
  double g_lo = f_lo, g_hi = -f_lo;
  double d_lo = f_lo, d_hi = -f_lo;
  std::vector<char> is_head(net.n, 0);
  for (const auto& c : clusters) {
    is_head[c.head] = 1;
    f_lo = std::min(f_lo, sc.servers[c.head].f_mhz);
    f_hi = std::max(f_hi, sc.servers[c.head].f_mhz);
    g_lo = std::min(g_lo, static_cast<double>(net.neighbors[c.head].size()));
    g_hi = std::max(g_hi, static_cast<double>(net.neighbors[c.head].size()));
  }
  for (int v = 0; v < net.n; ++v) {
    if (v == 0 || is_head[v]) continue;
    for (const auto& c : clusters)
      if (net.adjacent(v, c.head)) {
        d_lo = std::min(d_lo, net.distance(v, c.head));
        d_hi = std::max(d_hi, net.distance(v, c.head));
      }
  }
  detail::attach_members(clusters, net, [&](int v, int h) {
    return w.compute * norm(sc.servers[h].f_mhz, f_lo, f_hi) +
           w.degree * norm(static_cast<double>(net.neighbors[h].size()), g_lo,
                           g_hi) +
           w.proximity * (1.0 - norm(net.distance(v, h), d_lo, d_hi));
  });
  return allocate_tree(std::move(clusters), sc, net);
}

// Shortest-delay tree from the master (edge weight: full-bandwidth
// per-unit transmission delay). First-hop nodes become heads, their
// second-hop children become members, anything deeper is dropped.
inline OffloadTree dijkstra_prune(const Scenario& sc, const Network& net) {
  const int n = net.n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> parent(n, -1);
  std::vector<char> done(n, 0);
  dist[0] = 0.0;

  for (int round = 0; round < n; ++round) {
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
    if (u < 0) break;
    done[u] = 1;
    for (int v : net.neighbors[u]) {
      if (done[v]) continue;
      const double nd = dist[u] + unit_tx_delay(net, sc, u, v);
      if (nd < dist[v] || (nd == dist[v] && u < parent[v])) {
        dist[v] = nd;
        parent[v] = u;
      }
    }
  }

  std::vector<int> depth(n, -1);
  depth[0] = 0;
  // parents always settle before children, so resolve depths by
  // repeated passes (n is small)
  for (int pass = 0; pass < n; ++pass)
    for (int v = 1; v < n; ++v)
      if (depth[v] < 0 && parent[v] >= 0 && depth[parent[v]] >= 0)
        depth[v] = depth[parent[v]] + 1;

  std::vector<Cluster> clusters;
  std::vector<int> head_index(n, -1);
  for (int v = 1; v < n; ++v)
    if (depth[v] == 1) {
      head_index[v] = static_cast<int>(clusters.size());
      clusters.push_back({v, {}, 0.0});
    }
  for (int v = 1; v < n; ++v)
    if (depth[v] == 2) clusters[head_index[parent[v]]].members.push_back(v);
  return allocate_tree(std::move(clusters), sc, net);
}

}  // namespace mectopo
