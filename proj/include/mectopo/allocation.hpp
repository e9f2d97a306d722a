#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace mectopo {

// A split of a divisible task across workers. shares[i] is the amount
// (Gbits) handed to the i-th worker of the capacity list that produced
// it; makespan is the max over workers of share * capacity (seconds).
struct Allocation {
  std::vector<double> shares;
  double makespan = 0.0;
};

// Minimizing the max of capacity_l * share_l subject to the shares
// summing to the total equalizes the per-worker loads: every worker
// finishes at the same instant and the makespan is total / sum(1/c).
// Capacities are in seconds per Gbit; lower is better.
inline Allocation balanced_allocation(std::span<const double> capacities,
                                      double total) {
  if (capacities.empty())
    throw std::domain_error("balanced_allocation: no workers");
  Allocation out;
  if (capacities.size() == 1) {
    out.shares = {total};
    out.makespan = capacities[0] * total;
    return out;
  }
  double inv_sum = 0.0;
  for (double c : capacities) inv_sum += 1.0 / c;
  const double makespan = total / inv_sum;
  out.shares.reserve(capacities.size());
  for (double c : capacities) out.shares.push_back(makespan / c);
  out.makespan = makespan;
  return out;
}

inline double balanced_makespan(std::span<const double> capacities,
                                double total) {
  if (capacities.empty())
    throw std::domain_error("balanced_makespan: no workers");
  if (capacities.size() == 1) return capacities[0] * total;
  double inv_sum = 0.0;
  for (double c : capacities) inv_sum += 1.0 / c;
  return total / inv_sum;
}

}  // namespace mectopo
