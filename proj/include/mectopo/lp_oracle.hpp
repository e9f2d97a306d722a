#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "mectopo/allocation.hpp"

namespace mectopo {

// Independent route to the optimal split: treat the min-max problem as
//   min z  s.t.  z >= capacity_l * share_l,  sum(share_l) = total
// and bisect on the candidate makespan z. z is feasible iff the shares
// z / capacity_l can absorb the whole task, i.e. sum(z / capacity_l)
// >= total. This deliberately shares no code with the closed form in
// balanced_allocation; it exists to cross-check it.
inline Allocation lp_oracle(std::span<const double> capacities, double total) {
  if (capacities.empty()) throw std::domain_error("lp_oracle: no workers");
  Allocation out;
  out.shares.assign(capacities.size(), 0.0);
  if (total == 0.0) {
    out.makespan = 0.0;
    return out;
  }

  const auto feasible = [&](double z) {
    double absorbed = 0.0;
    for (double c : capacities) absorbed += z / c;
    return absorbed >= total;
  };

  double lo = 0.0;
  double hi = total * *std::min_element(capacities.begin(), capacities.end());
  for (int it = 0; it < 200 && (hi - lo) > 5e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    out.shares[i] = hi / capacities[i];
    sum += out.shares[i];
  }
  const double scale = total / sum;  // land exactly on the task size
  double makespan = 0.0;
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    out.shares[i] *= scale;
    makespan = std::max(makespan, out.shares[i] * capacities[i]);
  }
  out.makespan = makespan;
  return out;
}

}  // namespace mectopo
