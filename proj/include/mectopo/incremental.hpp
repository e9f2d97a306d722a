#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mectopo/allocation.hpp"

namespace mectopo {

// Grows a balanced allocation one worker at a time. Admitting a worker
// changes the capacities of the ones already committed (they share the
// transmitter's bandwidth), so each step takes the full vector of
// updated capacities alongside the newcomer's.
//
// The state keeps Lemma-style balance after every commit: all loads
// capacity_l * share_l are equal and the shares sum to the total.
class IncrementalAllocator {
 public:
  IncrementalAllocator(int head_id, double head_capacity, double total)
      : ids_{head_id}, caps_{head_capacity}, shares_{total}, total_(total) {}

  // Gain ratio of makespans (before / after) if `candidate` joined and
  // the committed workers' capacities became `updated`. > 1 means the
  // candidate is worth admitting. Both makespans come from the closed
  // form, which makes the ratio independent of the task size.
  double indicator(int candidate_id, double candidate_capacity,
                   std::span<const double> updated) const {
    require_new(candidate_id);
    require_aligned(updated);
    const double before = balanced_makespan(caps_, total_);
    std::vector<double> after(updated.begin(), updated.end());
    after.push_back(candidate_capacity);
    return before / balanced_makespan(after, total_);
  }

  // Rebalances the committed shares by the gain ratio and hands the
  // freed-up remainder to the candidate. `gain` must be the indicator
  // computed for exactly this candidate/capacity configuration.
  void commit(int candidate_id, double candidate_capacity, double gain,
              std::span<const double> updated) {
    require_new(candidate_id);
    require_aligned(updated);
    double candidate_share = 0.0;
    for (std::size_t l = 0; l < shares_.size(); ++l)
      candidate_share += (1.0 - caps_[l] / (gain * updated[l])) * shares_[l];
    for (std::size_t l = 0; l < shares_.size(); ++l) {
      shares_[l] = shares_[l] * caps_[l] / (updated[l] * gain);
      caps_[l] = updated[l];
      if (shares_[l] < 0.0)
        throw std::logic_error(
            "IncrementalAllocator: negative share after update (capacity "
            "bookkeeping is inconsistent)");
    }
    if (candidate_share < 0.0)
      throw std::logic_error(
          "IncrementalAllocator: negative candidate share (indicator does not "
          "match the supplied capacities)");
    ids_.push_back(candidate_id);
    caps_.push_back(candidate_capacity);
    shares_.push_back(candidate_share);
    ++k_;
  }

  bool contains(int id) const {
    return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
  }

  double makespan() const {
    double j = 0.0;
    for (std::size_t l = 0; l < shares_.size(); ++l)
      j = std::max(j, shares_[l] * caps_[l]);
    return j;
  }

  const std::vector<int>& ids() const { return ids_; }
  const std::vector<double>& capacities() const { return caps_; }
  const std::vector<double>& shares() const { return shares_; }
  double total() const { return total_; }
  int iterations() const { return k_; }

 private:
  void require_new(int id) const {
    if (contains(id))
      throw std::domain_error("IncrementalAllocator: worker " +
                              std::to_string(id) + " already committed");
  }
  void require_aligned(std::span<const double> updated) const {
    if (updated.size() != caps_.size())
      throw std::invalid_argument(
          "IncrementalAllocator: updated capacities must cover every "
          "committed worker");
  }

  std::vector<int> ids_;       // commit order, head first
  std::vector<double> caps_;   // current capacity per worker
  std::vector<double> shares_; // current optimal share per worker
  double total_;
  int k_ = 0;
};

// One team member as seen from its head: local compute cost plus the
// head->member per-unit transmission delay at full bandwidth. With m
// receivers the member's capacity is compute_cost + m * tx_cost.
struct TeamWorker {
  int id = 0;
  double compute_cost = 0.0;  // s/Gbit
  double tx_cost = 0.0;       // s/Gbit at m = 1
};

// Iterative solver for the fixed-team split: admits the members in the
// given order, updating everyone's capacity for the shrinking bandwidth
// share at each step. Equivalent to the closed form on the final
// capacity vector, which tests verify.
inline Allocation opti_solver_p1(int head_id, double head_compute_cost,
                                 std::span<const TeamWorker> members,
                                 double total) {
  IncrementalAllocator state(head_id, head_compute_cost, total);
  std::vector<double> updated;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int m = static_cast<int>(k) + 1;
    updated.clear();
    updated.push_back(head_compute_cost);
    for (std::size_t l = 0; l < k; ++l)
      updated.push_back(members[l].compute_cost + m * members[l].tx_cost);
    const double cand_cap = members[k].compute_cost + m * members[k].tx_cost;
    const double gain = state.indicator(members[k].id, cand_cap, updated);
    state.commit(members[k].id, cand_cap, gain, updated);
  }
  Allocation out;
  out.shares = state.shares();
  out.makespan = state.makespan();
  return out;
}

}  // namespace mectopo
