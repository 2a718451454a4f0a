#pragma once

#include <memory>
#include <vector>

#include "ucmec/radio.hpp"
#include "ucmec/workload.hpp"

namespace ucmec {

// One or more offloading requests merged by service type; members are the
// original users, the task's user field is the representative (lowest index),
// whose channel carries the merged upload.
struct MergedTask {
    Task task;
    std::vector<int> members;
};

// Everything the per-slot solvers need, assembled once per slot by the
// harness (or by tests directly).
struct SlotProblem {
    const Topology* topo = nullptr;
    const ChannelRealization* channels = nullptr;
    const std::vector<ServiceSpec>* services = nullptr;
    const BsResources* resources = nullptr;
    std::vector<MergedTask> tasks;

    double queue_backlog = 0.0;     // C(t)
    double cost_threshold = 2.0;    // Cost^th
    double v_weight = 5.0;          // V
    double backbone_rate_bps = 5e7; // R
    int max_cluster_size = 3;       // B
    ClusterMask allowed_mask = 0;   // candidate BS set (all BSs by default)

    std::shared_ptr<RateOracle> rates;

    int bs_count() const { return topo->bs_count; }
    int service_count() const { return static_cast<int>(services->size()); }
    std::size_t task_count() const { return tasks.size(); }

    double cache_gbit(int k) const { return (*services)[k].cache_bits / 1e9; }
    double compute_ghz(int k) const { return (*services)[k].compute_hz / 1e9; }
    double bs_cache_gbit(int m) const { return resources->cache_bits[m] / 1e9; }
    double bs_compute_ghz(int m) const { return resources->compute_hz[m] / 1e9; }
    // drift objective weight of x_{k,m}: C(t) * xi_k * s_k (Gbit units)
    double drift_weight(int k) const {
        return queue_backlog * (*services)[k].cost_coeff * cache_gbit(k);
    }

    double edge_d(std::size_t i) const { return edge_delay(tasks[i].task, *services); }
    double bkb_d(std::size_t i) const { return backbone_delay(tasks[i].task, backbone_rate_bps); }

    // Mean over merged tasks of d_i / r_i under the given cluster (+inf when
    // any rate is zero).
    double mean_uplink_delay(ClusterMask mask) const;
    // V * mean uplink delay: the clustering-dependent penalty term shared by
    // objective and cut evaluation.
    double uplink_term(ClusterMask mask) const { return v_weight * mean_uplink_delay(mask); }

    // Builds the memoized rate oracle over the merged tasks' representatives.
    void init_rates(std::vector<int> external_users = {});
};

}  // namespace ucmec
