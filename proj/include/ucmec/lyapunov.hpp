#pragma once

#include <vector>

#include "ucmec/workload.hpp"

namespace ucmec {

// Virtual caching-cost queue: backlog of caching spend over the per-slot
// budget. Single queue shared by all users.
struct VirtualQueue {
    double backlog = 0.0;
    double threshold = 0.0;  // Cost^th, the service rate b

    struct Record {
        double arrival;
        double service;
        double backlog_after;
    };
    std::vector<Record> history;
};

VirtualQueue queue_update(VirtualQueue q, double arrival);

// a(t): total caching cost of the clustered base stations.
double arrival_rate(ClusterMask cluster, const CacheDecision& x,
                    const std::vector<ServiceSpec>& services);

// C(t)(a(t) - b) + V * total delay, with the serving BS's hit probability
// inside the delay.
double drift_plus_penalty(const VirtualQueue& q, double v_weight, ClusterMask cluster,
                          const CacheDecision& x, const Task& task, double uplink_rate_bps,
                          const std::vector<ServiceSpec>& services, double backbone_rate_bps);

// One-slot Lyapunov drift upper bound: 0.5 C(t+1)^2 - 0.5 C(t)^2 must not
// exceed Qbar(t) + C(t)(a(t) - b).
double drift_bound(ClusterMask cluster, const std::vector<ServiceSpec>& services, double threshold);
bool drift_bound_holds(double backlog_before, double backlog_after, double arrival,
                       ClusterMask cluster, const std::vector<ServiceSpec>& services,
                       double threshold);

}  // namespace ucmec
