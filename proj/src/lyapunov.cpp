#include "ucmec/lyapunov.hpp"

#include <algorithm>
#include <stdexcept>

namespace ucmec {

VirtualQueue queue_update(VirtualQueue q, double arrival) {
    if (arrival < 0.0) throw std::invalid_argument("queue_update: negative arrival");
    double next = std::max(q.backlog + arrival - q.threshold, 0.0);
    q.history.push_back({arrival, q.threshold, next});
    q.backlog = next;
    return q;
}

double arrival_rate(ClusterMask cluster, const CacheDecision& x,
                    const std::vector<ServiceSpec>& services) {
    double a = 0.0;
    for (int m = 0; m < x.bs_count; ++m)
        if (cluster & (1u << m)) a += caching_cost(m, x, services);
    return a;
}

double drift_plus_penalty(const VirtualQueue& q, double v_weight, ClusterMask cluster,
                          const CacheDecision& x, const Task& task, double uplink_rate_bps,
                          const std::vector<ServiceSpec>& services, double backbone_rate_bps) {
    double a = arrival_rate(cluster, x, services);
    ServingBs sb = serving_bs(task, cluster, x);
    double up = uplink_delay(task.data_bits, uplink_rate_bps);
    double pro = processing_delay(task, sb.hit_probability, services, backbone_rate_bps);
    return q.backlog * (a - q.threshold) + v_weight * total_delay(up, pro);
}

double drift_bound(ClusterMask cluster, const std::vector<ServiceSpec>& services, double threshold) {
    // Qbar(t) = 0.5 ((sum over clustered BSs of sum_k xi_k s_k)^2 + b^2)
    double full = 0.0;
    for (const ServiceSpec& s : services) full += s.cost_coeff * (s.cache_bits / 1e9);
    int count = 0;
    for (ClusterMask m = cluster; m; m &= m - 1) ++count;
    double worst = full * count;
    return 0.5 * (worst * worst + threshold * threshold);
}

bool drift_bound_holds(double backlog_before, double backlog_after, double arrival,
                       ClusterMask cluster, const std::vector<ServiceSpec>& services,
                       double threshold) {
    double lhs = 0.5 * backlog_after * backlog_after - 0.5 * backlog_before * backlog_before;
    double rhs = drift_bound(cluster, services, threshold) + backlog_before * (arrival - threshold);
    return lhs <= rhs + 1e-9;
}

}  // namespace ucmec
