#include "ucmec/workload.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ucmec {

std::vector<double> zipf_probabilities(double exponent, int k) {
    if (k < 1 || exponent < 0.0) throw std::invalid_argument("zipf_probabilities: bad parameters");
    std::vector<double> p(k);
    double z = 0.0;
    for (int r = 1; r <= k; ++r) z += std::pow(static_cast<double>(r), -exponent);
    for (int r = 1; r <= k; ++r) p[r - 1] = std::pow(static_cast<double>(r), -exponent) / z;
    return p;
}

int sample_request(double exponent, int k, rng::Stream& stream) {
    std::vector<double> p = zipf_probabilities(exponent, k);
    double u = stream.u01();
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    return k - 1;
}

double caching_cost(int bs, const CacheDecision& x, const std::vector<ServiceSpec>& services) {
    double cost = 0.0;
    for (int k = 0; k < x.services; ++k)
        cost += services[k].cost_coeff * (services[k].cache_bits / 1e9) * x.at(k, bs);
    return cost;
}

ServingBs serving_bs(const Task& task, ClusterMask cluster, const CacheDecision& x) {
    if (cluster == 0) throw std::invalid_argument("serving_bs: empty cluster");
    ServingBs best;
    for (int m = 0; m < x.bs_count; ++m) {
        if (!(cluster & (1u << m))) continue;
        double p = x.at(task.service, m);
        if (best.bs < 0 || p > best.hit_probability) { best.bs = m; best.hit_probability = p; }
    }
    return best;
}

double edge_delay(const Task& task, const std::vector<ServiceSpec>& services) {
    return task.work_cycles / services[task.service].compute_hz;
}

double backbone_delay(const Task& task, double backbone_rate_bps) {
    return task.data_bits / backbone_rate_bps;
}

double processing_delay(const Task& task, double hit_probability,
                        const std::vector<ServiceSpec>& services, double backbone_rate_bps) {
    if (hit_probability < 0.0 || hit_probability > 1.0)
        throw std::invalid_argument("processing_delay: hit probability outside [0,1]");
    return hit_probability * edge_delay(task, services) +
           (1.0 - hit_probability) * backbone_delay(task, backbone_rate_bps);
}

double total_delay(double uplink_s, double processing_s) {
    return uplink_s + processing_s;  // +inf propagates
}

std::vector<ConstraintViolation> check_constraints(ClusterMask cluster, const CacheDecision& x,
                                                   const std::vector<ServiceSpec>& services,
                                                   const BsResources& res, int max_cluster_size) {
    std::vector<ConstraintViolation> out;
    const double tol = 1e-9;
    int size = std::popcount(cluster);
    if (size < 1 || size > max_cluster_size)
        out.push_back({-1, "cluster_size", static_cast<double>(size)});

    for (int m = 0; m < x.bs_count; ++m) {
        double in_cluster = (cluster & (1u << m)) ? 1.0 : 0.0;
        double cache_used = 0.0, compute_used = 0.0;
        for (int k = 0; k < x.services; ++k) {
            cache_used += x.at(k, m) * services[k].cache_bits;
            compute_used += x.at(k, m) * services[k].compute_hz;
        }
        double cache_cap = in_cluster * res.cache_bits[m];
        double compute_cap = in_cluster * res.compute_hz[m];
        if (cache_used > cache_cap + tol * std::max(1.0, cache_cap))
            out.push_back({m, "cache", cache_used - cache_cap});
        if (compute_used > compute_cap + tol * std::max(1.0, compute_cap))
            out.push_back({m, "compute", compute_used - compute_cap});
    }
    return out;
}

}  // namespace ucmec
