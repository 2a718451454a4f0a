#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucmec/radio.hpp"
#include "ucmec/rng.hpp"

namespace ucmec {

struct ServiceSpec {
    int index = 0;            // zero-based
    double cache_bits = 0.0;  // s_k
    double compute_hz = 0.0;  // f_k, CPU cycles/s
    double cost_coeff = 0.0;  // xi_k, per Gbit of cached data
};

struct Task {
    int user = 0;
    int slot = 0;
    double data_bits = 0.0;      // d
    double work_cycles = 0.0;    // w
    int service = 0;             // requested service index (the one-hot o)
};

struct BsResources {
    std::vector<double> compute_hz;  // C_m per BS
    std::vector<double> cache_bits;  // S_m per BS
};

// K x M matrix of caching probabilities, row-major by service.
struct CacheDecision {
    int services = 0, bs_count = 0;
    std::vector<double> x;

    CacheDecision() = default;
    CacheDecision(int k, int m) : services(k), bs_count(m), x(static_cast<std::size_t>(k) * m, 0.0) {}
    double& at(int k, int m) { return x[static_cast<std::size_t>(k) * bs_count + m]; }
    double at(int k, int m) const { return x[static_cast<std::size_t>(k) * bs_count + m]; }
};

struct ConstraintViolation {
    int bs = -1;
    std::string kind;  // "cache", "compute", "cluster_size"
    double excess = 0.0;
};

// Zipf(exponent, K) over ranks 1..K mapped to service indices 0..K-1.
std::vector<double> zipf_probabilities(double exponent, int k);
int sample_request(double exponent, int k, rng::Stream& stream);

// Sum_k xi_k * (s_k in Gbit) * x_{k,m}; Gbit normalization keeps the values
// commensurate with the cost threshold.
double caching_cost(int bs, const CacheDecision& x, const std::vector<ServiceSpec>& services);

// Serving BS: clustered BS with the highest caching probability for the
// requested service, ties to the lowest index.
struct ServingBs {
    int bs = -1;
    double hit_probability = 0.0;
};
ServingBs serving_bs(const Task& task, ClusterMask cluster, const CacheDecision& x);

double edge_delay(const Task& task, const std::vector<ServiceSpec>& services);
double backbone_delay(const Task& task, double backbone_rate_bps);
double processing_delay(const Task& task, double hit_probability,
                        const std::vector<ServiceSpec>& services, double backbone_rate_bps);
double total_delay(double uplink_s, double processing_s);

std::vector<ConstraintViolation> check_constraints(ClusterMask cluster, const CacheDecision& x,
                                                   const std::vector<ServiceSpec>& services,
                                                   const BsResources& res, int max_cluster_size);

}  // namespace ucmec
