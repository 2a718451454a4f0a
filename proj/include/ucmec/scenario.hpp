#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucmec/workload.hpp"

namespace ucmec {

// Full static parameterization of one experiment. Defaults reproduce the
// reference parameter table; every knob can be overridden in the scenario
// file (plain `key = value` lines, lists comma-separated).
struct Scenario {
    int bs_count = 10;            // M
    int antennas_per_bs = 3;      // A
    int max_cluster_size = 3;     // B
    double bandwidth_hz = 1e7;    // W
    int user_count = 1;           // U
    int service_count = 6;        // K

    double service_cache_gbit = 3.0;   // s_k, uniform
    double service_compute_ghz = 0.3;  // f_k, uniform
    double bs_cache_gbit = 3.0;        // S_m, uniform
    double bs_compute_ghz = 3.0;       // C_m, uniform
    double cost_coeff_step = 0.1;      // xi_k = step * (k+1)

    std::vector<double> zipf_exponents = {0.5};  // one per user

    double data_min_mbit = 10.0;       // task size range [10, 10K]
    double data_max_mbit = 60.0;
    double work_min_gcycles = 0.1;     // workload range [0.1, 0.1K]
    double work_max_gcycles = 0.6;

    double backbone_rate_gbps = 0.05;  // R
    double v_weight = 5.0;             // V
    double cost_threshold = 2.0;       // Cost^th

    int gbd_max_iters = 2000;
    double gbd_epsilon = 1e-4;
    int gibbs_max_iters = 2000;
    double gibbs_phi_start = 0.8;
    double gibbs_phi_end = 0.01;
    double gibbs_rho = 0.5;
    int gibbs_plateau = 200;
    int dichotomy_max_iters = 10;
    double dichotomy_epsilon = 1e-2;

    int slots = 30;                 // T
    std::uint64_t master_seed = 1;
    std::string algorithm = "jo_cdsd";  // jo_cdsd | instant | uplink | block

    double tx_power_w = 0.2;
    double noise_power_w = -1.0;    // < 0: thermal floor at -174 dBm/Hz over W
    double placement_min_km = 0.1;
    double placement_max_km = 1.0;

    double effective_noise_w() const;
    double backbone_rate_bps() const { return backbone_rate_gbps * 1e9; }
    std::vector<ServiceSpec> build_services() const;
    BsResources build_resources() const;
    void validate() const;  // throws on violated invariants

    // Reference multi-user configuration: 3 users, per-user request skews.
    static Scenario default_multi_user();
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

}  // namespace ucmec
