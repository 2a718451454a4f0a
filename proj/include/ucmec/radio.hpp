#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ucmec/numerics.hpp"

namespace ucmec {

// Cluster as a bitmask over base stations (bit m = BS m in the cluster).
using ClusterMask = std::uint32_t;

struct Topology {
    int bs_count = 0;        // M
    int antennas_per_bs = 0; // A
    int user_count = 0;      // U
    std::vector<double> bs_x, bs_y;      // km
    std::vector<double> user_x, user_y;  // km
    double tx_power_w = 0.2;             // p_u, identical across users
    double noise_power_w = 0.0;          // sigma_n^2
    double bandwidth_hz = 1e7;           // W

    double distance_km(int bs, int user) const;
};

// Per-slot small-scale + path-loss channel draw, one length-A coefficient
// vector per (BS, user) pair. Regenerated independently each slot.
struct ChannelRealization {
    int slot = 0;
    int bs_count = 0, user_count = 0, antennas = 0;
    std::vector<CVec> coeff;  // index m * user_count + u

    const CVec& g(int bs, int user) const { return coeff[static_cast<std::size_t>(bs) * user_count + user]; }
};

struct Beamformer {
    int target_user = -1;
    std::vector<int> cluster;  // ascending BS indices
    CVec weights;              // length A * |cluster|, unit norm unless zero_gain
    bool zero_gain = false;    // projection annihilated the target channel
};

double path_loss_db(double distance_km);

// Thermal noise floor: -174 dBm/Hz across bandwidth_hz.
double thermal_noise_w(double bandwidth_hz);

ChannelRealization generate_channels(const Topology& topo, int slot, std::uint64_t seed);

// Target user's channel stacked over the cluster's antennas.
CVec stacked_channel(const ChannelRealization& ch, int user, const std::vector<int>& cluster);

std::vector<int> mask_to_cluster(ClusterMask mask, int bs_count);

// Projection zero-forcing receive beamformer: project the target's stacked
// channel onto the orthogonal complement of the intra-cluster users' span.
Beamformer zf_beamformer(const ChannelRealization& ch, int target_user,
                         const std::vector<int>& cluster,
                         const std::vector<int>& intra_cluster_users);

// Eq-style SINR rate in bit/s; zero-gain beamformers transmit nothing.
double uplink_rate(const ChannelRealization& ch, const Beamformer& bf, int target_user,
                   const std::vector<int>& out_of_cluster_users, const Topology& topo);

// task_bits / rate, +inf when the rate is zero.
double uplink_delay(double task_bits, double rate_bps);

// Memoized per-slot map cluster -> per-group-member ZF rates. Members of
// `group` are mutually intra-cluster; `external` users interfere from outside.
class RateOracle {
public:
    RateOracle(const Topology* topo, const ChannelRealization* ch,
               std::vector<int> group, std::vector<int> external = {});

    const std::vector<double>& rates(ClusterMask mask) const;
    double rate_of(ClusterMask mask, int member_index) const { return rates(mask)[member_index]; }

private:
    const Topology* topo_;
    const ChannelRealization* ch_;
    std::vector<int> group_, external_;
    mutable std::unordered_map<ClusterMask, std::vector<double>> memo_;
};

}  // namespace ucmec
