#include "ucmec/radio.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucmec/rng.hpp"

namespace ucmec {

double Topology::distance_km(int bs, int user) const {
    double dx = bs_x[bs] - user_x[user];
    double dy = bs_y[bs] - user_y[user];
    return std::sqrt(dx * dx + dy * dy);
}

double path_loss_db(double distance_km) {
    return 128.1 + 37.6 * std::log10(distance_km);
}

double thermal_noise_w(double bandwidth_hz) {
    // -174 dBm/Hz -> watts/Hz, times bandwidth
    return std::pow(10.0, (-174.0 - 30.0) / 10.0) * bandwidth_hz;
}

ChannelRealization generate_channels(const Topology& topo, int slot, std::uint64_t seed) {
    ChannelRealization ch;
    ch.slot = slot;
    ch.bs_count = topo.bs_count;
    ch.user_count = topo.user_count;
    ch.antennas = topo.antennas_per_bs;
    ch.coeff.resize(static_cast<std::size_t>(topo.bs_count) * topo.user_count);

    const double inv_sqrt2 = 0.7071067811865476;
    for (int m = 0; m < topo.bs_count; ++m) {
        for (int u = 0; u < topo.user_count; ++u) {
            double d = topo.distance_km(m, u);
            if (d <= 0.0) throw std::invalid_argument("generate_channels: co-located user and BS");
            double amp = std::sqrt(std::pow(10.0, -path_loss_db(d) / 10.0));
            rng::Stream s(rng::derive(seed, {rng::kChannel, static_cast<std::uint64_t>(slot),
                                             static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(u)}));
            CVec g(topo.antennas_per_bs);
            for (auto& x : g)
                x = amp * cplx(s.gaussian() * inv_sqrt2, s.gaussian() * inv_sqrt2);
            ch.coeff[static_cast<std::size_t>(m) * topo.user_count + u] = std::move(g);
        }
    }
    return ch;
}

CVec stacked_channel(const ChannelRealization& ch, int user, const std::vector<int>& cluster) {
    CVec g;
    g.reserve(cluster.size() * ch.antennas);
    for (int m : cluster) {
        const CVec& gm = ch.g(m, user);
        g.insert(g.end(), gm.begin(), gm.end());
    }
    return g;
}

std::vector<int> mask_to_cluster(ClusterMask mask, int bs_count) {
    std::vector<int> c;
    for (int m = 0; m < bs_count; ++m)
        if (mask & (1u << m)) c.push_back(m);
    return c;
}

Beamformer zf_beamformer(const ChannelRealization& ch, int target_user,
                         const std::vector<int>& cluster,
                         const std::vector<int>& intra_cluster_users) {
    if (cluster.empty()) throw std::invalid_argument("zf_beamformer: empty cluster");

    Beamformer bf;
    bf.target_user = target_user;
    bf.cluster = cluster;

    CVec g_u = stacked_channel(ch, target_user, cluster);
    double g_norm = l2_norm(g_u);

    if (intra_cluster_users.empty()) {
        if (g_norm == 0.0) { bf.zero_gain = true; bf.weights.assign(g_u.size(), cplx(0, 0)); return bf; }
        bf.weights = g_u;
        for (auto& w : bf.weights) w /= g_norm;
        return bf;
    }

    // Columns of G are the interferers' stacked channels; G G^+ projects onto
    // their span.
    const std::size_t dim = g_u.size();
    CMat g_minus(dim, intra_cluster_users.size());
    for (std::size_t j = 0; j < intra_cluster_users.size(); ++j) {
        CVec gv = stacked_channel(ch, intra_cluster_users[j], cluster);
        for (std::size_t i = 0; i < dim; ++i) g_minus.at(i, j) = gv[i];
    }
    CMat pinv = pseudo_inverse(g_minus);
    // w = g_u - G (G^+ g_u)
    CVec tmp = matvec(pinv, g_u);
    CVec w = g_u;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < g_minus.cols; ++j) w[i] -= g_minus.at(i, j) * tmp[j];

    double w_norm = l2_norm(w);
    if (w_norm <= 1e-9 * std::max(g_norm, 1e-300)) {
        bf.zero_gain = true;
        bf.weights.assign(dim, cplx(0, 0));
        return bf;
    }
    for (auto& x : w) x /= w_norm;
    bf.weights = std::move(w);
    return bf;
}

double uplink_rate(const ChannelRealization& ch, const Beamformer& bf, int target_user,
                   const std::vector<int>& out_of_cluster_users, const Topology& topo) {
    if (bf.zero_gain) return 0.0;
    CVec g_u = stacked_channel(ch, target_user, bf.cluster);
    if (g_u.size() != bf.weights.size())
        throw std::invalid_argument("uplink_rate: beamformer/cluster dimension mismatch");

    double signal = topo.tx_power_w * std::norm(vec_dot(bf.weights, g_u));
    double w_norm2 = 0.0;
    for (const cplx& x : bf.weights) w_norm2 += std::norm(x);
    double interference = 0.0;
    for (int w : out_of_cluster_users) {
        CVec g_w = stacked_channel(ch, w, bf.cluster);
        interference += topo.tx_power_w * std::norm(vec_dot(bf.weights, g_w));
    }
    double denom = interference + w_norm2 * topo.noise_power_w;
    return topo.bandwidth_hz * std::log2(1.0 + signal / denom);
}

double uplink_delay(double task_bits, double rate_bps) {
    if (task_bits <= 0.0) throw std::invalid_argument("uplink_delay: task_bits must be positive");
    if (rate_bps <= 0.0) return std::numeric_limits<double>::infinity();
    return task_bits / rate_bps;
}

RateOracle::RateOracle(const Topology* topo, const ChannelRealization* ch,
                       std::vector<int> group, std::vector<int> external)
    : topo_(topo), ch_(ch), group_(std::move(group)), external_(std::move(external)) {}

const std::vector<double>& RateOracle::rates(ClusterMask mask) const {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;

    std::vector<int> cluster = mask_to_cluster(mask, topo_->bs_count);
    std::vector<double> out(group_.size(), 0.0);
    for (std::size_t i = 0; i < group_.size(); ++i) {
        std::vector<int> intra;
        for (std::size_t j = 0; j < group_.size(); ++j)
            if (j != i) intra.push_back(group_[j]);
        Beamformer bf = zf_beamformer(*ch_, group_[i], cluster, intra);
        out[i] = uplink_rate(*ch_, bf, group_[i], external_, *topo_);
    }
    return memo_.emplace(mask, std::move(out)).first->second;
}

}  // namespace ucmec
