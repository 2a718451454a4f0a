#include "ucmec/gbd_master.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucmec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Large finite stand-in so infinite uplink terms still order correctly
// inside exp() arithmetic.
double squash(double v) { return std::isinf(v) ? (v > 0 ? 1e30 : -1e30) : v; }
}  // namespace

void CutStore::add(Cut cut) {
    if (cut.feasibility) feasibility.push_back(std::move(cut));
    else optimality.push_back(std::move(cut));
}

MasterEval master_value(ClusterMask c, const CutStore& cuts, const SlotProblem& slot) {
    MasterEval ev;
    if (cuts.optimality.empty()) {
        ev.d0 = -kInf;  // flagged sentinel: no lower-bound surface yet
        ev.has_lower_bound = false;
    } else {
        ev.d0 = -kInf;
        for (const Cut& cut : cuts.optimality) ev.d0 = std::max(ev.d0, cut.evaluate(c, slot));
        ev.has_lower_bound = true;
    }
    ev.violation = 0.0;
    for (const Cut& cut : cuts.feasibility) {
        double v = cut.evaluate(c, slot);
        if (v > 0.0) ev.violation += v;
    }
    ev.feasible = ev.violation <= 1e-9;
    ev.value = (ev.has_lower_bound ? ev.d0 : 0.0) + kFeasibilityPenalty * ev.violation;
    return ev;
}

double conditional_probability_one(double value_c0, double value_c1, double phi) {
    // pi(c_m = 1) = exp(-F1/phi) / (exp(-F0/phi) + exp(-F1/phi))
    double z = (squash(value_c1) - squash(value_c0)) / phi;
    if (z > 40.0) return 0.0;
    if (z < -40.0) return 1.0;
    return 1.0 / (1.0 + std::exp(z));
}

double acceptance_probability(double value_new, double value_cur, double rho, double phi) {
    double diff = std::min(squash(value_new) - squash(value_cur), rho);
    double z = diff / phi;
    if (z > 40.0) return 0.0;
    if (z < -40.0) return 1.0;
    return 1.0 / (1.0 + std::exp(z));
}

namespace {

bool size_valid(ClusterMask c, const SlotProblem& slot) {
    int n = std::popcount(c);
    return n >= 1 && n <= slot.max_cluster_size && (c & ~slot.allowed_mask) == 0;
}

std::vector<int> allowed_vertices(const SlotProblem& slot) {
    std::vector<int> v;
    for (int m = 0; m < slot.bs_count(); ++m)
        if (slot.allowed_mask & (1u << m)) v.push_back(m);
    return v;
}

}  // namespace

void gibbs_step(GibbsState& state, const CutStore& cuts, const SlotProblem& slot,
                const GibbsConfig& cfg) {
    if (state.sweep_pos >= state.sweep_order.size()) {
        // new randomized sweep over the vertices
        for (std::size_t i = state.sweep_order.size(); i > 1; --i)
            std::swap(state.sweep_order[i - 1], state.sweep_order[state.stream.index(i)]);
        state.sweep_pos = 0;
    }
    int m = state.sweep_order[state.sweep_pos++];
    ClusterMask bit = 1u << m;

    ClusterMask c0 = state.c & ~bit;
    ClusterMask c1 = state.c | bit;
    bool ok0 = size_valid(c0, slot);
    bool ok1 = size_valid(c1, slot);

    ++state.iteration;
    ++state.since_improvement;
    if (!cfg.fixed_phi) {
        double frac = static_cast<double>(state.iteration) / std::max(1, cfg.max_iters);
        state.phi = cfg.phi_start * std::pow(cfg.phi_end / cfg.phi_start, std::min(frac, 1.0));
    }

    double p1;
    if (ok0 && ok1) {
        double f0 = master_value(c0, cuts, slot).value;
        double f1 = master_value(c1, cuts, slot).value;
        p1 = conditional_probability_one(f0, f1, state.phi);
    } else if (ok1) {
        p1 = 1.0;
    } else if (ok0) {
        p1 = 0.0;
    } else {
        p1 = 0.5;  // both sides out of bounds; degenerate, keep current
    }

    ClusterMask proposed = (state.stream.u01() < p1) ? c1 : c0;
    if (proposed == state.c) return;
    if (!size_valid(proposed, slot)) return;  // reject outright

    double f_new = master_value(proposed, cuts, slot).value;
    double eta = acceptance_probability(f_new, state.value, cfg.rho, state.phi);
    if (state.stream.u01() < eta) {
        if (f_new < state.value - 1e-12) state.since_improvement = 0;  // accepted descent
        state.c = proposed;
        state.value = f_new;
        if (f_new < state.best_value - 1e-12) {
            state.best = proposed;
            state.best_value = f_new;
            state.best_iteration = state.iteration;
        }
    }
}

GibbsResult run_clustering(const CutStore& cuts, const SlotProblem& slot, const GibbsConfig& cfg) {
    ClusterMask init = cfg.initial;
    if (!size_valid(init, slot)) {
        // fall back to the lowest allowed BS
        init = 0;
        for (int m = 0; m < slot.bs_count(); ++m)
            if (slot.allowed_mask & (1u << m)) { init = 1u << m; break; }
        if (init == 0) throw std::invalid_argument("run_clustering: no allowed base stations");
    }

    GibbsState st;
    st.c = init;
    st.value = master_value(init, cuts, slot).value;
    st.phi = cfg.phi_start;
    st.best = init;
    st.best_value = st.value;
    st.best_iteration = 0;
    st.sweep_order = allowed_vertices(slot);
    st.sweep_pos = st.sweep_order.size();  // trigger shuffle on first step
    st.stream = rng::Stream(rng::derive(cfg.seed, {rng::kGibbs}));

    GibbsResult res;
    if (cfg.record_trace) res.trace.reserve(static_cast<std::size_t>(cfg.max_iters));
    while (st.iteration < cfg.max_iters) {
        gibbs_step(st, cuts, slot, cfg);
        if (cfg.record_trace) res.trace.emplace_back(st.iteration, st.value);
        if (st.since_improvement >= cfg.plateau) break;
    }

    res.best = st.best;
    res.best_value = st.best_value;
    res.iterations = st.iteration;
    res.last_improvement = st.best_iteration;
    MasterEval ev = master_value(st.best, cuts, slot);
    res.d0 = ev.d0;
    res.lbd_valid = ev.has_lower_bound && ev.feasible;
    return res;
}

}  // namespace ucmec
