#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ucmec/gbd_primal.hpp"
#include "ucmec/rng.hpp"

namespace ucmec {

// Accumulated Lagrangian cuts for one slot's GBD run; append-only within the
// run, discarded afterwards.
struct CutStore {
    std::vector<Cut> optimality;
    std::vector<Cut> feasibility;

    void add(Cut cut);
    void clear() { optimality.clear(); feasibility.clear(); }
    std::size_t size() const { return optimality.size() + feasibility.size(); }
};

inline constexpr double kFeasibilityPenalty = 1e3;

struct MasterEval {
    double d0 = 0.0;            // max over optimality cuts (lower-bound surface)
    bool has_lower_bound = false;
    double violation = 0.0;     // summed positive feasibility-cut values
    double value = 0.0;         // d0 (or 0) + penalty, what the chain compares
    bool feasible = true;
};

MasterEval master_value(ClusterMask c, const CutStore& cuts, const SlotProblem& slot);

// Eq-style conditional: probability of c_m = 1 given the other vertices,
// softmax over the two candidate master values at temperature phi.
double conditional_probability_one(double value_c0, double value_c1, double phi);

// Eq-style exploration acceptance for a proposed transition.
double acceptance_probability(double value_new, double value_cur, double rho, double phi);

struct GibbsConfig {
    int max_iters = 2000;
    double phi_start = 0.8;
    double phi_end = 0.01;
    double rho = 0.5;
    int plateau = 200;          // stop after this many proposals without an accepted improvement
    std::uint64_t seed = 1;
    ClusterMask initial = 0;    // must satisfy the size bounds
    bool fixed_phi = false;     // hold phi at phi_start (used by concentration checks)
    bool record_trace = true;
};

struct GibbsState {
    ClusterMask c = 0;
    double value = 0.0;
    double phi = 0.8;
    int iteration = 0;
    int since_improvement = 0;
    ClusterMask best = 0;
    double best_value = 0.0;
    int best_iteration = 0;
    std::vector<int> sweep_order;
    std::size_t sweep_pos = 0;
    rng::Stream stream{1};
};

// One vertex visit: conditional resample followed by the exploration
// accept/reject of the proposed flip.
void gibbs_step(GibbsState& state, const CutStore& cuts, const SlotProblem& slot,
                const GibbsConfig& cfg);

struct GibbsResult {
    ClusterMask best = 0;
    double best_value = 0.0;   // chain value at best (includes any penalty)
    double d0 = 0.0;           // lower-bound surface at best
    bool lbd_valid = false;    // true when d0 is a usable lower bound
    int iterations = 0;
    int last_improvement = 0;  // iteration of the final best update
    std::vector<std::pair<int, double>> trace;  // (iteration, current value)
};

GibbsResult run_clustering(const CutStore& cuts, const SlotProblem& slot, const GibbsConfig& cfg);

}  // namespace ucmec
