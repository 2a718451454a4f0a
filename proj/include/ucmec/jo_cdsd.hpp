#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ucmec/gbd_master.hpp"

namespace ucmec {

struct GbdConfig {
    int max_iters = 2000;
    double epsilon = 1e-4;
    GibbsConfig gibbs;
    int dichotomy_max_iters = 10;
    double dichotomy_epsilon = 1e-2;
};

struct GbdTracePoint {
    int tau = 0;
    double ubd = 0.0;
    double lbd = 0.0;
};

// One slot solved: the incumbent decisions plus the bound bookkeeping.
struct GbdRunResult {
    ClusterMask cluster = 0;
    CacheDecision x;
    double objective = 0.0;  // final UBD (realizable incumbent value)
    double ubd = 0.0, lbd = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<GbdTracePoint> trace;
    std::vector<std::pair<int, double>> gibbs_trace;  // last master run, (iter, F)
    std::vector<std::string> flags;
};

using PrimalSolver = std::function<PrimalResult(ClusterMask)>;
using InfeasibleSolver = std::function<PrimalResult(ClusterMask)>;

// Generic GBD loop: alternate the supplied primal (updating UBD and the cut
// store) with the Gibbs master (updating LBD) until the gap closes.
GbdRunResult gbd_loop(const SlotProblem& slot, const PrimalSolver& primal,
                      const InfeasibleSolver& infeasible, const GbdConfig& cfg,
                      std::uint64_t seed, ClusterMask initial);

// Nearest BS to the first task's representative user, within the allowed set.
ClusterMask nearest_bs_mask(const SlotProblem& slot);

GbdRunResult solve_slot_single(const SlotProblem& slot, const GbdConfig& cfg, std::uint64_t seed);

struct ThetaBracket {
    double lo = 0.0, hi = 0.0;
    bool swapped = false;  // edge slower than cloud: bounds arrived inverted
};

ThetaBracket theta_bounds(const SlotProblem& slot);

std::vector<MergedTask> merge_requests(const std::vector<Task>& tasks);

struct MultiSlotResult {
    GbdRunResult run;          // decisions of the best feasible probe
    double theta = 0.0;        // probe level the decisions came from
    int probes = 0;
    double bracket_width = 0.0;
    bool any_feasible = false;
    int total_gbd_iterations = 0;
    std::vector<std::string> flags;
};

// Bisection on the target mean processing delay; each probe is a full GBD
// solve with the theta band folded into the primal.
MultiSlotResult solve_slot_multi(const SlotProblem& slot, const GbdConfig& cfg, std::uint64_t seed);

// Same bisection driven by a caller-supplied probe (used by the exhaustive
// baseline and the oracle tests).
using ThetaProbe = std::function<GbdRunResult(double theta, int probe_index)>;
MultiSlotResult dichotomy_solve(const SlotProblem& slot, const ThetaProbe& probe,
                                int max_probes, double epsilon);

}  // namespace ucmec
