#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ucmec/slot.hpp"

namespace ucmec {

enum class PrimalStatus { Feasible, Infeasible };

// Outcome of one fixed-clustering caching subproblem. For the feasible case
// the multipliers are the resource-row duals plus the pin-equality dual; for
// the infeasible case they are the slack-minimization duals, with the
// normalized copy exposed for the (2M+1)-group layout.
struct PrimalResult {
    PrimalStatus status = PrimalStatus::Infeasible;
    ClusterMask cluster = 0;
    CacheDecision x;            // feasible: optimal caching; infeasible: mass-pinned point
    double objective = std::numeric_limits<double>::infinity();
    double alpha = 0.0;         // violation measure (infeasible case)

    std::vector<double> mu_cache;    // per BS, >= 0
    std::vector<double> mu_compute;  // per BS, >= 0
    double mu_pin = 0.0;             // max-constraint multiplier, clamped >= 0

    int pinned_bs = -1;              // single-user winning branch
    std::vector<int> assignment;     // multi-user: merged task -> serving BS
    double theta = std::numeric_limits<double>::quiet_NaN();  // multi-user probe level

    // Infeasible-case extras: normalized multipliers (sum = 1) and the
    // relaxation-ladder fallback decision.
    std::vector<double> lambda_normalized;  // layout [cache M | compute M | pin]
    CacheDecision x_relaxed;
    double relaxed_level = 0.0;
};

// A stored Lagrangian cut, evaluable at any clustering: affine coefficients
// plus max-shaped hit terms and (for optimality cuts) the clustering's own
// uplink penalty supplied at evaluation time.
struct Cut {
    bool feasibility = false;
    double constant = 0.0;
    std::vector<double> per_bs;

    struct MaxTerm {
        double weight = 0.0;
        std::vector<double> row;  // frozen caching row; term = weight * max_m(c_m * row[m])
    };
    std::vector<MaxTerm> max_terms;
    bool uses_uplink = false;

    ClusterMask generated_at = 0;
    double generator_value = 0.0;  // primal objective or violation measure

    double affine_value(ClusterMask c) const;
    // Full evaluation; optimality cuts add slot.uplink_term(c).
    double evaluate(ClusterMask c, const SlotProblem& slot) const;
};

// Single-user P-primal: enumerate the pinned BS over the cluster, solve the
// residual LP per branch, keep the best.
PrimalResult solve_primal(const SlotProblem& slot, ClusterMask cluster);

// Minimum-violation variant with the requested-service mass kept pinned;
// includes the step-0.1 relaxation ladder for the fallback decision.
PrimalResult solve_infeasible_primal(const SlotProblem& slot, ClusterMask cluster);

// Multi-user subproblem at a fixed target mean processing delay theta
// (the theta equality is carried as a two-sided band).
PrimalResult solve_primal_theta(const SlotProblem& slot, ClusterMask cluster, double theta);
PrimalResult solve_infeasible_primal_theta(const SlotProblem& slot, ClusterMask cluster, double theta);

// Direct multi-user objective (no theta constraint); used by the block
// descent and uplink baselines. include_drift=false drops the queue term.
PrimalResult solve_primal_direct_multi(const SlotProblem& slot, ClusterMask cluster, bool include_drift);

Cut make_cut(const PrimalResult& result, const SlotProblem& slot);

// The realized drift-plus-penalty value of acting on (cluster, x): mean
// expected delays over merged tasks plus the queue drift term.
double realized_objective(const SlotProblem& slot, ClusterMask cluster, const CacheDecision& x);

}  // namespace ucmec
