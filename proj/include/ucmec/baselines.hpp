#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucmec/jo_cdsd.hpp"

namespace ucmec {

enum class BaselineKind { InstantOptimal, UplinkOptimal, BlockDescent };

struct BaselineOutcome {
    ClusterMask cluster = 0;
    CacheDecision x;
    double objective = 0.0;           // drift-plus-penalty value of the decision
    std::vector<double> descent_trace;  // block descent objective per round
    std::vector<std::string> flags;
};

// Enumeration guard: exhaustive clustering traversal refuses beyond this.
inline constexpr int kMaxEnumerableBs = 16;

// Number of clusterings with 1 <= |c| <= max_size (the size-valid candidates).
std::uint64_t count_size_valid_clusterings(int bs_count, int max_size);
// Raw traversal space of the exhaustive search, 2^M.
std::uint64_t traversal_space(int bs_count);

// Exhaustive clustering x exact primal; the per-slot optimum within the
// shared feasible space.
BaselineOutcome instant_optimal(const SlotProblem& slot);

// Rate-optimal clustering first, then caching with the drift term dropped;
// leftover capacity is filled with the requested service regardless of cost.
BaselineOutcome uplink_optimal(const SlotProblem& slot);

// Alternating single-flip clustering search and exact caching solve.
BaselineOutcome block_descent(const SlotProblem& slot, ClusterMask start = 0);

// Multi-user versions. instant_optimal_multi runs the same theta bisection
// as the main algorithm with each probe solved by exhaustive enumeration.
MultiSlotResult instant_optimal_multi(const SlotProblem& slot, int max_probes, double epsilon);
BaselineOutcome uplink_optimal_multi(const SlotProblem& slot);
BaselineOutcome block_descent_multi(const SlotProblem& slot, ClusterMask start = 0);

// Shared enumeration helper (ascending mask order, honoring allowed_mask).
std::vector<ClusterMask> enumerate_clusterings(const SlotProblem& slot);

}  // namespace ucmec
