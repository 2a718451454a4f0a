#include "ucmec/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucmec/lyapunov.hpp"

namespace ucmec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::uint64_t count_size_valid_clusterings(int bs_count, int max_size) {
    // sum_{b=1..B} C(M, b)
    std::uint64_t total = 0;
    for (int b = 1; b <= std::min(max_size, bs_count); ++b) {
        std::uint64_t c = 1;
        for (int i = 0; i < b; ++i) c = c * static_cast<std::uint64_t>(bs_count - i) / (i + 1);
        total += c;
    }
    return total;
}

std::uint64_t traversal_space(int bs_count) { return 1ull << bs_count; }

std::vector<ClusterMask> enumerate_clusterings(const SlotProblem& slot) {
    if (slot.bs_count() > kMaxEnumerableBs)
        throw std::invalid_argument("enumerate_clusterings: refusing exhaustive traversal beyond " +
                                    std::to_string(kMaxEnumerableBs) + " base stations");
    std::vector<ClusterMask> out;
    ClusterMask top = static_cast<ClusterMask>(1u) << slot.bs_count();
    for (ClusterMask c = 1; c < top; ++c) {
        if ((c & ~slot.allowed_mask) != 0) continue;
        int n = std::popcount(c);
        if (n < 1 || n > slot.max_cluster_size) continue;
        out.push_back(c);
    }
    return out;
}

BaselineOutcome instant_optimal(const SlotProblem& slot) {
    BaselineOutcome best;
    best.objective = kInf;
    bool found = false;
    for (ClusterMask c : enumerate_clusterings(slot)) {
        PrimalResult pr = solve_primal(slot, c);
        if (pr.status != PrimalStatus::Feasible) continue;
        if (!found || pr.objective < best.objective - 1e-12) {
            found = true;
            best.cluster = c;
            best.x = pr.x;
            best.objective = pr.objective;
        }
    }
    if (!found) {
        best.flags.push_back("cloud_fallback");
        best.cluster = nearest_bs_mask(slot);
        best.x = CacheDecision(slot.service_count(), slot.bs_count());
        best.objective = realized_objective(slot, best.cluster, best.x);
    }
    return best;
}

namespace {

// Cost-blind redundancy fill: raise requested services to probability one on
// every cluster BS whose leftover capacity admits them.
void fill_leftover(const SlotProblem& slot, ClusterMask cluster, CacheDecision& x) {
    for (int m = 0; m < slot.bs_count(); ++m) {
        if (!(cluster & (1u << m))) continue;
        double cache_left = slot.bs_cache_gbit(m);
        double compute_left = slot.bs_compute_ghz(m);
        for (int k = 0; k < slot.service_count(); ++k) {
            cache_left -= x.at(k, m) * slot.cache_gbit(k);
            compute_left -= x.at(k, m) * slot.compute_ghz(k);
        }
        for (const MergedTask& t : slot.tasks) {
            int k = t.task.service;
            double need_cache = (1.0 - x.at(k, m)) * slot.cache_gbit(k);
            double need_compute = (1.0 - x.at(k, m)) * slot.compute_ghz(k);
            if (need_cache <= cache_left + 1e-9 && need_compute <= compute_left + 1e-9) {
                cache_left -= need_cache;
                compute_left -= need_compute;
                x.at(k, m) = 1.0;
            }
        }
    }
}

ClusterMask best_rate_cluster(const SlotProblem& slot) {
    ClusterMask best = 0;
    double best_delay = kInf;
    for (ClusterMask c : enumerate_clusterings(slot)) {
        double d = slot.mean_uplink_delay(c);
        if (d < best_delay - 1e-15) { best_delay = d; best = c; }
    }
    if (best == 0) throw std::runtime_error("uplink_optimal: no candidate clustering");
    return best;
}

}  // namespace

BaselineOutcome uplink_optimal(const SlotProblem& slot) {
    BaselineOutcome out;
    out.cluster = best_rate_cluster(slot);

    // caching minimizes total delay only: solve the primal with the queue
    // pressure zeroed out
    SlotProblem delay_only = slot;
    delay_only.queue_backlog = 0.0;
    PrimalResult pr = solve_primal(delay_only, out.cluster);
    if (pr.status == PrimalStatus::Feasible) {
        out.x = pr.x;
    } else {
        out.x = CacheDecision(slot.service_count(), slot.bs_count());
        out.flags.push_back("cloud_fallback");
    }
    fill_leftover(slot, out.cluster, out.x);
    out.objective = realized_objective(slot, out.cluster, out.x);
    return out;
}

namespace {

// One block-descent run over a supplied caching solver and objective.
template <typename SolveX, typename Objective>
BaselineOutcome block_descent_impl(const SlotProblem& slot, ClusterMask start, SolveX solve_x,
                                   Objective objective) {
    BaselineOutcome out;
    ClusterMask c = start ? start : nearest_bs_mask(slot);

    CacheDecision x(slot.service_count(), slot.bs_count());
    bool have_x = false;
    {
        auto first = solve_x(c);
        if (first.second) { x = first.first; have_x = true; }
    }
    if (!have_x) out.flags.push_back("cloud_fallback");
    double obj = objective(c, x);
    out.descent_trace.push_back(obj);

    const int max_rounds = 50;
    for (int round = 0; round < max_rounds; ++round) {
        bool improved = false;

        // clustering block: best single flip keeping the current caching valid
        ClusterMask best_c = c;
        double best_obj = obj;
        for (int m = 0; m < slot.bs_count(); ++m) {
            if (!(slot.allowed_mask & (1u << m))) continue;
            ClusterMask cand = c ^ (1u << m);
            int n = std::popcount(cand);
            if (n < 1 || n > slot.max_cluster_size) continue;
            if (!check_constraints(cand, x, *slot.services, *slot.resources, slot.max_cluster_size)
                     .empty())
                continue;
            double v = objective(cand, x);
            if (v < best_obj - 1e-9) { best_obj = v; best_c = cand; }
        }
        if (best_c != c) { c = best_c; obj = best_obj; improved = true; }

        // caching block: exact solve under the fixed clustering
        auto xr = solve_x(c);
        if (xr.second) {
            double v = objective(c, xr.first);
            if (v < obj - 1e-6) { x = xr.first; obj = v; improved = true; }
        }

        out.descent_trace.push_back(obj);
        if (!improved) break;
    }

    out.cluster = c;
    out.x = x;
    out.objective = obj;
    return out;
}

}  // namespace

BaselineOutcome block_descent(const SlotProblem& slot, ClusterMask start) {
    auto solve_x = [&](ClusterMask c) -> std::pair<CacheDecision, bool> {
        PrimalResult pr = solve_primal(slot, c);
        if (pr.status == PrimalStatus::Feasible) return {pr.x, true};
        return {CacheDecision(slot.service_count(), slot.bs_count()), false};
    };
    auto objective = [&](ClusterMask c, const CacheDecision& x) {
        return realized_objective(slot, c, x);
    };
    return block_descent_impl(slot, start, solve_x, objective);
}

MultiSlotResult instant_optimal_multi(const SlotProblem& slot, int max_probes, double epsilon) {
    ThetaProbe probe = [&](double theta, int) {
        GbdRunResult r;
        r.iterations = 1;
        double best = kInf;
        bool found = false;
        for (ClusterMask c : enumerate_clusterings(slot)) {
            PrimalResult pr = solve_primal_theta(slot, c, theta);
            if (pr.status != PrimalStatus::Feasible) continue;
            if (!found || pr.objective < best - 1e-12) {
                found = true;
                best = pr.objective;
                r.cluster = c;
                r.x = pr.x;
            }
        }
        r.ubd = found ? best : kInf;
        r.lbd = r.ubd;
        r.objective = r.ubd;
        r.converged = found;
        return r;
    };
    return dichotomy_solve(slot, probe, max_probes, epsilon);
}

BaselineOutcome uplink_optimal_multi(const SlotProblem& slot) {
    BaselineOutcome out;
    out.cluster = best_rate_cluster(slot);
    PrimalResult pr = solve_primal_direct_multi(slot, out.cluster, /*include_drift=*/false);
    if (pr.status == PrimalStatus::Feasible) {
        out.x = pr.x;
    } else {
        out.x = CacheDecision(slot.service_count(), slot.bs_count());
        out.flags.push_back("cloud_fallback");
    }
    out.objective = realized_objective(slot, out.cluster, out.x);
    return out;
}

BaselineOutcome block_descent_multi(const SlotProblem& slot, ClusterMask start) {
    auto solve_x = [&](ClusterMask c) -> std::pair<CacheDecision, bool> {
        PrimalResult pr = solve_primal_direct_multi(slot, c, /*include_drift=*/true);
        if (pr.status == PrimalStatus::Feasible) return {pr.x, true};
        return {CacheDecision(slot.service_count(), slot.bs_count()), false};
    };
    auto objective = [&](ClusterMask c, const CacheDecision& x) {
        return realized_objective(slot, c, x);
    };
    return block_descent_impl(slot, start, solve_x, objective);
}

}  // namespace ucmec
