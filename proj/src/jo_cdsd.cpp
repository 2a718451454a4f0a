#include "ucmec/jo_cdsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace ucmec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ClusterMask nearest_bs_mask(const SlotProblem& slot) {
    int user = slot.tasks.empty() ? 0 : slot.tasks[0].task.user;
    int best = -1;
    double best_d = kInf;
    for (int m = 0; m < slot.bs_count(); ++m) {
        if (!(slot.allowed_mask & (1u << m))) continue;
        double d = slot.topo->distance_km(m, user);
        if (d < best_d) { best_d = d; best = m; }
    }
    if (best < 0) throw std::invalid_argument("nearest_bs_mask: no allowed base stations");
    return 1u << best;
}

GbdRunResult gbd_loop(const SlotProblem& slot, const PrimalSolver& primal,
                      const InfeasibleSolver& infeasible, const GbdConfig& cfg,
                      std::uint64_t seed, ClusterMask initial) {
    GbdRunResult res;
    CutStore cuts;
    ClusterMask current = initial;
    double ubd = kInf, lbd = -kInf;
    bool have_incumbent = false;

    for (int tau = 1; tau <= cfg.max_iters; ++tau) {
        res.iterations = tau;
        PrimalResult pr = primal(current);
        if (pr.status == PrimalStatus::Feasible) {
            if (pr.objective < ubd) {
                ubd = pr.objective;
                res.cluster = current;
                res.x = pr.x;
                have_incumbent = true;
            }
            cuts.add(make_cut(pr, slot));
        } else {
            PrimalResult ir = infeasible(current);
            cuts.add(make_cut(ir, slot));
            if (!have_incumbent) {
                // remember a fallback in case no clustering ever turns feasible
                res.cluster = current;
                res.x = ir.x_relaxed;
                if (ir.relaxed_level > 0.0 && ir.relaxed_level < 1.0)
                    res.flags.push_back("relaxed_pin");
            }
        }

        GibbsConfig gc = cfg.gibbs;
        gc.seed = rng::derive(seed, {rng::kGibbs, static_cast<std::uint64_t>(tau)});
        gc.initial = current;
        GibbsResult master = run_clustering(cuts, slot, gc);
        res.gibbs_trace = std::move(master.trace);

        if (master.lbd_valid) {
            double candidate = std::min(master.d0, ubd);  // heuristic master never certifies above UBD
            lbd = std::max(lbd, candidate);
        }
        res.trace.push_back({tau, ubd, lbd});

        if (std::isfinite(ubd) && ubd - lbd <= cfg.epsilon) {
            res.converged = true;
            break;
        }
        current = master.best;
    }

    res.ubd = ubd;
    res.lbd = lbd;
    if (!res.converged) res.flags.push_back("budget_exhausted");
    if (!have_incumbent) {
        res.flags.push_back("cloud_fallback");
        if (res.x.bs_count == 0) res.x = CacheDecision(slot.service_count(), slot.bs_count());
        res.objective = realized_objective(slot, res.cluster, res.x);
    } else {
        res.objective = ubd;
    }
    return res;
}

GbdRunResult solve_slot_single(const SlotProblem& slot, const GbdConfig& cfg, std::uint64_t seed) {
    if (slot.task_count() != 1)
        throw std::invalid_argument("solve_slot_single: expected a single merged task");
    return gbd_loop(
        slot, [&](ClusterMask c) { return solve_primal(slot, c); },
        [&](ClusterMask c) { return solve_infeasible_primal(slot, c); }, cfg, seed,
        nearest_bs_mask(slot));
}

ThetaBracket theta_bounds(const SlotProblem& slot) {
    if (slot.tasks.empty()) throw std::invalid_argument("theta_bounds: no tasks");
    double lo = 0.0, hi = 0.0;
    const double n = static_cast<double>(slot.task_count());
    for (std::size_t i = 0; i < slot.task_count(); ++i) {
        lo += slot.edge_d(i) / n;   // all served at the edge
        hi += slot.bkb_d(i) / n;    // all pushed to the cloud
    }
    ThetaBracket b;
    b.lo = lo;
    b.hi = hi;
    if (lo > hi) {
        std::swap(b.lo, b.hi);
        b.swapped = true;
    }
    return b;
}

std::vector<MergedTask> merge_requests(const std::vector<Task>& tasks) {
    std::map<int, MergedTask> by_service;
    for (const Task& t : tasks) {
        auto it = by_service.find(t.service);
        if (it == by_service.end()) {
            MergedTask m;
            m.task = t;
            m.members = {t.user};
            by_service.emplace(t.service, std::move(m));
        } else {
            MergedTask& m = it->second;
            m.task.data_bits += t.data_bits;
            m.task.work_cycles += t.work_cycles;
            m.members.push_back(t.user);
            if (t.user < m.task.user) m.task.user = t.user;  // representative: lowest index
        }
    }
    std::vector<MergedTask> out;
    out.reserve(by_service.size());
    for (auto& [k, m] : by_service) {
        std::sort(m.members.begin(), m.members.end());
        out.push_back(std::move(m));
    }
    return out;
}

MultiSlotResult dichotomy_solve(const SlotProblem& slot, const ThetaProbe& probe,
                                int max_probes, double epsilon) {
    ThetaBracket bracket = theta_bounds(slot);
    MultiSlotResult out;
    if (bracket.swapped) out.flags.push_back("bracket_swapped");

    double lo = bracket.lo, hi = bracket.hi;
    double mid = 0.5 * (lo + hi);
    double mid_old = mid;
    bool have_best = false;
    double best_objective = kInf;

    for (int it = 1; it <= max_probes; ++it) {
        out.probes = it;
        GbdRunResult r = probe(mid, it);
        out.total_gbd_iterations += r.iterations;
        bool feasible = std::isfinite(r.ubd);
        if (feasible) {
            out.any_feasible = true;
            if (!have_best || r.objective < best_objective - 1e-12 ||
                (std::abs(r.objective - best_objective) <= 1e-12 && mid < out.theta)) {
                have_best = true;
                best_objective = r.objective;
                out.run = std::move(r);
                out.theta = mid;
            }
            hi = mid;
        } else {
            lo = mid;
        }
        double mid_new = 0.5 * (lo + hi);
        bool small_step = std::abs(mid_new - mid_old) < epsilon;
        mid_old = mid;
        mid = mid_new;
        if (small_step && (hi - lo) < epsilon) break;
    }
    out.bracket_width = hi - lo;

    if (!out.any_feasible) {
        // every probe failed: push everything to the cloud, flag it
        out.flags.push_back("cloud_fallback");
        out.run.cluster = nearest_bs_mask(slot);
        out.run.x = CacheDecision(slot.service_count(), slot.bs_count());
        out.run.objective = realized_objective(slot, out.run.cluster, out.run.x);
        out.run.ubd = out.run.objective;
        out.run.lbd = -kInf;
        out.theta = bracket.hi;
    }
    return out;
}

MultiSlotResult solve_slot_multi(const SlotProblem& slot, const GbdConfig& cfg, std::uint64_t seed) {
    ClusterMask init = nearest_bs_mask(slot);
    ThetaProbe probe = [&](double theta, int probe_index) {
        return gbd_loop(
            slot, [&, theta](ClusterMask c) { return solve_primal_theta(slot, c, theta); },
            [&, theta](ClusterMask c) { return solve_infeasible_primal_theta(slot, c, theta); }, cfg,
            rng::derive(seed, {rng::kInstance, static_cast<std::uint64_t>(probe_index)}), init);
    };
    return dichotomy_solve(slot, probe, cfg.dichotomy_max_iters, cfg.dichotomy_epsilon);
}

}  // namespace ucmec
