#include "ucmec/gbd_primal.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ucmec/lp.hpp"
#include "ucmec/lyapunov.hpp"

namespace ucmec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThetaBand = 1e-9;  // two-sided band standing in for the theta equality
}  // namespace

double SlotProblem::mean_uplink_delay(ClusterMask mask) const {
    const std::vector<double>& r = rates->rates(mask);
    double acc = 0.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        double d = uplink_delay(tasks[i].task.data_bits, r[i]);
        if (std::isinf(d)) return kInf;
        acc += d;
    }
    return acc / static_cast<double>(tasks.size());
}

void SlotProblem::init_rates(std::vector<int> external_users) {
    std::vector<int> group;
    group.reserve(tasks.size());
    for (const MergedTask& t : tasks) group.push_back(t.task.user);
    rates = std::make_shared<RateOracle>(topo, channels, std::move(group), std::move(external_users));
}

double Cut::affine_value(ClusterMask c) const {
    double v = constant;
    for (std::size_t m = 0; m < per_bs.size(); ++m)
        if (c & (1u << m)) v += per_bs[m];
    return v;
}

double Cut::evaluate(ClusterMask c, const SlotProblem& slot) const {
    double v = affine_value(c);
    for (const MaxTerm& t : max_terms) {
        double best = 0.0;
        for (std::size_t m = 0; m < t.row.size(); ++m)
            if (c & (1u << m)) best = std::max(best, t.row[m]);
        v += t.weight * best;
    }
    if (uses_uplink) v += slot.uplink_term(c);
    return v;
}

namespace {

struct ClusterVars {
    std::vector<int> members;                 // ascending BS indices
    int var(int k, int j, int nbs) const { return k * nbs + j; }
};

// Shared resource rows over the cluster-restricted variables, in Gbit/GHz
// units so the simplex works at O(1) scale. with_alpha appends the slack
// variable column (-1 coefficient).
void add_resource_rows(LpProblem& lp, const SlotProblem& slot, const std::vector<int>& members,
                       bool with_alpha) {
    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());
    const std::size_t nvars = lp.objective.size();
    for (int j = 0; j < nbs; ++j) {
        std::vector<double> cache_row(nvars, 0.0), compute_row(nvars, 0.0);
        for (int k = 0; k < k_count; ++k) {
            cache_row[static_cast<std::size_t>(k) * nbs + j] = slot.cache_gbit(k);
            compute_row[static_cast<std::size_t>(k) * nbs + j] = slot.compute_ghz(k);
        }
        if (with_alpha) {
            cache_row[nvars - 1] = -1.0;
            compute_row[nvars - 1] = -1.0;
        }
        lp.add_row(std::move(cache_row), LpProblem::Sense::LessEq, slot.bs_cache_gbit(members[j]));
        lp.add_row(std::move(compute_row), LpProblem::Sense::LessEq, slot.bs_compute_ghz(members[j]));
    }
}

CacheDecision expand_decision(const SlotProblem& slot, const std::vector<int>& members,
                              const std::vector<double>& x_local) {
    CacheDecision x(slot.service_count(), slot.bs_count());
    const int nbs = static_cast<int>(members.size());
    for (int k = 0; k < slot.service_count(); ++k)
        for (int j = 0; j < nbs; ++j) {
            double v = x_local[static_cast<std::size_t>(k) * nbs + j];
            x.at(k, members[j]) = std::clamp(v, 0.0, 1.0);
        }
    return x;
}

}  // namespace

PrimalResult solve_primal(const SlotProblem& slot, ClusterMask cluster) {
    if (slot.task_count() != 1)
        throw std::invalid_argument("solve_primal: single-user form needs exactly one merged task");
    std::vector<int> members = mask_to_cluster(cluster, slot.bs_count());
    if (members.empty()) throw std::invalid_argument("solve_primal: empty cluster");

    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());
    const int k_hat = slot.tasks[0].task.service;
    const double edge = slot.edge_d(0), bkb = slot.bkb_d(0);
    const double uplink = slot.uplink_term(cluster);
    const double constant = -slot.queue_backlog * slot.cost_threshold + slot.v_weight * bkb + uplink;

    PrimalResult best;
    best.cluster = cluster;
    best.status = PrimalStatus::Infeasible;

    for (int j_hat = 0; j_hat < nbs; ++j_hat) {
        LpProblem lp;
        const std::size_t nvars = static_cast<std::size_t>(k_count) * nbs;
        lp.objective.assign(nvars, 0.0);
        lp.lower.assign(nvars, 0.0);
        lp.upper.assign(nvars, 1.0);
        for (int k = 0; k < k_count; ++k)
            for (int j = 0; j < nbs; ++j)
                lp.objective[static_cast<std::size_t>(k) * nbs + j] = slot.drift_weight(k);
        // the pin carries the edge-vs-cloud benefit so its dual prices it
        lp.objective[static_cast<std::size_t>(k_hat) * nbs + j_hat] += slot.v_weight * (edge - bkb);

        add_resource_rows(lp, slot, members, false);
        std::vector<double> pin_row(nvars, 0.0);
        pin_row[static_cast<std::size_t>(k_hat) * nbs + j_hat] = 1.0;
        lp.add_row(std::move(pin_row), LpProblem::Sense::Eq, 1.0);

        LpSolution s = lp_solve(lp);
        if (s.status != LpSolution::Status::Optimal) continue;

        double total = s.objective + constant;
        if (best.status == PrimalStatus::Infeasible || total < best.objective - 1e-12) {
            best.status = PrimalStatus::Feasible;
            best.objective = total;
            best.pinned_bs = members[j_hat];
            best.x = expand_decision(slot, members, s.x);
            best.mu_cache.assign(slot.bs_count(), 0.0);
            best.mu_compute.assign(slot.bs_count(), 0.0);
            for (int j = 0; j < nbs; ++j) {
                best.mu_cache[members[j]] = std::max(0.0, s.duals[2 * j]);
                best.mu_compute[members[j]] = std::max(0.0, s.duals[2 * j + 1]);
            }
            best.mu_pin = std::max(0.0, s.duals[2 * nbs]);
        }
    }
    return best;
}

PrimalResult solve_infeasible_primal(const SlotProblem& slot, ClusterMask cluster) {
    std::vector<int> members = mask_to_cluster(cluster, slot.bs_count());
    if (members.empty()) throw std::invalid_argument("solve_infeasible_primal: empty cluster");

    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());
    const int k_hat = slot.tasks[0].task.service;

    auto solve_at = [&](double mass) {
        LpProblem lp;
        const std::size_t nvars = static_cast<std::size_t>(k_count) * nbs + 1;  // + alpha
        lp.objective.assign(nvars, 0.0);
        lp.objective[nvars - 1] = 1.0;
        lp.lower.assign(nvars, 0.0);
        lp.upper.assign(nvars, 1.0);
        lp.upper[nvars - 1] = kInf;
        add_resource_rows(lp, slot, members, true);
        std::vector<double> mass_row(nvars, 0.0);
        for (int j = 0; j < nbs; ++j) mass_row[static_cast<std::size_t>(k_hat) * nbs + j] = 1.0;
        lp.add_row(std::move(mass_row), LpProblem::Sense::Eq, mass);
        return lp_solve(lp);
    };

    LpSolution s1 = solve_at(1.0);
    if (s1.status != LpSolution::Status::Optimal)
        throw std::runtime_error("solve_infeasible_primal: slack LP unexpectedly unsolvable");

    PrimalResult r;
    r.status = PrimalStatus::Infeasible;
    r.cluster = cluster;
    r.alpha = s1.objective;
    r.x = expand_decision(slot, members, s1.x);
    r.mu_cache.assign(slot.bs_count(), 0.0);
    r.mu_compute.assign(slot.bs_count(), 0.0);
    for (int j = 0; j < nbs; ++j) {
        r.mu_cache[members[j]] = std::max(0.0, s1.duals[2 * j]);
        r.mu_compute[members[j]] = std::max(0.0, s1.duals[2 * j + 1]);
    }
    // equality dual enters the cut as a coverage pressure, stored >= 0
    r.mu_pin = std::max(0.0, -s1.duals[2 * nbs]);

    double sum = r.mu_pin;
    for (int m = 0; m < slot.bs_count(); ++m) sum += r.mu_cache[m] + r.mu_compute[m];
    r.lambda_normalized.assign(2 * slot.bs_count() + 1, 0.0);
    if (sum > 0) {
        for (int m = 0; m < slot.bs_count(); ++m) {
            r.lambda_normalized[m] = r.mu_cache[m] / sum;
            r.lambda_normalized[slot.bs_count() + m] = r.mu_compute[m] / sum;
        }
        r.lambda_normalized[2 * slot.bs_count()] = r.mu_pin / sum;
    }

    // Relaxation ladder: back the pinned probability off from 1 in 0.1 steps
    // until the residual violation vanishes; the stop level is the decision
    // to act on (0 means the slot goes cloud-only).
    r.x_relaxed = CacheDecision(k_count, slot.bs_count());
    r.relaxed_level = 0.0;
    for (int step = 9; step >= 0; --step) {
        double q = 0.1 * step;
        LpSolution s = solve_at(q);
        if (s.status == LpSolution::Status::Optimal && s.objective <= 1e-9) {
            r.x_relaxed = expand_decision(slot, members, s.x);
            r.relaxed_level = q;
            break;
        }
    }
    return r;
}

namespace {

// Mixed-radix iteration over serving-BS assignments for the merged tasks.
bool next_assignment(std::vector<int>& a, int radix) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (++a[i] < radix) return true;
        a[i] = 0;
    }
    return false;
}

struct ThetaRows {
    int dominance_begin = 0;  // row indices bookkeeping
    int theta_hi = 0, theta_lo = 0;
};

// Appends dominance rows (serving BS holds the row maximum) and the
// two-sided theta band; returns the band's row indices.
ThetaRows add_theta_structure(LpProblem& lp, const SlotProblem& slot, const std::vector<int>& members,
                              const std::vector<int>& assign, double theta, bool with_alpha) {
    const int nbs = static_cast<int>(members.size());
    const std::size_t nvars = lp.objective.size();
    const double n = static_cast<double>(slot.task_count());
    ThetaRows idx;
    idx.dominance_begin = static_cast<int>(lp.num_rows());

    for (std::size_t i = 0; i < slot.task_count(); ++i) {
        int k_i = slot.tasks[i].task.service;
        for (int j = 0; j < nbs; ++j) {
            if (j == assign[i]) continue;
            std::vector<double> row(nvars, 0.0);
            row[static_cast<std::size_t>(k_i) * nbs + j] = 1.0;
            row[static_cast<std::size_t>(k_i) * nbs + assign[i]] = -1.0;
            lp.add_row(std::move(row), LpProblem::Sense::LessEq, 0.0);
        }
    }

    double const_bkb = 0.0;
    std::vector<double> proc_row(nvars, 0.0);
    for (std::size_t i = 0; i < slot.task_count(); ++i) {
        int k_i = slot.tasks[i].task.service;
        proc_row[static_cast<std::size_t>(k_i) * nbs + assign[i]] += (slot.edge_d(i) - slot.bkb_d(i)) / n;
        const_bkb += slot.bkb_d(i) / n;
    }
    std::vector<double> lo_row(nvars, 0.0);
    for (std::size_t v = 0; v < nvars; ++v) lo_row[v] = -proc_row[v];
    (void)with_alpha;  // the band stays hard in the slack variant

    idx.theta_hi = static_cast<int>(lp.num_rows());
    lp.add_row(std::move(proc_row), LpProblem::Sense::LessEq, theta + kThetaBand - const_bkb);
    idx.theta_lo = static_cast<int>(lp.num_rows());
    lp.add_row(std::move(lo_row), LpProblem::Sense::LessEq, const_bkb - (theta - kThetaBand));
    return idx;
}

}  // namespace

PrimalResult solve_primal_theta(const SlotProblem& slot, ClusterMask cluster, double theta) {
    std::vector<int> members = mask_to_cluster(cluster, slot.bs_count());
    if (members.empty()) throw std::invalid_argument("solve_primal_theta: empty cluster");

    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());
    const double uplink = slot.uplink_term(cluster);
    const double constant =
        -slot.queue_backlog * slot.cost_threshold + slot.v_weight * theta + uplink;

    PrimalResult best;
    best.cluster = cluster;
    best.status = PrimalStatus::Infeasible;
    best.theta = theta;

    std::vector<int> assign(slot.task_count(), 0);
    do {
        LpProblem lp;
        const std::size_t nvars = static_cast<std::size_t>(k_count) * nbs;
        lp.objective.assign(nvars, 0.0);
        lp.lower.assign(nvars, 0.0);
        lp.upper.assign(nvars, 1.0);
        for (int k = 0; k < k_count; ++k)
            for (int j = 0; j < nbs; ++j)
                lp.objective[static_cast<std::size_t>(k) * nbs + j] = slot.drift_weight(k);

        add_resource_rows(lp, slot, members, false);
        ThetaRows rows = add_theta_structure(lp, slot, members, assign, theta, false);

        LpSolution s = lp_solve(lp);
        if (s.status != LpSolution::Status::Optimal) continue;

        double total = s.objective + constant;
        if (best.status == PrimalStatus::Infeasible || total < best.objective - 1e-12) {
            best.status = PrimalStatus::Feasible;
            best.objective = total;
            best.x = expand_decision(slot, members, s.x);
            best.assignment.assign(slot.task_count(), 0);
            for (std::size_t i = 0; i < slot.task_count(); ++i) best.assignment[i] = members[assign[i]];
            best.mu_cache.assign(slot.bs_count(), 0.0);
            best.mu_compute.assign(slot.bs_count(), 0.0);
            for (int j = 0; j < nbs; ++j) {
                best.mu_cache[members[j]] = std::max(0.0, s.duals[2 * j]);
                best.mu_compute[members[j]] = std::max(0.0, s.duals[2 * j + 1]);
            }
            best.mu_pin = std::max(0.0, s.duals[rows.theta_hi] - s.duals[rows.theta_lo]);
        }
    } while (next_assignment(assign, nbs));
    return best;
}

PrimalResult solve_infeasible_primal_theta(const SlotProblem& slot, ClusterMask cluster, double theta) {
    std::vector<int> members = mask_to_cluster(cluster, slot.bs_count());
    if (members.empty()) throw std::invalid_argument("solve_infeasible_primal_theta: empty cluster");

    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());

    PrimalResult best;
    best.cluster = cluster;
    best.status = PrimalStatus::Infeasible;
    best.theta = theta;
    best.alpha = kInf;

    std::vector<int> assign(slot.task_count(), 0);
    do {
        LpProblem lp;
        const std::size_t nvars = static_cast<std::size_t>(k_count) * nbs + 1;
        lp.objective.assign(nvars, 0.0);
        lp.objective[nvars - 1] = 1.0;
        lp.lower.assign(nvars, 0.0);
        lp.upper.assign(nvars, 1.0);
        lp.upper[nvars - 1] = kInf;
        add_resource_rows(lp, slot, members, true);
        ThetaRows rows = add_theta_structure(lp, slot, members, assign, theta, true);

        LpSolution s = lp_solve(lp);
        if (s.status != LpSolution::Status::Optimal) continue;
        if (s.objective < best.alpha - 1e-12) {
            best.alpha = s.objective;
            best.x = expand_decision(slot, members, s.x);
            best.assignment.assign(slot.task_count(), 0);
            for (std::size_t i = 0; i < slot.task_count(); ++i) best.assignment[i] = members[assign[i]];
            best.mu_cache.assign(slot.bs_count(), 0.0);
            best.mu_compute.assign(slot.bs_count(), 0.0);
            for (int j = 0; j < nbs; ++j) {
                best.mu_cache[members[j]] = std::max(0.0, s.duals[2 * j]);
                best.mu_compute[members[j]] = std::max(0.0, s.duals[2 * j + 1]);
            }
            best.mu_pin = s.duals[rows.theta_hi] - s.duals[rows.theta_lo];  // signed theta pressure
        }
    } while (next_assignment(assign, nbs));

    if (std::isinf(best.alpha))
        throw std::runtime_error("solve_infeasible_primal_theta: slack LP unexpectedly unsolvable");

    double sum = std::abs(best.mu_pin);
    for (int m = 0; m < slot.bs_count(); ++m) sum += best.mu_cache[m] + best.mu_compute[m];
    best.lambda_normalized.assign(2 * slot.bs_count() + 1, 0.0);
    if (sum > 0) {
        for (int m = 0; m < slot.bs_count(); ++m) {
            best.lambda_normalized[m] = best.mu_cache[m] / sum;
            best.lambda_normalized[slot.bs_count() + m] = best.mu_compute[m] / sum;
        }
        best.lambda_normalized[2 * slot.bs_count()] = std::abs(best.mu_pin) / sum;
    }
    best.x_relaxed = CacheDecision(k_count, slot.bs_count());
    return best;
}

PrimalResult solve_primal_direct_multi(const SlotProblem& slot, ClusterMask cluster, bool include_drift) {
    std::vector<int> members = mask_to_cluster(cluster, slot.bs_count());
    if (members.empty()) throw std::invalid_argument("solve_primal_direct_multi: empty cluster");

    const int k_count = slot.service_count();
    const int nbs = static_cast<int>(members.size());
    const double n = static_cast<double>(slot.task_count());
    double const_bkb = 0.0;
    for (std::size_t i = 0; i < slot.task_count(); ++i) const_bkb += slot.bkb_d(i) / n;
    const double constant = (include_drift ? -slot.queue_backlog * slot.cost_threshold : 0.0) +
                            slot.v_weight * const_bkb + slot.uplink_term(cluster);

    PrimalResult best;
    best.cluster = cluster;
    best.status = PrimalStatus::Infeasible;

    std::vector<int> assign(slot.task_count(), 0);
    do {
        LpProblem lp;
        const std::size_t nvars = static_cast<std::size_t>(k_count) * nbs;
        lp.objective.assign(nvars, 0.0);
        lp.lower.assign(nvars, 0.0);
        lp.upper.assign(nvars, 1.0);
        if (include_drift)
            for (int k = 0; k < k_count; ++k)
                for (int j = 0; j < nbs; ++j)
                    lp.objective[static_cast<std::size_t>(k) * nbs + j] = slot.drift_weight(k);
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            int k_i = slot.tasks[i].task.service;
            lp.objective[static_cast<std::size_t>(k_i) * nbs + assign[i]] +=
                slot.v_weight * (slot.edge_d(i) - slot.bkb_d(i)) / n;
        }
        add_resource_rows(lp, slot, members, false);
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            int k_i = slot.tasks[i].task.service;
            for (int j = 0; j < nbs; ++j) {
                if (j == assign[i]) continue;
                std::vector<double> row(nvars, 0.0);
                row[static_cast<std::size_t>(k_i) * nbs + j] = 1.0;
                row[static_cast<std::size_t>(k_i) * nbs + assign[i]] = -1.0;
                lp.add_row(std::move(row), LpProblem::Sense::LessEq, 0.0);
            }
        }

        LpSolution s = lp_solve(lp);
        if (s.status != LpSolution::Status::Optimal) continue;
        double total = s.objective + constant;
        if (best.status == PrimalStatus::Infeasible || total < best.objective - 1e-12) {
            best.status = PrimalStatus::Feasible;
            best.objective = total;
            best.x = expand_decision(slot, members, s.x);
            best.assignment.assign(slot.task_count(), 0);
            for (std::size_t i = 0; i < slot.task_count(); ++i) best.assignment[i] = members[assign[i]];
        }
    } while (next_assignment(assign, nbs));
    return best;
}

Cut make_cut(const PrimalResult& result, const SlotProblem& slot) {
    const int bs_count = slot.bs_count();
    Cut cut;
    cut.generated_at = result.cluster;

    // Frozen per-BS aggregates of the primal point, Gbit/GHz units
    std::vector<double> sigma(bs_count, 0.0), phi(bs_count, 0.0), kappa(bs_count, 0.0);
    const CacheDecision& x = result.x;
    for (int k = 0; k < slot.service_count(); ++k) {
        for (int m = 0; m < bs_count; ++m) {
            double v = x.at(k, m);
            if (v == 0.0) continue;
            sigma[m] += v * slot.cache_gbit(k);
            phi[m] += v * slot.compute_ghz(k);
            kappa[m] += v * (*slot.services)[k].cost_coeff * slot.cache_gbit(k);
        }
    }

    double mu_dot = 0.0;
    for (int m = 0; m < bs_count; ++m)
        mu_dot += result.mu_cache[m] * sigma[m] + result.mu_compute[m] * phi[m];

    cut.per_bs.assign(bs_count, 0.0);

    if (result.status == PrimalStatus::Feasible && std::isnan(result.theta)) {
        // Single-user optimality cut
        const double edge = slot.edge_d(0), bkb = slot.bkb_d(0);
        const int k_hat = slot.tasks[0].task.service;
        cut.feasibility = false;
        cut.uses_uplink = true;
        cut.constant = -slot.queue_backlog * slot.cost_threshold + slot.v_weight * bkb + mu_dot - result.mu_pin;
        for (int m = 0; m < bs_count; ++m)
            cut.per_bs[m] = slot.queue_backlog * kappa[m] -
                            result.mu_cache[m] * slot.bs_cache_gbit(m) -
                            result.mu_compute[m] * slot.bs_compute_ghz(m);
        Cut::MaxTerm t;
        t.weight = slot.v_weight * (edge - bkb) + result.mu_pin;
        t.row.assign(bs_count, 0.0);
        for (int m = 0; m < bs_count; ++m) t.row[m] = x.at(k_hat, m);
        cut.max_terms.push_back(std::move(t));
        cut.generator_value = result.objective;
    } else if (result.status == PrimalStatus::Feasible) {
        // Multi-user theta optimality cut
        const double n = static_cast<double>(slot.task_count());
        double bkb_mean = 0.0;
        for (std::size_t i = 0; i < slot.task_count(); ++i) bkb_mean += slot.bkb_d(i) / n;
        cut.feasibility = false;
        cut.uses_uplink = true;
        cut.constant = -slot.queue_backlog * slot.cost_threshold + slot.v_weight * result.theta +
                       mu_dot + result.mu_pin * (bkb_mean - result.theta);
        for (int m = 0; m < bs_count; ++m)
            cut.per_bs[m] = slot.queue_backlog * kappa[m] -
                            result.mu_cache[m] * slot.bs_cache_gbit(m) -
                            result.mu_compute[m] * slot.bs_compute_ghz(m);
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            Cut::MaxTerm t;
            t.weight = result.mu_pin * (slot.edge_d(i) - slot.bkb_d(i)) / n;
            t.row.assign(bs_count, 0.0);
            for (int m = 0; m < bs_count; ++m) t.row[m] = x.at(slot.tasks[i].task.service, m);
            cut.max_terms.push_back(std::move(t));
        }
        cut.generator_value = result.objective;
    } else if (std::isnan(result.theta)) {
        // Single-user feasibility cut: resource pressure plus requested-mass
        // coverage, affine in the clustering.
        const int k_hat = slot.tasks[0].task.service;
        cut.feasibility = true;
        cut.uses_uplink = false;
        cut.constant = mu_dot + result.mu_pin;
        for (int m = 0; m < bs_count; ++m)
            cut.per_bs[m] = -result.mu_cache[m] * slot.bs_cache_gbit(m) -
                            result.mu_compute[m] * slot.bs_compute_ghz(m) -
                            result.mu_pin * x.at(k_hat, m);
        cut.generator_value = result.alpha;
    } else {
        // Multi-user theta feasibility cut
        const double n = static_cast<double>(slot.task_count());
        double bkb_mean = 0.0;
        for (std::size_t i = 0; i < slot.task_count(); ++i) bkb_mean += slot.bkb_d(i) / n;
        cut.feasibility = true;
        cut.uses_uplink = false;
        cut.constant = mu_dot + result.mu_pin * (bkb_mean - result.theta);
        for (int m = 0; m < bs_count; ++m)
            cut.per_bs[m] = -result.mu_cache[m] * slot.bs_cache_gbit(m) -
                            result.mu_compute[m] * slot.bs_compute_ghz(m);
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            Cut::MaxTerm t;
            t.weight = result.mu_pin * (slot.edge_d(i) - slot.bkb_d(i)) / n;
            t.row.assign(bs_count, 0.0);
            for (int m = 0; m < bs_count; ++m) t.row[m] = x.at(slot.tasks[i].task.service, m);
            cut.max_terms.push_back(std::move(t));
        }
        cut.generator_value = result.alpha;
    }
    return cut;
}

double realized_objective(const SlotProblem& slot, ClusterMask cluster, const CacheDecision& x) {
    double a = arrival_rate(cluster, x, *slot.services);
    double drift = slot.queue_backlog * (a - slot.cost_threshold);
    double mean_total = slot.mean_uplink_delay(cluster);
    if (!std::isinf(mean_total)) {
        double pro = 0.0;
        for (std::size_t i = 0; i < slot.task_count(); ++i) {
            ServingBs sb = serving_bs(slot.tasks[i].task, cluster, x);
            pro += processing_delay(slot.tasks[i].task, sb.hit_probability, *slot.services,
                                    slot.backbone_rate_bps);
        }
        mean_total += pro / static_cast<double>(slot.task_count());
    }
    return drift + slot.v_weight * mean_total;
}

}  // namespace ucmec
