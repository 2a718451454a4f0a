#include "ucmec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ucmec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRcTol = 1e-9;    // reduced-cost optimality tolerance
constexpr double kPivTol = 1e-11;  // pivot element tolerance

enum class VarState { Basic, AtLower, AtUpper };

// Bounded-variable primal simplex over the working columns
// [structural | slacks | artificials], dense tableau T = B^-1 * A.
struct Tableau {
    std::size_t m = 0, ncols = 0, n_struct = 0;
    std::vector<std::vector<double>> t;  // m x ncols
    std::vector<double> lo, up;          // per working column
    std::vector<double> xval;            // current value per working column
    std::vector<VarState> state;
    std::vector<int> basis;              // row -> column
    std::vector<int> art_col;            // row -> its artificial column
    std::vector<double> art_sign;        // +-1, artificial column = sign * e_row
    int iterations = 0;

    // Bland's rule: smallest-index entering, smallest-basis-index leaving on
    // ratio ties. Returns false when no entering column exists (optimal).
    bool iterate(const std::vector<double>& cost, bool* unbounded) {
        *unbounded = false;
        for (;;) {
            if (++iterations > 20000) throw std::runtime_error("lp_solve: iteration cap exceeded");

            int enter = -1;
            double dir = 0.0;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (state[j] == VarState::Basic) continue;
                if (lo[j] == up[j]) continue;  // fixed column can never improve
                double rc = reduced_cost(cost, j);
                if (state[j] == VarState::AtLower && rc < -kRcTol) { enter = static_cast<int>(j); dir = 1.0; break; }
                if (state[j] == VarState::AtUpper && rc > kRcTol) { enter = static_cast<int>(j); dir = -1.0; break; }
            }
            if (enter < 0) return true;  // optimal for this phase

            // Ratio test: basic variables hit a bound, or the entering
            // variable reaches its opposite bound.
            double span = up[enter] - lo[enter];
            double best_t = span;  // may be +inf
            int leave_row = -1;
            double leave_to = 0.0;  // bound the leaving variable lands on
            for (std::size_t i = 0; i < m; ++i) {
                double a = t[i][static_cast<std::size_t>(enter)] * dir;
                int bj = basis[i];
                if (a > kPivTol) {  // basic decreases toward its lower bound
                    if (lo[bj] == -kInf) continue;
                    double tt = (xval[bj] - lo[bj]) / a;
                    if (tt < best_t - 1e-12 || (tt < best_t + 1e-12 && (leave_row < 0 || bj < basis[leave_row]))) {
                        best_t = std::max(tt, 0.0); leave_row = static_cast<int>(i); leave_to = lo[bj];
                    }
                } else if (a < -kPivTol) {  // basic increases toward its upper bound
                    if (up[bj] == kInf) continue;
                    double tt = (up[bj] - xval[bj]) / (-a);
                    if (tt < best_t - 1e-12 || (tt < best_t + 1e-12 && (leave_row < 0 || bj < basis[leave_row]))) {
                        best_t = std::max(tt, 0.0); leave_row = static_cast<int>(i); leave_to = up[bj];
                    }
                }
            }

            if (leave_row < 0 && best_t == kInf) { *unbounded = true; return false; }

            if (leave_row < 0) {
                // bound flip of the entering column
                apply_step(enter, dir, best_t);
                state[enter] = (dir > 0) ? VarState::AtUpper : VarState::AtLower;
                xval[enter] = (dir > 0) ? up[enter] : lo[enter];
                continue;
            }

            apply_step(enter, dir, best_t);
            int leave_col = basis[leave_row];
            xval[leave_col] = leave_to;
            state[leave_col] = (leave_to == lo[leave_col]) ? VarState::AtLower : VarState::AtUpper;
            pivot(static_cast<std::size_t>(leave_row), static_cast<std::size_t>(enter));
            state[enter] = VarState::Basic;
            basis[leave_row] = enter;
        }
    }

    double reduced_cost(const std::vector<double>& cost, std::size_t j) const {
        double rc = cost[j];
        for (std::size_t i = 0; i < m; ++i) rc -= cost[basis[i]] * t[i][j];
        return rc;
    }

    // y = c_B^T B^-1 recovered through the artificial identity block
    std::vector<double> dual_row(const std::vector<double>& cost) const {
        std::vector<double> y(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < m; ++k) v += cost[basis[k]] * t[k][static_cast<std::size_t>(art_col[i])];
            y[i] = v * art_sign[i];
        }
        return y;
    }

    void apply_step(int enter, double dir, double step) {
        if (step == 0.0) return;
        for (std::size_t i = 0; i < m; ++i) {
            int bj = basis[i];
            xval[bj] -= t[i][static_cast<std::size_t>(enter)] * dir * step;
        }
        xval[enter] += dir * step;
    }

    void pivot(std::size_t r, std::size_t c) {
        double piv = t[r][c];
        if (std::abs(piv) < kPivTol) throw std::runtime_error("lp_solve: numerically singular pivot");
        double inv = 1.0 / piv;
        for (std::size_t j = 0; j < ncols; ++j) t[r][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = t[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) t[i][j] -= f * t[r][j];
        }
    }
};

}  // namespace

void LpProblem::add_row(std::vector<double> coeffs, Sense s, double b) {
    rows.push_back(std::move(coeffs));
    senses.push_back(s);
    rhs.push_back(b);
}

LpSolution lp_solve(const LpProblem& p) {
    const std::size_t n = p.num_vars();
    const std::size_t m = p.num_rows();
    if (p.lower.size() != n || p.upper.size() != n || p.rhs.size() != m || p.senses.size() != m)
        throw std::invalid_argument("lp_solve: inconsistent problem dimensions");
    for (std::size_t j = 0; j < n; ++j)
        if (!(p.lower[j] <= p.upper[j])) throw std::invalid_argument("lp_solve: lo > hi bound");
    for (const auto& r : p.rows)
        if (r.size() != n) throw std::invalid_argument("lp_solve: row length mismatch");

    std::size_t n_slack = 0;
    for (auto s : p.senses) n_slack += (s == LpProblem::Sense::LessEq) ? 1 : 0;
    const std::size_t ncols = n + n_slack + m;

    Tableau tb;
    tb.m = m;
    tb.ncols = ncols;
    tb.n_struct = n;
    tb.t.assign(m, std::vector<double>(ncols, 0.0));
    tb.lo.assign(ncols, 0.0);
    tb.up.assign(ncols, kInf);
    tb.xval.assign(ncols, 0.0);
    tb.state.assign(ncols, VarState::AtLower);
    tb.basis.assign(m, -1);
    tb.art_col.assign(m, -1);
    tb.art_sign.assign(m, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        tb.lo[j] = p.lower[j];
        tb.up[j] = p.upper[j];
        double x0;
        if (std::isfinite(p.lower[j])) { x0 = p.lower[j]; tb.state[j] = VarState::AtLower; }
        else if (std::isfinite(p.upper[j])) { x0 = p.upper[j]; tb.state[j] = VarState::AtUpper; }
        else { x0 = 0.0; tb.state[j] = VarState::AtLower; tb.lo[j] = -kInf; }
        tb.xval[j] = x0;
    }

    std::size_t slack_at = n;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = p.rows[i][j];
        if (p.senses[i] == LpProblem::Sense::LessEq) {
            tb.t[i][slack_at] = 1.0;
            tb.xval[slack_at] = 0.0;
            ++slack_at;
        }
    }

    // Artificial start basis: residual-signed unit columns
    for (std::size_t i = 0; i < m; ++i) {
        double res = p.rhs[i];
        for (std::size_t j = 0; j < n + n_slack; ++j) res -= tb.t[i][j] * tb.xval[j];
        std::size_t aj = n + n_slack + i;
        tb.art_sign[i] = (res >= 0.0) ? 1.0 : -1.0;
        tb.t[i][aj] = tb.art_sign[i];
        tb.art_col[i] = static_cast<int>(aj);
        tb.basis[i] = static_cast<int>(aj);
        tb.state[aj] = VarState::Basic;
        tb.xval[aj] = std::abs(res);
    }

    LpSolution sol;

    // Phase 1: drive artificial infeasibility to zero
    std::vector<double> cost1(ncols, 0.0);
    for (std::size_t i = 0; i < m; ++i) cost1[n + n_slack + i] = 1.0;
    bool unbounded = false;
    tb.iterate(cost1, &unbounded);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i) infeas += tb.xval[n + n_slack + i] * 1.0;

    double scale = 1.0;
    for (double b : p.rhs) scale = std::max(scale, std::abs(b));
    if (infeas > 1e-8 * scale) {
        sol.status = LpSolution::Status::Infeasible;
        std::vector<double> y = tb.dual_row(cost1);
        sol.duals.resize(m);
        for (std::size_t i = 0; i < m; ++i) sol.duals[i] = -y[i];
        sol.x.assign(tb.xval.begin(), tb.xval.begin() + static_cast<std::ptrdiff_t>(n));
        sol.objective = kInf;
        sol.iterations = tb.iterations;
        return sol;
    }

    // Pin artificials at zero for phase 2
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t aj = n + n_slack + i;
        tb.lo[aj] = 0.0;
        tb.up[aj] = 0.0;
        if (tb.state[aj] != VarState::Basic) { tb.state[aj] = VarState::AtLower; tb.xval[aj] = 0.0; }
    }

    std::vector<double> cost2(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost2[j] = p.objective[j];
    tb.iterate(cost2, &unbounded);
    if (unbounded) {
        sol.status = LpSolution::Status::Unbounded;
        sol.x.assign(tb.xval.begin(), tb.xval.begin() + static_cast<std::ptrdiff_t>(n));
        sol.objective = -kInf;
        sol.iterations = tb.iterations;
        return sol;
    }

    sol.status = LpSolution::Status::Optimal;
    sol.x.assign(tb.xval.begin(), tb.xval.begin() + static_cast<std::ptrdiff_t>(n));
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.x[j];
    std::vector<double> y = tb.dual_row(cost2);
    sol.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = -y[i];
    sol.reduced_costs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double rc = p.objective[j];
        for (std::size_t i = 0; i < m; ++i) rc += sol.duals[i] * p.rows[i][j];
        sol.reduced_costs[j] = rc;
    }
    sol.iterations = tb.iterations;
    return sol;
}

double lp_dual_objective(const LpProblem& p, const std::vector<double>& duals) {
    // D(mu) = -mu.b + sum_j min over [lo_j, up_j] of (c_j + (A^T mu)_j) x_j
    double d = 0.0;
    for (std::size_t i = 0; i < p.num_rows(); ++i) d -= duals[i] * p.rhs[i];
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        double rc = p.objective[j];
        for (std::size_t i = 0; i < p.num_rows(); ++i) rc += duals[i] * p.rows[i][j];
        d += (rc >= 0.0) ? rc * p.lower[j] : rc * p.upper[j];
    }
    return d;
}

}  // namespace ucmec
