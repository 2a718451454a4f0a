#pragma once

#include <cstddef>
#include <vector>

namespace ucmec {

// Small dense LP: minimize c.x subject to per-row {<=, =} constraints and
// per-variable bounds. Scope is the caching subproblems (tens of variables),
// not general LP.
struct LpProblem {
    enum class Sense { LessEq, Eq };

    std::vector<double> objective;            // length n, minimized
    std::vector<std::vector<double>> rows;    // m x n
    std::vector<double> rhs;                  // length m
    std::vector<Sense> senses;                // length m
    std::vector<double> lower, upper;         // length n, lo <= hi

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rows.size(); }
    void add_row(std::vector<double> coeffs, Sense s, double b);
};

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded };

    Status status = Status::Infeasible;
    std::vector<double> x;             // structural point (best effort unless Optimal)
    double objective = 0.0;
    // Row multipliers with L(x, mu) = c.x + sum_i mu_i (a_i.x - b_i):
    // mu_i >= 0 on <=-rows at optimality, free on =-rows. When infeasible the
    // phase-1 multipliers are returned (a Farkas-type certificate).
    std::vector<double> duals;
    std::vector<double> reduced_costs;  // c + A^T mu, structural variables
    int iterations = 0;
};

LpSolution lp_solve(const LpProblem& p);

// Dual objective under the same multiplier convention; equals the primal
// objective at optimality (strong duality).
double lp_dual_objective(const LpProblem& p, const std::vector<double>& duals);

}  // namespace ucmec
