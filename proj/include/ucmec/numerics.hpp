#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ucmec {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense row-major complex matrix. Small sizes only (channel stacks,
// interferer matrices); no attempt at blocking or views.
struct CMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    CVec data;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, cplx(0.0, 0.0)) {}

    cplx& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static CMat identity(std::size_t n);
    static CMat from_column(const CVec& v);
};

double l2_norm(const CVec& v);                 // throws on empty input
cplx vec_dot(const CVec& a, const CVec& b);    // conj(a)·b, throws on mismatch

CMat matmul(const CMat& a, const CMat& b);
CMat conjugate_transpose(const CMat& m);
CVec matvec(const CMat& a, const CVec& x);
CMat sub(const CMat& a, const CMat& b);
double max_abs(const CMat& m);

// Moore-Penrose pseudo-inverse via one-sided Jacobi SVD. Singular values
// below 1e-10 * sigma_max are truncated to zero, which keeps the operator
// stable for the rank-deficient interferer stacks.
CMat pseudo_inverse(const CMat& m);

namespace tol {
inline constexpr double kFeasibility = 1e-9;
inline constexpr double kOptimality = 1e-8;
inline constexpr double kSingularValueCut = 1e-10;
}  // namespace tol

}  // namespace ucmec
