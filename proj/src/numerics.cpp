#include "ucmec/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace ucmec {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cplx(1.0, 0.0);
    return m;
}

CMat CMat::from_column(const CVec& v) {
    CMat m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

double l2_norm(const CVec& v) {
    if (v.empty()) throw std::invalid_argument("l2_norm: empty vector");
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cplx vec_dot(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_dot: dimension mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    CMat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

CMat conjugate_transpose(const CMat& m) {
    CMat t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = std::conj(m.at(i, j));
    return t;
}

CVec matvec(const CMat& a, const CVec& x) {
    if (a.cols != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    CVec y(a.rows, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) y[i] += a.at(i, j) * x[j];
    return y;
}

CMat sub(const CMat& a, const CMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("sub: dimension mismatch");
    CMat c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
    return c;
}

double max_abs(const CMat& m) {
    double v = 0.0;
    for (const cplx& x : m.data) v = std::max(v, std::abs(x));
    return v;
}

namespace {

// One-sided Jacobi on the columns of w (rows >= cols). On return the columns
// of w are mutually orthogonal (u_j * sigma_j) and v accumulates the right
// singular vectors.
void jacobi_orthogonalize(CMat& w, CMat& v) {
    const std::size_t n = w.cols;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma(0.0, 0.0);
                for (std::size_t i = 0; i < w.rows; ++i) {
                    alpha += std::norm(w.at(i, p));
                    beta += std::norm(w.at(i, q));
                    gamma += std::conj(w.at(i, p)) * w.at(i, q);
                }
                double g = std::abs(gamma);
                double scale = std::sqrt(alpha * beta);
                if (scale <= 0.0 || g <= 1e-15 * scale) continue;
                off = std::max(off, g / scale);

                cplx phase = gamma / g;  // gamma = g * phase
                double zeta = (beta - alpha) / (2.0 * g);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;

                // Column rotation [wp, wq] <- [wp, wq] * R with
                // R = [[c, s], [-s*conj(phase), c*conj(phase)]] (unitary).
                for (std::size_t i = 0; i < w.rows; ++i) {
                    cplx wp = w.at(i, p), wq = w.at(i, q);
                    w.at(i, p) = c * wp - s * std::conj(phase) * wq;
                    w.at(i, q) = s * wp + c * std::conj(phase) * wq;
                }
                for (std::size_t i = 0; i < v.rows; ++i) {
                    cplx vp = v.at(i, p), vq = v.at(i, q);
                    v.at(i, p) = c * vp - s * std::conj(phase) * vq;
                    v.at(i, q) = s * vp + c * std::conj(phase) * vq;
                }
            }
        }
        if (off <= 1e-13) return;
    }
    throw std::runtime_error("pseudo_inverse: Jacobi SVD did not converge within sweep cap");
}

}  // namespace

CMat pseudo_inverse(const CMat& m) {
    if (m.rows == 0 || m.cols == 0) throw std::invalid_argument("pseudo_inverse: empty matrix");
    for (const cplx& x : m.data)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("pseudo_inverse: non-finite entry");

    if (m.rows < m.cols) return conjugate_transpose(pseudo_inverse(conjugate_transpose(m)));

    CMat w = m;
    CMat v = CMat::identity(m.cols);
    jacobi_orthogonalize(w, v);

    const std::size_t n = m.cols;
    std::vector<double> sigma(n, 0.0);
    double sigma_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.rows; ++i) s += std::norm(w.at(i, j));
        sigma[j] = std::sqrt(s);
        sigma_max = std::max(sigma_max, sigma[j]);
    }

    // pinv = sum_j v_j (1/sigma_j) u_j^H over kept singular values
    CMat pinv(m.cols, m.rows);
    if (sigma_max == 0.0) return pinv;  // pseudo-inverse of zero is zero transposed
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] <= tol::kSingularValueCut * sigma_max) continue;
        double inv_s2 = 1.0 / (sigma[j] * sigma[j]);  // u_j = w_j / sigma_j
        for (std::size_t r = 0; r < m.cols; ++r) {
            cplx vr = v.at(r, j) * inv_s2;
            for (std::size_t cidx = 0; cidx < m.rows; ++cidx)
                pinv.at(r, cidx) += vr * std::conj(w.at(cidx, j));
        }
    }
    return pinv;
}

}  // namespace ucmec
