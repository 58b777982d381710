#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace selfaffine::linalg {

/// Fixed-size dense helpers for the tiny systems this project solves
/// (2x2 map fitting, 2x2 Newton, 6x6 Newton with rank inspection).

constexpr std::size_t kMaxDim = 8;

/// Solves A x = b in place by Gaussian elimination with partial pivoting.
/// Returns false if the matrix is numerically singular.
template <std::size_t N>
bool solve(std::array<std::array<double, N>, N> a, std::array<double, N> b,
           std::array<double, N>& x) {
    std::array<std::size_t, N> piv{};
    for (std::size_t i = 0; i < N; ++i) piv[i] = i;

    for (std::size_t col = 0; col < N; ++col) {
        std::size_t best = col;
        double best_abs = std::fabs(a[col][col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            double v = std::fabs(a[r][col]);
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best_abs < 1e-300) return false;
        if (best != col) {
            std::swap(a[best], a[col]);
            std::swap(b[best], b[col]);
        }
        double inv = 1.0 / a[col][col];
        for (std::size_t r = col + 1; r < N; ++r) {
            double f = a[r][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = N; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < N; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return true;
}

/// Eigendecomposition of a symmetric NxN matrix by cyclic Jacobi rotations.
/// On return `a` holds (approximately) the diagonalized matrix, `eval` the
/// eigenvalues in descending order and `evec` the matching eigenvectors as
/// columns. Deterministic: fixed sweep order, fixed iteration budget.
template <std::size_t N>
void sym_eigen(std::array<std::array<double, N>, N> a,
               std::array<double, N>& eval,
               std::array<std::array<double, N>, N>& evec) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) evec[i][j] = (i == j) ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-300) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                double apq = a[p][q];
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double vkp = evec[k][p], vkq = evec[k][q];
                    evec[k][p] = c * vkp - s * vkq;
                    evec[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (a[order[j]][order[j]] > a[order[i]][order[i]]) std::swap(order[i], order[j]);

    std::array<std::array<double, N>, N> sorted_vec{};
    for (std::size_t i = 0; i < N; ++i) {
        eval[i] = a[order[i]][order[i]];
        for (std::size_t k = 0; k < N; ++k) sorted_vec[k][i] = evec[k][order[i]];
    }
    evec = sorted_vec;
}

/// Singular values and right singular vectors of a square matrix, computed
/// from the eigendecomposition of J^T J. sigma is descending; `v` holds the
/// right singular vectors as columns.
template <std::size_t N>
void svd_square(const std::array<std::array<double, N>, N>& j,
                std::array<double, N>& sigma,
                std::array<std::array<double, N>, N>& v) {
    std::array<std::array<double, N>, N> jtj{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < N; ++k) s += j[k][r] * j[k][c];
            jtj[r][c] = s;
        }
    std::array<double, N> ev{};
    sym_eigen<N>(jtj, ev, v);
    for (std::size_t i = 0; i < N; ++i) sigma[i] = std::sqrt(std::max(0.0, ev[i]));
}

/// Truncated pseudo-inverse step: x = V diag(1/sigma_i) V^T J^T r, ignoring
/// singular directions with sigma_i < trunc * sigma_max.
template <std::size_t N>
std::array<double, N> pinv_apply(const std::array<std::array<double, N>, N>& j,
                                 const std::array<double, N>& sigma,
                                 const std::array<std::array<double, N>, N>& v,
                                 const std::array<double, N>& r, double trunc) {
    std::array<double, N> jtr{};
    for (std::size_t c = 0; c < N; ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < N; ++k) s += j[k][c] * r[k];
        jtr[c] = s;
    }
    double cutoff = sigma[0] * trunc;
    std::array<double, N> x{};
    for (std::size_t i = 0; i < N; ++i) {
        if (sigma[i] <= cutoff) continue;
        double proj = 0.0;
        for (std::size_t k = 0; k < N; ++k) proj += v[k][i] * jtr[k];
        proj /= (sigma[i] * sigma[i]);
        for (std::size_t k = 0; k < N; ++k) x[k] += v[k][i] * proj;
    }
    return x;
}

}  // namespace selfaffine::linalg
