// Copyright 2026 The lopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense linear algebra on ComplexMatrix: Hermitian eigenproblem (cyclic
// complex Jacobi), exp(iH), one-sided Jacobi SVD, polar projection and Haar
// sampling. Everything here is a pure function of its arguments.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/matrix.hpp"
#include "lopt/rng.hpp"

namespace lopt {

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns
};

struct SvdResult {
    ComplexMatrix u;                     // rows x k
    std::vector<double> singular_values;  // descending, k = min(rows, cols)
    ComplexMatrix v_adjoint;             // k x cols
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Complete the columns of q flagged in `missing` to an orthonormal set.
inline void complete_orthonormal_columns(ComplexMatrix &q, const std::vector<bool> &missing) {
    const std::size_t n = q.rows();
    std::size_t probe = 0;
    for (std::size_t c = 0; c < q.cols(); ++c) {
        if (!missing[c]) continue;
        while (true) {
            if (probe >= n) throw DegenerateInput("cannot complete orthonormal basis");
            std::vector<cplx> v(n, 0.0);
            v[probe++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < q.cols(); ++k) {
                    if (k == c || (missing[k] && k > c)) continue;
                    cplx dot = 0.0;
                    for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, k)) * v[r];
                    for (std::size_t r = 0; r < n; ++r) v[r] -= dot * q(r, k);
                }
            }
            double nrm = 0.0;
            for (const auto &z : v) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-6) continue;
            for (std::size_t r = 0; r < n; ++r) q(r, c) = v[r] / nrm;
            break;
        }
    }
}

// One-sided Jacobi for rows >= cols.
inline SvdResult svd_tall(const ComplexMatrix &m) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr double kEps = 1e-15;
    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx gamma = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += std::norm(a(r, p));
                    beta += std::norm(a(r, q));
                    gamma += std::conj(a(r, p)) * a(r, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const cplx phase = gamma / g;  // e^{i phi}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // columns (p, e^{-i phi} q) rotated by [[c, s], [-s, c]]
                const cplx j00 = c, j01 = s, j10 = -s * std::conj(phase), j11 = c * std::conj(phase);
                for (std::size_t r = 0; r < rows; ++r) {
                    const cplx xp = a(r, p), xq = a(r, q);
                    a(r, p) = xp * j00 + xq * j10;
                    a(r, q) = xp * j01 + xq * j11;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx xp = v(r, p), xq = v(r, q);
                    v(r, p) = xp * j00 + xq * j10;
                    v(r, q) = xp * j01 + xq * j11;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(a(r, c));
        sigma[c] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out{ComplexMatrix(rows, n), std::vector<double>(n), ComplexMatrix(n, n)};
    const double smax = sigma[order[0]];
    std::vector<bool> missing(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t c = order[k];
        out.singular_values[k] = sigma[c];
        for (std::size_t r = 0; r < n; ++r) out.v_adjoint(k, r) = std::conj(v(r, c));
        if (sigma[c] <= 1e-300 || sigma[c] <= 1e-14 * smax) {
            missing[k] = true;
            continue;
        }
        for (std::size_t r = 0; r < rows; ++r) out.u(r, k) = a(r, c) / sigma[c];
    }
    if (std::any_of(missing.begin(), missing.end(), [](bool b) { return b; }))
        complete_orthonormal_columns(out.u, missing);
    return out;
}

}  // namespace detail

/// Eigendecomposition h = Q diag(lambda) Q^dagger by cyclic complex Jacobi
/// rotations. Eigenvalues ascending.
inline EigenDecomposition hermitian_eig(const HermitianGenerator &h) {
    const std::size_t n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix q = ComplexMatrix::identity(n);
    const double tol = 1e-13 * std::max(1.0, a.frobenius_norm());

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && detail::off_diagonal_norm(a) >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const cplx apq = a(p, r);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const cplx phase = apq / g;
                const double theta = (a(r, r).real() - a(p, p).real()) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // J = diag(1, e^{-i phi}) [[c, s], [-s, c]] on (p, r)
                const cplx j00 = c, j01 = s, j10 = -s * std::conj(phase), j11 = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = a(k, p), xr = a(k, r);
                    a(k, p) = xp * j00 + xr * j10;
                    a(k, r) = xp * j01 + xr * j11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = a(p, k), xr = a(r, k);
                    a(p, k) = std::conj(j00) * xp + std::conj(j10) * xr;
                    a(r, k) = std::conj(j01) * xp + std::conj(j11) * xr;
                }
                a(p, r) = 0.0;
                a(r, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(r, r) = a(r, r).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx xp = q(k, p), xr = q(k, r);
                    q(k, p) = xp * j00 + xr * j10;
                    q(k, r) = xp * j01 + xr * j11;
                }
            }
        }
    }
    if (detail::off_diagonal_norm(a) >= tol) throw DegenerateInput("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = q(r, order[k]);
    }
    return out;
}

/// exp(i h) = Q diag(e^{i lambda}) Q^dagger.
inline ComplexMatrix exp_i_hermitian(const HermitianGenerator &h) {
    const auto eig = hermitian_eig(h);
    const std::size_t n = h.dim();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx ph = std::polar(1.0, eig.eigenvalues[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx qik = eig.eigenvectors(i, k) * ph;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += qik * std::conj(eig.eigenvectors(j, k));
        }
    }
    return out;
}

/// m = u diag(sigma) v_adjoint with sigma descending. Thin for rectangular
/// input, full for square input.
inline SvdResult svd(const ComplexMatrix &m) {
    if (m.rows() >= m.cols()) return detail::svd_tall(m);
    auto t = detail::svd_tall(m.adjoint());
    return SvdResult{t.v_adjoint.adjoint(), std::move(t.singular_values), t.u.adjoint()};
}

inline std::vector<double> singular_values(const ComplexMatrix &m) { return svd(m).singular_values; }

/// u v^dagger without the rank check; for internal use where a degenerate
/// block still needs some unitary stand-in.
inline ComplexMatrix polar_unitary_unchecked(const ComplexMatrix &m) {
    const auto s = svd(m);
    return s.u * s.v_adjoint;
}

/// Nearest unitary in Frobenius norm (the unitary polar factor).
inline ComplexMatrix polar_nearest_unitary(const ComplexMatrix &m) {
    if (!m.square()) throw InvalidInput("polar_nearest_unitary: matrix must be square");
    const auto s = svd(m);
    const double smax = s.singular_values.front();
    const double smin = s.singular_values.back();
    if (smax == 0.0 || smin <= 1e-12 * smax) throw DegenerateInput("polar_nearest_unitary: rank-deficient input");
    return s.u * s.v_adjoint;
}

/// Haar-distributed unitary: complex Ginibre matrix, Gram-Schmidt on the
/// columns, then each column rescaled by conj(r_kk)/|r_kk|. Modified
/// Gram-Schmidt already yields r_kk > 0, so the phase fix is kept only to
/// make the construction explicit.
inline ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw InvalidInput("haar_random_unitary: dim must be >= 1");
    Rng rng(seed);
    ComplexMatrix g(dim, dim);
    const double scale = 1.0 / std::sqrt(2.0);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(r, c) = cplx(re, im) * scale;
        }
    for (std::size_t c = 0; c < dim; ++c) {
        cplx rkk = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < c; ++k) {
                cplx dot = 0.0;
                for (std::size_t r = 0; r < dim; ++r) dot += std::conj(g(r, k)) * g(r, c);
                for (std::size_t r = 0; r < dim; ++r) g(r, c) -= dot * g(r, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(g(r, c));
        nrm = std::sqrt(nrm);
        rkk = nrm;
        const cplx fix = std::conj(rkk) / std::abs(rkk);
        for (std::size_t r = 0; r < dim; ++r) g(r, c) = g(r, c) / nrm * fix;
    }
    return g;
}

/// Random Hermitian matrix with i.i.d. complex Gaussian off-diagonals (GUE-like).
inline HermitianGenerator random_hermitian(std::size_t dim, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = scale * rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            h(i, j) = scale * cplx(re, im) / std::sqrt(2.0);
            h(j, i) = std::conj(h(i, j));
        }
    }
    return HermitianGenerator(std::move(h));
}

}  // namespace lopt
