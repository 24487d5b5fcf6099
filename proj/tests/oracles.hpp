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

// Brute-force reference implementations used only by the tests. None of
// these call into the library's numerical kernels.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "lopt/matrix.hpp"
#include "lopt/rng.hpp"

namespace oracle {

using lopt::cplx;
using lopt::ComplexMatrix;
using Occ = std::vector<int>;

/// Laplace expansion along the first row with all signs positive.
inline cplx permanent(const ComplexMatrix &a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == cplx{}) continue;
        ComplexMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = a(r, c);
        sum += a(0, j) * oracle::permanent(minor);
    }
    return sum;
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// Ket as occupation -> amplitude over normalised Fock states.
using Ket = std::map<Occ, cplx>;

/// a_j^dag on a normalised ket: |..n_j..> -> sqrt(n_j + 1) |..n_j+1..>.
inline Ket create(const Ket &k, std::size_t j) {
    Ket out;
    for (const auto &[occ, amp] : k) {
        Occ grown = occ;
        ++grown[j];
        out[grown] += amp * std::sqrt(static_cast<double>(grown[j]));
    }
    return out;
}

/// V|n> computed by applying the transformed creation operators
/// sum_j u(j,i) a_j^dag to the vacuum, one photon at a time.
inline Ket propagate(const ComplexMatrix &u, const Occ &in) {
    const std::size_t m = in.size();
    Ket k{{Occ(m, 0), 1.0}};
    double norm = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        norm *= factorial(in[i]);
        for (int rep = 0; rep < in[i]; ++rep) {
            Ket next;
            for (std::size_t j = 0; j < m; ++j) {
                if (u(j, i) == cplx{}) continue;
                for (const auto &[occ, amp] : create(k, j)) next[occ] += u(j, i) * amp;
            }
            k = std::move(next);
        }
    }
    for (auto &[occ, amp] : k) amp /= std::sqrt(norm);
    return k;
}

inline cplx amplitude(const Ket &k, const Occ &out) {
    auto it = k.find(out);
    return it == k.end() ? cplx{} : it->second;
}

/// exp(A) by scaling and squaring with a long Taylor series.
inline ComplexMatrix expm(const ComplexMatrix &a) {
    double norm = a.frobenius_norm();
    int squarings = 0;
    while (norm > 0.25) {
        norm /= 2;
        ++squarings;
    }
    ComplexMatrix scaled = a * cplx(std::ldexp(1.0, -squarings));
    ComplexMatrix term = ComplexMatrix::identity(a.rows());
    ComplexMatrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * scaled * cplx(1.0 / k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Six-dimensional two-mode Fock space |00>,|10>,|01>,|11>,|20>,|02>.
/// Generator of the beam splitter: a1^dag a2 + a2^dag a1.
inline ComplexMatrix six_dim_hopping() {
    const double r2 = std::sqrt(2.0);
    ComplexMatrix h(6, 6);
    h(1, 2) = h(2, 1) = 1.0;          // |10> <-> |01>
    h(4, 3) = h(3, 4) = r2;           // a1^dag a2 |11> = sqrt2 |20>
    h(5, 3) = h(3, 5) = r2;           // a2^dag a1 |11> = sqrt2 |02>
    return h;
}

inline ComplexMatrix six_dim_phases(double a, double b) {
    const int n1[6] = {0, 1, 0, 1, 2, 0};
    const int n2[6] = {0, 0, 1, 1, 0, 2};
    ComplexMatrix d(6, 6);
    for (int i = 0; i < 6; ++i) d(i, i) = std::polar(1.0, a * n1[i] + b * n2[i]);
    return d;
}

/// Composite gate straight from the Hamiltonian picture.
inline ComplexMatrix composite_gate(double alpha, double beta, double gamma, double delta, double eps) {
    return six_dim_phases(alpha, beta) * expm(six_dim_hopping() * cplx(0.0, eps)) * six_dim_phases(gamma, delta);
}

/// Largest singular value by power iteration on M^dag M.
inline double top_singular_value(const ComplexMatrix &m) {
    const ComplexMatrix g = m.adjoint() * m;
    std::vector<cplx> x(g.cols());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = cplx(1.0 + 0.1 * static_cast<double>(i), 0.3);
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
        auto y = g * std::span<const cplx>(x);
        double n = 0.0;
        for (auto &z : y) n += std::norm(z);
        n = std::sqrt(n);
        if (n == 0.0) return 0.0;
        for (auto &z : y) z /= n;
        x = std::move(y);
        lambda = n;
    }
    return std::sqrt(lambda);
}

/// Product-gate test by reshuffling: R[(r1,c1),(r2,c2)] = g[(r1,r2),(c1,c2)].
inline double entangling_measure(const ComplexMatrix &g) {
    auto reshuffle = [](const ComplexMatrix &x) {
        ComplexMatrix r(4, 4);
        for (int r1 = 0; r1 < 2; ++r1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int c2 = 0; c2 < 2; ++c2) r(2 * r1 + c1, 2 * r2 + c2) = x(2 * r1 + r2, 2 * c1 + c2);
        return r;
    };
    const ComplexMatrix swap{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    const double s1 = top_singular_value(reshuffle(g));
    const double s2 = top_singular_value(reshuffle(swap * g));
    return std::min(1.0 - s1 * s1 / 4.0, 1.0 - s2 * s2 / 4.0);
}

/// 2x2 unitary from three angles and a phase, without the library's samplers.
inline ComplexMatrix su2(double theta, double phi, double lambda, double global) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    ComplexMatrix u{{c, -std::polar(s, lambda)}, {std::polar(s, phi), std::polar(c, phi + lambda)}};
    return u * std::polar(1.0, global);
}

inline ComplexMatrix random_local(lopt::Rng &rng) {
    return su2(rng.uniform(0, lopt::kPi), rng.uniform(-lopt::kPi, lopt::kPi), rng.uniform(-lopt::kPi, lopt::kPi),
               rng.uniform(-lopt::kPi, lopt::kPi));
}

inline ComplexMatrix random_complex(std::size_t r, std::size_t c, lopt::Rng &rng) {
    ComplexMatrix m(r, c);
    for (auto &z : m.data()) z = cplx(rng.normal(), rng.normal());
    return m;
}

}  // namespace oracle
