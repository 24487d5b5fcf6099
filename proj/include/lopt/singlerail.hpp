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

// Two single-rail qubits in two modes.
//
// Six-dimensional basis, fixed order:
//     0 |00>   1 |10>   2 |01>   3 |11>   4 |20>   5 |02>
// Indices 0..3 are the computational subspace, 4..5 the bunched states.
//
// Two-qubit gates use qubit 1 = mode 1, qubit 2 = mode 2 and index
// 2*n1 + n2, so |10> (six-index 1) is two-qubit index 2 and |01> (six-index
// 2) is two-qubit index 1.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/fock.hpp"
#include "lopt/linalg.hpp"
#include "lopt/matrix.hpp"
#include "lopt/modes.hpp"

namespace lopt {

/// Unitary 6x6 gate that preserves photon number ({0}, {1,2}, {3,4,5}).
class SixDimGate {
   public:
    static constexpr double kTolerance = 1e-10;

    explicit SixDimGate(ComplexMatrix m) : matrix_(std::move(m)) {
        if (matrix_.rows() != 6 || matrix_.cols() != 6) throw InvalidInput("SixDimGate: matrix must be 6x6");
        const double d = unitarity_defect(matrix_);
        if (d > kTolerance) throw InvalidInput("SixDimGate: not unitary (defect " + std::to_string(d) + ")");
        if (sector_coupling() > kTolerance) throw InvalidInput("SixDimGate: couples different photon numbers");
    }

    const ComplexMatrix &matrix() const { return matrix_; }
    cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    friend SixDimGate operator*(const SixDimGate &a, const SixDimGate &b) { return SixDimGate(a.matrix_ * b.matrix_); }

   private:
    double sector_coupling() const {
        static constexpr std::array<int, 6> sector{0, 1, 1, 2, 2, 2};
        double s = 0.0;
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                if (sector[r] != sector[c]) s += std::norm(matrix_(r, c));
        return std::sqrt(s);
    }

    ComplexMatrix matrix_;
};

struct SubspacePartition {
    std::array<std::size_t, 4> computational{0, 1, 2, 3};
    std::array<std::size_t, 2> bunched{4, 5};
};

/// Two-qubit unitary in the 2*n1 + n2 convention.
class TwoQubitGate {
   public:
    static constexpr double kTolerance = 1e-9;

    explicit TwoQubitGate(ComplexMatrix m) : matrix_(std::move(m)) {
        if (matrix_.rows() != 4 || matrix_.cols() != 4) throw InvalidInput("TwoQubitGate: matrix must be 4x4");
        const double d = unitarity_defect(matrix_);
        if (d > kTolerance) throw InvalidInput("TwoQubitGate: not unitary (defect " + std::to_string(d) + ")");
    }

    const ComplexMatrix &matrix() const { return matrix_; }

   private:
    ComplexMatrix matrix_;
};

struct LeakageEntry {
    std::size_t row;
    std::size_t col;
    double magnitude;
};

struct LeakageReport {
    double frobenius_leakage = 0.0;
    std::vector<LeakageEntry> offending;
};

inline const ComplexMatrix &swap_gate() {
    static const ComplexMatrix s{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    return s;
}

inline const ComplexMatrix &cnot_gate() {
    static const ComplexMatrix c{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    return c;
}

// ---------------------------------------------------------------------------
// The composite gate on the six-dimensional basis.

/// Closed-form blocks of U(alpha, beta, gamma, delta, eps): vacuum 1, the
/// one-photon block A2 and the two-photon block B2.
///
/// The |11> <-> |20>,|02> couplings carry i sin(2 eps)/sqrt(2), the sign
/// produced by lifting the one-photon block through the bosonic algebra.
inline SixDimGate composite_gate_fock(const CompositeGateParams &p) {
    const auto t = quarter_turn_trig(p.epsilon);
    const double c = t.cos, s = t.sin;
    const double c2 = c * c - s * s;
    const double s2 = 2.0 * s * c;
    const cplx b = kI * s2 / std::sqrt(2.0);
    const auto e = [](double x) { return std::polar(1.0, x); };
    const double al = p.alpha, be = p.beta, ga = p.gamma, de = p.delta;

    ComplexMatrix m(6, 6);
    m(0, 0) = 1.0;
    m(1, 1) = e(al + ga) * c;
    m(1, 2) = kI * e(al + de) * s;
    m(2, 1) = kI * e(be + ga) * s;
    m(2, 2) = e(be + de) * c;

    m(3, 3) = e(al + be + ga + de) * c2;
    m(3, 4) = e(al + be + 2 * ga) * b;
    m(3, 5) = e(al + be + 2 * de) * b;
    m(4, 3) = e(2 * al + ga + de) * b;
    m(4, 4) = e(2 * (al + ga)) * (c * c);
    m(4, 5) = -e(2 * (al + de)) * (s * s);
    m(5, 3) = e(2 * be + ga + de) * b;
    m(5, 4) = -e(2 * (be + ga)) * (s * s);
    m(5, 5) = e(2 * (be + de)) * (c * c);
    return SixDimGate(std::move(m));
}

/// Assemble the six-dimensional gate from the permanent lifts of a two-mode
/// unitary on the N = 0, 1, 2 sectors.
inline SixDimGate assemble_from_lift(const ModeUnitary &u) {
    if (u.dim() != 2) throw InvalidInput("assemble_from_lift: need a two-mode unitary");
    ComplexMatrix m(6, 6);
    m(0, 0) = lift_unitary(u, 0).matrix(0, 0);
    const auto one = lift_unitary(u, 1);  // (1,0), (0,1)
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m(1 + r, 1 + c) = one.matrix(r, c);
    const auto two = lift_unitary(u, 2);  // (2,0), (1,1), (0,2)
    static constexpr std::array<std::size_t, 3> to_six{4, 3, 5};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(to_six[r], to_six[c]) = two.matrix(r, c);
    return SixDimGate(std::move(m));
}

/// Frobenius norm over the four |11> <-> bunched couplings.
inline LeakageReport leakage(const SixDimGate &g, double entry_tol = 1e-12) {
    static constexpr std::array<std::pair<std::size_t, std::size_t>, 4> coupling{{{3, 4}, {3, 5}, {4, 3}, {5, 3}}};
    LeakageReport rep;
    double s = 0.0;
    for (const auto &[r, c] : coupling) {
        const double mag = std::abs(g(r, c));
        s += mag * mag;
        if (mag > entry_tol) rep.offending.push_back({r, c, mag});
    }
    rep.frobenius_leakage = std::sqrt(s);
    return rep;
}

/// U(alpha, beta, gamma, delta, n pi): diagonal.
inline SixDimGate decoupled_form_even(int n, double alpha, double beta, double gamma, double delta) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const auto e = [](double x) { return std::polar(1.0, x); };
    const std::array<cplx, 6> d{1.0,
                                sign * e(alpha + gamma),
                                sign * e(beta + delta),
                                e(alpha + beta + gamma + delta),
                                e(2 * (alpha + gamma)),
                                e(2 * (beta + delta))};
    return SixDimGate(ComplexMatrix::diagonal(d));
}

/// U(alpha, beta, gamma, delta, (2n+1) pi/2): blocks 1, A3, B3.
inline SixDimGate decoupled_form_odd(int n, double alpha, double beta, double gamma, double delta) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const auto e = [](double x) { return std::polar(1.0, x); };
    ComplexMatrix m(6, 6);
    m(0, 0) = 1.0;
    m(1, 2) = sign * kI * e(alpha + delta);
    m(2, 1) = sign * kI * e(beta + gamma);
    m(3, 3) = -e(alpha + beta + gamma + delta);
    m(4, 5) = -e(2 * (alpha + delta));
    m(5, 4) = -e(2 * (beta + gamma));
    return SixDimGate(std::move(m));
}

/// Two-qubit index (2*n1 + n2) -> six-dimensional basis index.
inline constexpr std::array<std::size_t, 4> kQubitToSix{0, 2, 1, 3};

/// Raw computational block in the two-qubit convention. Not necessarily unitary.
inline ComplexMatrix computational_block(const ComplexMatrix &six) {
    return six.select(kQubitToSix, kQubitToSix);
}

/// The computational block, polar-projected onto U(4). Throws LeakyGate when
/// the gate still couples to the bunched states above `tol`.
inline TwoQubitGate extract_computational(const SixDimGate &g, double tol = 1e-9) {
    const double leak = leakage(g).frobenius_leakage;
    if (leak > tol) throw LeakyGate("extract_computational: leakage " + std::to_string(leak) + " exceeds tolerance", leak);
    const ComplexMatrix raw = computational_block(g.matrix());
    ComplexMatrix proj = polar_nearest_unitary(raw);
    if (distance(proj, raw) > 10.0 * tol + 1e-14)
        throw DegenerateInput("extract_computational: polar correction larger than the leakage bound");
    return TwoQubitGate(std::move(proj));
}

// ---------------------------------------------------------------------------
// Entanglement of two-qubit gates.

/// Operator-Schmidt values: singular values of R[(r1,c1),(r2,c2)] = g[(r1,r2),(c1,c2)].
inline std::vector<double> operator_schmidt_values(const ComplexMatrix &g) {
    if (g.rows() != 4 || g.cols() != 4) throw InvalidInput("operator_schmidt_values: need a 4x4 matrix");
    ComplexMatrix r(4, 4);
    for (std::size_t r1 = 0; r1 < 2; ++r1)
        for (std::size_t r2 = 0; r2 < 2; ++r2)
            for (std::size_t c1 = 0; c1 < 2; ++c1)
                for (std::size_t c2 = 0; c2 < 2; ++c2) r(2 * r1 + c1, 2 * r2 + c2) = g(2 * r1 + r2, 2 * c1 + c2);
    return singular_values(r);
}

inline std::vector<double> operator_schmidt_values(const TwoQubitGate &g) { return operator_schmidt_values(g.matrix()); }

/// min(1 - sigma1(g)^2/4, 1 - sigma1(SWAP g)^2/4), in [0, 3/4]. Zero exactly
/// for A (x) B and SWAP (A (x) B).
inline double entangling_measure(const ComplexMatrix &g) {
    const double s_direct = operator_schmidt_values(g).front();
    const double s_swapped = operator_schmidt_values(swap_gate() * g).front();
    const double e = std::min(1.0 - s_direct * s_direct / 4.0, 1.0 - s_swapped * s_swapped / 4.0);
    return std::clamp(e, 0.0, 0.75);
}

inline double entangling_measure(const TwoQubitGate &g) { return entangling_measure(g.matrix()); }

/// Leakage and entangling measure of one member of the composite-gate family.
/// The measure is taken on the polar projection of the computational block
/// even when the gate leaks.
struct CompositeGateSummary {
    double leakage;
    double entangling_measure;
};

inline CompositeGateSummary summarize_composite_gate(const CompositeGateParams &p) {
    const auto g = composite_gate_fock(p);
    return {leakage(g).frobenius_leakage, entangling_measure(polar_unitary_unchecked(computational_block(g.matrix())))};
}

}  // namespace lopt
