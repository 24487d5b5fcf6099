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

// Mode-level (M x M) optics.
//
// Convention: a ModeUnitary u is the single-photon transfer matrix,
// u(i, j) = <e_i| V |e_j>, so the creation operators transform as
//     V a_j^dag V^dag = sum_i u(i, j) a_i^dag .
// The Heisenberg coefficient matrix v with V a_i^dag V^dag = sum_j v_ij a_j^dag
// is therefore u^T. For a passive network V = exp(i sum theta_ij a_i^dag a_j)
// the transfer matrix is u = exp(i theta).

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/linalg.hpp"
#include "lopt/matrix.hpp"

namespace lopt {

/// Unitary M x M transfer matrix, validated on construction.
class ModeUnitary {
   public:
    static constexpr double kTolerance = 1e-10;

    explicit ModeUnitary(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.square()) throw InvalidInput("ModeUnitary: matrix must be square");
        const double d = unitarity_defect(matrix_);
        if (d > kTolerance) throw InvalidInput("ModeUnitary: not unitary (defect " + std::to_string(d) + ")");
    }

    static ModeUnitary identity(std::size_t m) { return ModeUnitary(ComplexMatrix::identity(m)); }

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix &matrix() const { return matrix_; }
    cplx operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

    /// Coefficients v_ij of V a_i^dag V^dag = sum_j v_ij a_j^dag.
    ComplexMatrix heisenberg() const { return matrix_.transpose(); }

    friend ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b) {
        return ModeUnitary(a.matrix_ * b.matrix_);
    }

   private:
    ComplexMatrix matrix_;
};

inline ModeUnitary direct_sum(const ModeUnitary &a, const ModeUnitary &b) {
    return ModeUnitary(direct_sum(a.matrix(), b.matrix()));
}

/// Reduce an angle to (-pi, pi].
inline double canonical_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

/// cos/sin evaluated through quarter-turn reduction, so that exact multiples
/// of pi/2 (as produced by k * kHalfPi) give exact 0 and +-1.
struct QuarterTurnTrig {
    double cos;
    double sin;
};

inline QuarterTurnTrig quarter_turn_trig(double angle) {
    const double k = std::nearbyint(angle / kHalfPi);
    const double r = angle - k * kHalfPi;
    const double c = std::cos(r);
    const double s = std::sin(r);
    const long q = static_cast<long>(std::fmod(k, 4.0) + 4.0) % 4;
    switch (q) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

/// Range-reduced epsilon that keeps exact quarter-turn multiples exact.
inline double canonical_quarter_turn_angle(double angle) {
    double k = std::nearbyint(angle / kHalfPi);
    const double r = angle - k * kHalfPi;
    long q = static_cast<long>(std::fmod(k, 4.0) + 4.0) % 4;  // 0..3
    if (q == 3) q = -1;
    if (q == 2 && r > 0) q = -2;
    return static_cast<double>(q) * kHalfPi + r;
}

/// Euler angles of the composite two-mode gate
/// U = e^{i(alpha n1 + beta n2)} e^{i eps X~} e^{i(gamma n1 + delta n2)}.
struct CompositeGateParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;

    CompositeGateParams() = default;
    CompositeGateParams(double a, double b, double g, double d, double e)
        : alpha(canonical_angle(a)),
          beta(canonical_angle(b)),
          gamma(canonical_angle(g)),
          delta(canonical_angle(d)),
          epsilon(canonical_quarter_turn_angle(e)) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(g) || !std::isfinite(d) || !std::isfinite(e))
            throw InvalidInput("CompositeGateParams: angles must be finite");
    }
};

enum class Su2Generator { X, Y, Z };

/// Halved su(2) generators in the single-photon representation:
/// X = (a2^dag a1 + a1^dag a2)/2, Y = (i/2)(a2^dag a1 - a1^dag a2), Z = (n1 - n2)/2.
inline HermitianGenerator generator_xyz(Su2Generator which) {
    switch (which) {
        case Su2Generator::X: return HermitianGenerator(ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}});
        case Su2Generator::Y: return HermitianGenerator(ComplexMatrix{{0.0, -0.5 * kI}, {0.5 * kI, 0.0}});
        case Su2Generator::Z: break;
    }
    return HermitianGenerator(ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}});
}

/// Unhalved beam-splitter generator a2^dag a1 + a1^dag a2, the one entering
/// the composite gate.
inline HermitianGenerator beam_splitter_generator() { return HermitianGenerator(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }

/// B(eps) = exp(i eps X~) = [[cos eps, i sin eps], [i sin eps, cos eps]].
inline ComplexMatrix beam_splitter_matrix(double epsilon) {
    const auto t = quarter_turn_trig(epsilon);
    return ComplexMatrix{{t.cos, kI * t.sin}, {kI * t.sin, t.cos}};
}

inline ModeUnitary composite_gate_mode_matrix(const CompositeGateParams &p) {
    const auto t = quarter_turn_trig(p.epsilon);
    const cplx ea = std::polar(1.0, p.alpha), eb = std::polar(1.0, p.beta);
    const cplx eg = std::polar(1.0, p.gamma), ed = std::polar(1.0, p.delta);
    // diag(ea, eb) * B(eps) * diag(eg, ed), written out entrywise
    return ModeUnitary(ComplexMatrix{{ea * t.cos * eg, ea * (kI * t.sin) * ed},
                                     {eb * (kI * t.sin) * eg, eb * t.cos * ed}});
}

// ---------------------------------------------------------------------------
// Optical elements and Reck decomposition.

enum class ElementKind { PhaseShifter, BeamSplitter };

/// One passive element acting on at most two modes.
///
/// PhaseShifter: diag(..., e^{i angle} at mode_a, ...).
/// BeamSplitter on (mode_a, mode_b): B(angle) * diag(e^{i phase}, 1) in that
/// ordered pair, i.e. [[cos t e^{i phi}, i sin t], [i sin t e^{i phi}, cos t]].
struct OpticalElement {
    ElementKind kind = ElementKind::PhaseShifter;
    std::size_t mode_a = 0;
    std::size_t mode_b = 0;  // beam splitters only
    double angle = 0.0;
    double phase = 0.0;  // beam splitters only

    static OpticalElement phase_shifter(std::size_t mode, double theta) {
        return {ElementKind::PhaseShifter, mode, mode, canonical_angle(theta), 0.0};
    }
    static OpticalElement beam_splitter(std::size_t a, std::size_t b, double theta, double phi = 0.0) {
        return {ElementKind::BeamSplitter, a, b, theta, canonical_angle(phi)};
    }

    friend bool operator==(const OpticalElement &, const OpticalElement &) = default;
};

/// Ordered element list. Element 0 acts first, so the network unitary is
/// E_{n-1} ... E_1 E_0.
struct Netlist {
    std::size_t modes = 0;
    std::vector<OpticalElement> elements;

    std::size_t beam_splitter_count() const {
        std::size_t n = 0;
        for (const auto &e : elements) n += e.kind == ElementKind::BeamSplitter;
        return n;
    }
};

inline void validate_element(const OpticalElement &e, std::size_t modes) {
    if (e.mode_a >= modes) throw InvalidInput("optical element: mode index out of range");
    if (e.kind == ElementKind::BeamSplitter) {
        if (e.mode_b >= modes) throw InvalidInput("optical element: mode index out of range");
        if (e.mode_a == e.mode_b) throw InvalidInput("optical element: beam splitter modes must differ");
    }
    if (!std::isfinite(e.angle) || !std::isfinite(e.phase)) throw InvalidInput("optical element: non-finite angle");
}

/// Left-multiply `m` by the element in place (rows mode_a/mode_b only).
inline void apply_element(ComplexMatrix &m, const OpticalElement &e) {
    if (e.kind == ElementKind::PhaseShifter) {
        const cplx ph = std::polar(1.0, e.angle);
        for (std::size_t c = 0; c < m.cols(); ++c) m(e.mode_a, c) *= ph;
        return;
    }
    const auto t = quarter_turn_trig(e.angle);
    const cplx ph = std::polar(1.0, e.phase);
    const cplx t00 = t.cos * ph, t01 = kI * t.sin, t10 = kI * t.sin * ph, t11 = t.cos;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const cplx xa = m(e.mode_a, c), xb = m(e.mode_b, c);
        m(e.mode_a, c) = t00 * xa + t01 * xb;
        m(e.mode_b, c) = t10 * xa + t11 * xb;
    }
}

inline ModeUnitary recompose(const Netlist &net) {
    if (net.modes == 0) throw InvalidInput("recompose: netlist needs at least one mode");
    ComplexMatrix m = ComplexMatrix::identity(net.modes);
    for (const auto &e : net.elements) {
        validate_element(e, net.modes);
        apply_element(m, e);
    }
    return ModeUnitary(std::move(m));
}

/// Triangular (Reck-style) factorisation into at most M(M-1)/2 beam splitters
/// followed by a final layer of M phase shifters.
///
/// Row r = M-1 .. 1 is cleared left of the diagonal by right-multiplying with
/// inverse elements acting on columns (p, r); what remains is diagonal.
inline Netlist reck_decompose(const ModeUnitary &v) {
    const std::size_t n = v.dim();
    ComplexMatrix w = v.matrix();
    std::vector<OpticalElement> found;

    for (std::size_t r = n; r-- > 1;) {
        for (std::size_t p = 0; p < r; ++p) {
            const cplx urp = w(r, p);
            const cplx urq = w(r, r);
            if (std::abs(urp) < 1e-15) {
                w(r, p) = 0.0;
                continue;
            }
            const double theta = std::atan2(std::abs(urp), std::abs(urq));
            double phi = 0.0;
            if (std::abs(urq) > 0.0) phi = -std::arg(kI * urq / urp);
            const auto e = OpticalElement::beam_splitter(p, r, theta, phi);
            // w <- w E^dagger on columns (p, r)
            const double c = std::cos(theta), s = std::sin(theta);
            const cplx ph = std::polar(1.0, e.phase);
            const cplx t00 = c * ph, t01 = kI * s, t10 = kI * s * ph, t11 = c;
            for (std::size_t k = 0; k < n; ++k) {
                const cplx xp = w(k, p), xq = w(k, r);
                w(k, p) = xp * std::conj(t00) + xq * std::conj(t01);
                w(k, r) = xp * std::conj(t10) + xq * std::conj(t11);
            }
            w(r, p) = 0.0;
            found.push_back(e);
        }
    }

    Netlist net{n, {}};
    net.elements = std::move(found);
    for (std::size_t k = 0; k < n; ++k) net.elements.push_back(OpticalElement::phase_shifter(k, std::arg(w(k, k))));
    return net;
}

}  // namespace lopt
