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

// Invariant suites runnable from the command line (`lopt verify <suite>`).
// Each check reports its worst residual against a fixed tolerance.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lopt/fock.hpp"
#include "lopt/linalg.hpp"
#include "lopt/modes.hpp"
#include "lopt/nogo.hpp"
#include "lopt/permanent.hpp"
#include "lopt/singlerail.hpp"

namespace lopt {

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

inline const std::vector<std::string> &verify_suites() {
    static const std::vector<std::string> s{"algebra", "fock", "singlerail", "nogo", "all"};
    return s;
}

namespace detail {

inline CheckResult make_check(std::string suite, std::string name, double residual, double tol) {
    return {std::move(suite), std::move(name), residual, tol, residual < tol};
}

inline CompositeGateParams random_params(Rng &rng) {
    return {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
            rng.uniform(-kPi, kPi)};
}

inline std::vector<CheckResult> verify_algebra(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const auto x = generator_xyz(Su2Generator::X).matrix();
    const auto y = generator_xyz(Su2Generator::Y).matrix();
    const auto z = generator_xyz(Su2Generator::Z).matrix();
    out.push_back(make_check("algebra", "[X,Y]=iZ", distance(commutator(x, y), kI * z), 1e-14));
    out.push_back(make_check("algebra", "[Y,Z]=iX", distance(commutator(y, z), kI * x), 1e-14));
    out.push_back(make_check("algebra", "[Z,X]=iY", distance(commutator(z, x), kI * y), 1e-14));

    Rng rng(seed);
    double unit = 0.0, closure = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto a = composite_gate_mode_matrix(random_params(rng));
        const auto b = composite_gate_mode_matrix(random_params(rng));
        unit = std::max(unit, unitarity_defect(a.matrix()));
        closure = std::max(closure, unitarity_defect(a.matrix() * b.matrix()));
    }
    out.push_back(make_check("algebra", "composite gate unitary", unit, 1e-12));
    out.push_back(make_check("algebra", "composite gate closure in U(2)", closure, 1e-12));

    double expo = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto h = random_hermitian(2 + static_cast<std::size_t>(i % 5), seed + 100 + static_cast<std::uint64_t>(i));
        expo = std::max(expo, distance(exp_i_hermitian(h) * exp_i_hermitian(-h), ComplexMatrix::identity(h.dim())));
    }
    out.push_back(make_check("algebra", "exp(iH) exp(-iH) = I", expo, 1e-10));

    double reck = 0.0;
    for (std::size_t m = 2; m <= 5; ++m)
        for (int i = 0; i < 100; ++i) {
            const ModeUnitary v(haar_random_unitary(m, seed + 1000 * m + static_cast<std::uint64_t>(i)));
            reck = std::max(reck, distance(recompose(reck_decompose(v)).matrix(), v.matrix()));
        }
    out.push_back(make_check("algebra", "Reck roundtrip M=2..5", reck, 1e-9));
    return out;
}

inline std::vector<CheckResult> verify_fock(std::uint64_t seed) {
    std::vector<CheckResult> out;
    {
        const ModeUnitary bs(beam_splitter_matrix(kPi / 4));
        const auto two = lift_unitary(bs, 2);
        const auto i11 = two.basis.index_of({1, 1});
        out.push_back(make_check("fock", "Hong-Ou-Mandel <11|B(pi/4)|11> = 0", std::abs(two.matrix(i11, i11)), 1e-14));
    }
    double hom = 0.0, unit = 0.0, oracle = 0.0;
    std::uint64_t s = seed;
    for (std::size_t m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int rep = 0; rep < 5; ++rep) {
                const ModeUnitary a(haar_random_unitary(m, ++s));
                const ModeUnitary b(haar_random_unitary(m, ++s));
                const auto la = lift_unitary(a, n), lb = lift_unitary(b, n), lab = lift_unitary(a * b, n);
                hom = std::max(hom, distance(lab.matrix, la.matrix * lb.matrix));
                unit = std::max(unit, unitarity_defect(la.matrix));
                if (rep == 0) {
                    for (std::size_t c = 0; c < la.basis.size(); ++c) {
                        const auto poly = lift_via_substitution(a, OccupationPolynomial::fock_state(la.basis[c]));
                        for (std::size_t r = 0; r < la.basis.size(); ++r)
                            oracle = std::max(oracle, std::abs(la.matrix(r, c) - poly.amplitude(la.basis[r])));
                    }
                }
            }
    out.push_back(make_check("fock", "homomorphism phi(ab) = phi(a) phi(b), M<=4 N<=4", hom, 1e-9));
    out.push_back(make_check("fock", "lifted unitarity, M<=4 N<=4", unit, 1e-9));
    out.push_back(make_check("fock", "permanent lift = substitution oracle", oracle, 1e-10));

    double vac = 0.0;
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto l = lift_unitary(ModeUnitary(haar_random_unitary(m, seed + 77 + m)), 0);
        vac = std::max(vac, std::abs(l.matrix(0, 0) - 1.0) + (l.basis.size() == 1 ? 0.0 : 1.0));
    }
    out.push_back(make_check("fock", "vacuum fixed point", vac, 1e-15));

    double perm = 0.0;
    Rng rng(seed + 5);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            ComplexMatrix a(n, n);
            for (auto &z : a.data()) z = cplx(rng.normal(), rng.normal());
            const cplx ref = permanent_naive(a);
            perm = std::max(perm, std::abs(permanent_ryser(a) - ref) / std::max(std::abs(ref), 1e-300));
        }
    out.push_back(make_check("fock", "ryser = naive permanent, n<=8", perm, 1e-10));

    double fact = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        const ModeUnitary vc(haar_random_unitary(2, seed + 300 + static_cast<std::uint64_t>(rep)));
        const ModeUnitary va(haar_random_unitary(2, seed + 400 + static_cast<std::uint64_t>(rep)));
        fact = std::max(fact, sector_product_check(vc, va, 3).residual);
    }
    out.push_back(make_check("fock", "factorised-state propagation M=4 N=3", fact, 1e-10));
    return out;
}

inline std::vector<CheckResult> verify_singlerail(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    double agree = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        agree = std::max(agree, (composite_gate_fock(p).matrix() - assemble_from_lift(composite_gate_mode_matrix(p)).matrix()).max_abs());
    }
    out.push_back(make_check("singlerail", "closed-form blocks = permanent lift", agree, 1e-12));

    double law = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double eps = rng.uniform(-kPi, kPi);
        const CompositeGateParams p(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi), eps);
        law = std::max(law, std::abs(leakage(composite_gate_fock(p)).frobenius_leakage -
                                     std::sqrt(2.0) * std::abs(std::sin(2 * p.epsilon))));
    }
    out.push_back(make_check("singlerail", "leakage = sqrt2 |sin 2eps|", law, 1e-12));

    double forms = 0.0, ent = 0.0;
    for (int n = -3; n <= 3; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            const double a = rng.uniform(-kPi, kPi), b = rng.uniform(-kPi, kPi), c = rng.uniform(-kPi, kPi),
                         d = rng.uniform(-kPi, kPi);
            const auto even = composite_gate_fock(CompositeGateParams(a, b, c, d, n * kPi));
            const auto odd = composite_gate_fock(CompositeGateParams(a, b, c, d, (2 * n + 1) * kHalfPi));
            forms = std::max(forms, (even.matrix() - decoupled_form_even(n, a, b, c, d).matrix()).max_abs());
            forms = std::max(forms, (odd.matrix() - decoupled_form_odd(n, a, b, c, d).matrix()).max_abs());
            ent = std::max({ent, entangling_measure(extract_computational(even)), entangling_measure(extract_computational(odd))});
        }
    out.push_back(make_check("singlerail", "even/odd decoupled forms", forms, 1e-12));
    out.push_back(make_check("singlerail", "decoupled gates are non-entangling", ent, 1e-10));
    out.push_back(make_check("singlerail", "CNOT entangling measure = 1/2", std::abs(entangling_measure(cnot_gate()) - 0.5), 1e-12));
    return out;
}

inline std::vector<CheckResult> verify_nogo(std::uint64_t seed) {
    std::vector<CheckResult> out;
    double gap = 0.0;
    for (std::size_t m : {3u, 4u})
        for (int i = 0; i < 50; ++i)
            gap = std::max(gap, dont_cause_errors_residuals(ModeUnitary(haar_random_unitary(m, seed + 10 * m + static_cast<std::uint64_t>(i))))
                                    .closed_form_gap);
    out.push_back(make_check("nogo", "residual = 2 v_i1^2 closed form", gap, 1e-10));

    double lemma = 0.0;
    for (std::size_t m : {3u, 4u, 6u})
        for (int i = 0; i < 100; ++i) {
            const ModeUnitary u(haar_random_unitary(m, seed + 1000 * m + static_cast<std::uint64_t>(i)));
            for (std::size_t k = 1; k < m; ++k) lemma = std::max(lemma, block_lemma_check(u, k));
        }
    out.push_back(make_check("nogo", "||upper-right|| = ||lower-left||", lemma, 1e-10));

    double blockres = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto u = direct_sum(ModeUnitary(haar_random_unitary(2, seed + 50 + static_cast<std::uint64_t>(i))),
                                  ModeUnitary(haar_random_unitary(2, seed + 90 + static_cast<std::uint64_t>(i))));
        blockres = std::max(blockres, dont_cause_errors_residuals(u).residual_norm);
    }
    out.push_back(make_check("nogo", "block-diagonal v has zero residuals", blockres, 1e-300));

    double consistency = 0.0;
    Rng rng(seed + 3);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params(rng);
        consistency = std::max(consistency, std::abs(leakage(composite_gate_fock(p)).frobenius_leakage -
                                                     fock_leakage(composite_gate_mode_matrix(p), {0, 1, 2})));
    }
    out.push_back(make_check("nogo", "M=2 six-dim leakage = sector leakage", consistency, 1e-12));

    SearchConfig cfg;
    cfg.restarts = 5;
    cfg.max_iterations = 4000;
    cfg.penalty_weight = 1e3;
    cfg.seed = seed;
    const auto r = nogo_search_two_mode(cfg);
    out.push_back(make_check("nogo", "two-mode constrained search (5 restarts)",
                             r.feasible_found ? r.best_entangling_measure : INFINITY, 1e-6));
    return out;
}

}  // namespace detail

/// Run one suite (or "all"). Throws InvalidInput for an unknown name.
inline std::vector<CheckResult> run_verify_suite(const std::string &suite, std::uint64_t seed = 1) {
    if (suite == "algebra") return detail::verify_algebra(seed);
    if (suite == "fock") return detail::verify_fock(seed);
    if (suite == "singlerail") return detail::verify_singlerail(seed);
    if (suite == "nogo") return detail::verify_nogo(seed);
    if (suite == "all") {
        std::vector<CheckResult> out;
        for (const auto &name : {"algebra", "fock", "singlerail", "nogo"}) {
            auto part = run_verify_suite(name, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw InvalidInput("unknown verify suite '" + suite + "'");
}

}  // namespace lopt
