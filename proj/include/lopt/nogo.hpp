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

// Numerical certificates that passive linear optics cannot both decouple the
// bunched states and entangle two single-rail qubits.
//
// Modes 0 and 1 are the computational modes; 2..M-1 are ancillas.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/fock.hpp"
#include "lopt/linalg.hpp"
#include "lopt/matrix.hpp"
#include "lopt/modes.hpp"
#include "lopt/nelder_mead.hpp"
#include "lopt/rng.hpp"
#include "lopt/singlerail.hpp"

namespace lopt {

// ---------------------------------------------------------------------------
// Subspaces of a Fock sector.

inline bool is_computational(const Occupation &occ) { return occ.size() >= 2 && occ[0] <= 1 && occ[1] <= 1; }

struct BunchedPartition {
    std::vector<std::size_t> computational;
    std::vector<std::size_t> bunched;
};

/// Split basis_enumerate(M, N) into computational states (n1, n2 <= 1) and
/// bunched states (max(n1, n2) >= 2). Indices refer to the sector basis.
inline BunchedPartition bunched_partition(std::size_t modes, int photons) {
    if (modes < 2) throw InvalidInput("bunched_partition: need at least two modes");
    const FockBasis basis(modes, photons);
    BunchedPartition p;
    for (std::size_t i = 0; i < basis.size(); ++i)
        (is_computational(basis[i]) ? p.computational : p.bunched).push_back(i);
    return p;
}

/// Frobenius norm of the computational <-> bunched entries of a lifted sector.
inline double sector_leakage_squared(const LiftedUnitary &lifted) {
    const auto &st = lifted.basis.states();
    double s = 0.0;
    for (std::size_t r = 0; r < st.size(); ++r)
        for (std::size_t c = 0; c < st.size(); ++c)
            if (is_computational(st[r]) != is_computational(st[c])) s += std::norm(lifted.matrix(r, c));
    return s;
}

/// Computational <-> bunched leakage of phi(u) summed over the given sectors.
inline double fock_leakage(const ModeUnitary &u, const std::vector<int> &sectors) {
    double s = 0.0;
    for (int n : std::set<int>(sectors.begin(), sectors.end())) s += sector_leakage_squared(lift_unitary(u, n));
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// "Don't cause errors" residuals and block structure.

struct AncillaCheckReport {
    // index k corresponds to ancilla mode k + 2
    std::vector<cplx> r1;  // <vac| a1^2 V (a_i^dag)^2 |vac>, from the lifted N=2 sector
    std::vector<cplx> r2;  // <vac| a2^2 V (a_i^dag)^2 |vac>
    std::vector<cplx> r1_closed_form;  // 2 v_{i1}^2
    std::vector<cplx> r2_closed_form;  // 2 v_{i2}^2
    double closed_form_gap = 0.0;
    double residual_norm = 0.0;
    double block_defect = 0.0;
    double lemma_gap = 0.0;
};

/// Frobenius norm of the blocks coupling modes {0,1} to {2..M-1}.
inline double block_diagonality_defect(const ModeUnitary &u) {
    const std::size_t m = u.dim();
    if (m <= 2) return 0.0;
    return std::hypot(u.matrix().block(0, 2, 2, m - 2).frobenius_norm(), u.matrix().block(2, 0, m - 2, 2).frobenius_norm());
}

/// | ||upper-right||_F - ||lower-left||_F | for the split after row/column k.
/// Zero for every unitary with square diagonal blocks.
inline double block_lemma_check(const ModeUnitary &u, std::size_t k) {
    const std::size_t m = u.dim();
    if (k < 1 || k >= m) throw InvalidInput("block_lemma_check: split must satisfy 1 <= k < M");
    const double ur = u.matrix().block(0, k, k, m - k).frobenius_norm();
    const double ll = u.matrix().block(k, 0, m - k, k).frobenius_norm();
    return std::abs(ur - ll);
}

namespace detail {

inline Occupation double_occupation(std::size_t modes, std::size_t mode) {
    Occupation o(modes, 0);
    o[mode] = 2;
    return o;
}

}  // namespace detail

inline AncillaCheckReport dont_cause_errors_residuals(const ModeUnitary &u) {
    const std::size_t m = u.dim();
    if (m < 3) throw InvalidInput("dont_cause_errors_residuals: need M >= 3");
    const auto two = lift_unitary(u, 2);
    const auto v = u.heisenberg();
    const std::size_t i20 = two.basis.index_of(detail::double_occupation(m, 0));
    const std::size_t i02 = two.basis.index_of(detail::double_occupation(m, 1));

    AncillaCheckReport rep;
    double res2 = 0.0;
    for (std::size_t i = 2; i < m; ++i) {
        const std::size_t col = two.basis.index_of(detail::double_occupation(m, i));
        // <vac| a_k^2 = sqrt(2) <2_k| and (a_i^dag)^2 |vac> = sqrt(2) |2_i>
        const cplx r1 = 2.0 * two.matrix(i20, col);
        const cplx r2 = 2.0 * two.matrix(i02, col);
        const cplx c1 = 2.0 * v(i, 0) * v(i, 0);
        const cplx c2 = 2.0 * v(i, 1) * v(i, 1);
        rep.r1.push_back(r1);
        rep.r2.push_back(r2);
        rep.r1_closed_form.push_back(c1);
        rep.r2_closed_form.push_back(c2);
        rep.closed_form_gap = std::max({rep.closed_form_gap, std::abs(r1 - c1), std::abs(r2 - c2)});
        res2 += std::norm(r1) + std::norm(r2);
    }
    rep.residual_norm = std::sqrt(res2);
    rep.block_defect = block_diagonality_defect(u);
    rep.lemma_gap = block_lemma_check(u, 2);
    return rep;
}

// ---------------------------------------------------------------------------
// Searches.

struct SearchConfig {
    std::size_t modes = 2;
    int ancilla_photons = 0;
    std::size_t restarts = 100;
    std::size_t max_iterations = 20000;  // objective evaluations per restart
    double leakage_tolerance = 1e-10;
    double penalty_weight = 10.0;  // starting mu; 0 = unconstrained
    double penalty_growth = 10.0;  // mu multiplier between restart batches
    double penalty_max = 1e5;
    std::uint64_t seed = 1;
    double certification_threshold = 1e-6;
    std::size_t jobs = 1;

    bool constrained() const { return penalty_weight > 0.0; }

    void validate() const {
        if (modes < 2) throw InvalidInput("SearchConfig: modes must be >= 2");
        if (ancilla_photons < 0) throw InvalidInput("SearchConfig: ancilla_photons must be >= 0");
        if (modes == 2 && ancilla_photons != 0) throw InvalidInput("SearchConfig: ancilla photons need ancilla modes");
        if (restarts < 1) throw InvalidInput("SearchConfig: restarts must be >= 1");
        if (max_iterations < 1) throw InvalidInput("SearchConfig: max_iterations must be >= 1");
        if (!(leakage_tolerance > 0.0)) throw InvalidInput("SearchConfig: leakage_tolerance must be > 0");
        if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight))
            throw InvalidInput("SearchConfig: penalty_weight must be finite and >= 0");
        if (constrained() && !(penalty_growth >= 1.0)) throw InvalidInput("SearchConfig: penalty_growth must be >= 1");
        if (constrained() && !(penalty_max >= penalty_weight))
            throw InvalidInput("SearchConfig: penalty_max must be >= penalty_weight");
        if (!(certification_threshold > 0.0)) throw InvalidInput("SearchConfig: certification_threshold must be > 0");
    }

    /// mu for restart r: restarts are split into equal batches, one per
    /// penalty level penalty_weight * growth^k <= penalty_max.
    double penalty_for_restart(std::size_t r) const {
        if (!constrained()) return 0.0;
        std::vector<double> levels{penalty_weight};
        while (penalty_growth > 1.0 && levels.back() * penalty_growth <= penalty_max * (1 + 1e-12))
            levels.push_back(levels.back() * penalty_growth);
        const std::size_t batch = (restarts + levels.size() - 1) / levels.size();
        return levels[std::min(r / std::max<std::size_t>(batch, 1), levels.size() - 1)];
    }
};

struct RestartTrace {
    std::size_t restart = 0;
    double penalty = 0.0;
    double objective = 0.0;  // entangling - penalty * violation
    double entangling_measure = 0.0;
    double leakage = 0.0;
    double residual = 0.0;                // ancilla searches only
    double factorization_defect = 0.0;    // ancilla searches only
    bool feasible = false;
    std::size_t evaluations = 0;
    std::vector<double> parameters;
};

struct SearchResult {
    bool constrained = true;
    bool feasible_found = false;
    std::size_t best_restart = 0;
    double best_entangling_measure = 0.0;
    double best_leakage = 0.0;
    double best_residual = 0.0;
    double best_factorization_defect = 0.0;
    std::vector<double> best_parameters;
    std::vector<RestartTrace> trace;
    double wall_time = 0.0;  // seconds

    /// Certificate outcome: a feasible optimum below the threshold.
    bool certified(double threshold) const { return feasible_found && best_entangling_measure < threshold; }
};

/// Pointwise evaluation shared by both searches.
struct PointEvaluation {
    double entangling_measure = 0.0;
    double leakage = 0.0;
    double residual = 0.0;
    double factorization_defect = 0.0;

    double violation() const { return leakage + residual + factorization_defect; }
    bool feasible(double tol) const { return leakage <= tol && residual <= tol && factorization_defect <= tol; }
};

inline PointEvaluation evaluate_two_mode(const std::vector<double> &p) {
    const auto s = summarize_composite_gate(CompositeGateParams(p[0], p[1], p[2], p[3], p[4]));
    return {s.entangling_measure, s.leakage, 0.0, 0.0};
}

/// Hermitian generator from M^2 reals: diagonal first, then (re, im) of the
/// strict upper triangle row by row.
inline HermitianGenerator hermitian_from_parameters(std::size_t modes, const std::vector<double> &x) {
    if (x.size() != modes * modes) throw InvalidInput("hermitian_from_parameters: need M^2 parameters");
    ComplexMatrix h(modes, modes);
    std::size_t k = modes;
    for (std::size_t i = 0; i < modes; ++i) {
        h(i, i) = x[i];
        for (std::size_t j = i + 1; j < modes; ++j) {
            h(i, j) = cplx(x[k], x[k + 1]);
            h(j, i) = std::conj(h(i, j));
            k += 2;
        }
    }
    return HermitianGenerator(std::move(h));
}

/// Induced two-qubit action of a mode unitary with `ancilla_photons` photons
/// parked in mode 2.
///
/// Each computational input |n1 n2> (x) |anc> is propagated. Output weight on
/// states that are not (computational pair with the same photon count) (x)
/// (ancilla pattern with the original ancilla count) is lost; the kept
/// amplitudes form R[a, (c', q)], which must be rank one for the output to be
/// a product with a common ancilla factor. The leading singular pair of R
/// gives the 4x4 computational action.
struct InducedAction {
    ComplexMatrix gate;           // raw 4x4, 2*n1 + n2 convention
    double factorization_defect;  // sqrt(lost weight + non-rank-one weight of R)
};

inline InducedAction induced_computational_action(const ModeUnitary &u, int ancilla_photons,
                                                  const std::vector<LiftedUnitary> &sectors) {
    const std::size_t m = u.dim();
    const FockBasis anc_basis(m - 2, ancilla_photons);
    Occupation anc_in(m - 2, 0);
    anc_in[0] = ancilla_photons;

    ComplexMatrix r(anc_basis.size(), 16);
    double lost = 0.0;
    for (std::size_t q = 0; q < 4; ++q) {
        const int n1 = static_cast<int>(q >> 1), n2 = static_cast<int>(q & 1);
        Occupation in{n1, n2};
        in.insert(in.end(), anc_in.begin(), anc_in.end());
        const int n = n1 + n2 + ancilla_photons;
        const auto it = std::find_if(sectors.begin(), sectors.end(), [n](const auto &s) { return s.basis.photons() == n; });
        if (it == sectors.end()) throw InvalidInput("induced_computational_action: missing sector");
        const std::size_t col = it->basis.index_of(in);
        for (std::size_t row = 0; row < it->basis.size(); ++row) {
            const Occupation &out = it->basis[row];
            const cplx amp = it->matrix(row, col);
            const Occupation anc(out.begin() + 2, out.end());
            if (out[0] <= 1 && out[1] <= 1 && total_photons(anc) == ancilla_photons) {
                const std::size_t cq = static_cast<std::size_t>(2 * out[0] + out[1]);
                r(anc_basis.index_of(anc), cq * 4 + q) = amp;
            } else {
                lost += std::norm(amp);
            }
        }
    }
    const auto s = svd(r);
    double tail = 0.0;
    for (std::size_t k = 1; k < s.singular_values.size(); ++k) tail += s.singular_values[k] * s.singular_values[k];
    ComplexMatrix g(4, 4);
    for (std::size_t cq = 0; cq < 4; ++cq)
        for (std::size_t q = 0; q < 4; ++q) g(cq, q) = s.singular_values[0] * s.v_adjoint(0, cq * 4 + q);
    return {std::move(g), std::sqrt(lost + tail)};
}

inline PointEvaluation evaluate_mode_unitary(const ModeUnitary &u, int ancilla_photons) {
    const std::size_t m = u.dim();
    std::set<int> needed{2, ancilla_photons, ancilla_photons + 1, ancilla_photons + 2};
    std::vector<LiftedUnitary> sectors;
    for (int n : needed) sectors.push_back(lift_unitary(u, n));

    double leak2 = 0.0;
    for (const auto &s : sectors) leak2 += sector_leakage_squared(s);

    const auto &two = *std::find_if(sectors.begin(), sectors.end(), [](const auto &s) { return s.basis.photons() == 2; });
    const std::size_t i20 = two.basis.index_of(detail::double_occupation(m, 0));
    const std::size_t i02 = two.basis.index_of(detail::double_occupation(m, 1));
    double res2 = 0.0;
    for (std::size_t i = 2; i < m; ++i) {
        const std::size_t col = two.basis.index_of(detail::double_occupation(m, i));
        res2 += std::norm(2.0 * two.matrix(i20, col)) + std::norm(2.0 * two.matrix(i02, col));
    }

    const auto act = induced_computational_action(u, ancilla_photons, sectors);
    PointEvaluation ev;
    ev.entangling_measure = entangling_measure(polar_unitary_unchecked(act.gate));
    ev.leakage = std::sqrt(leak2);
    ev.residual = std::sqrt(res2);
    ev.factorization_defect = act.factorization_defect;
    return ev;
}

inline PointEvaluation evaluate_ancilla(std::size_t modes, int ancilla_photons, const std::vector<double> &x) {
    return evaluate_mode_unitary(ModeUnitary(exp_i_hermitian(hermitian_from_parameters(modes, x))), ancilla_photons);
}

namespace detail {

// Nelder-Mead from x0, then re-seeded from the incumbent with shrinking
// simplices until a round stops improving.
template <class F>
NelderMeadResult optimize_with_polish(F &&f, std::vector<double> x0, std::size_t budget) {
    NelderMeadOptions opt;
    opt.max_evaluations = budget;
    opt.initial_step = 0.5;
    auto best = nelder_mead(f, std::move(x0), opt);
    std::size_t used = best.evaluations;
    double step = 0.1;
    for (int round = 0; round < 12 && used < budget; ++round) {
        opt.max_evaluations = budget - used;
        opt.initial_step = step;
        auto next = nelder_mead(f, best.x, opt);
        used += next.evaluations;
        const bool improved = next.f < best.f;
        if (improved) {
            best.x = std::move(next.x);
            best.f = next.f;
        }
        if (!improved) step *= 0.1;
        if (step < 1e-14) break;
    }
    best.evaluations = used;
    return best;
}

template <class Eval, class Init>
SearchResult run_search(const SearchConfig &cfg, Eval &&evaluate, Init &&initial_point) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<RestartTrace> traces(cfg.restarts);

    auto run_one = [&](std::size_t r) {
        Rng rng = Rng::stream(cfg.seed, r);
        const double mu = cfg.penalty_for_restart(r);
        auto objective = [&](const std::vector<double> &x) {
            const auto ev = evaluate(x);
            return -(ev.entangling_measure - mu * ev.violation());
        };
        auto nm = optimize_with_polish(objective, initial_point(rng), cfg.max_iterations);
        const auto ev = evaluate(nm.x);
        RestartTrace t;
        t.restart = r;
        t.penalty = mu;
        t.objective = ev.entangling_measure - mu * ev.violation();
        t.entangling_measure = ev.entangling_measure;
        t.leakage = ev.leakage;
        t.residual = ev.residual;
        t.factorization_defect = ev.factorization_defect;
        t.feasible = ev.feasible(cfg.leakage_tolerance);
        t.evaluations = nm.evaluations;
        t.parameters = nm.x;
        traces[r] = std::move(t);
    };

    const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, cfg.restarts));
    if (jobs == 1) {
        for (std::size_t r = 0; r < cfg.restarts; ++r) run_one(r);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back([&, j] {
                for (std::size_t r = j; r < cfg.restarts; r += jobs) run_one(r);
            });
        for (auto &th : pool) th.join();
    }

    SearchResult res;
    res.constrained = cfg.constrained();
    std::optional<std::size_t> best;
    for (const auto &t : traces) {
        if (res.constrained && !t.feasible) continue;
        if (!best || t.entangling_measure > traces[*best].entangling_measure) best = t.restart;
    }
    res.feasible_found = std::any_of(traces.begin(), traces.end(), [](const auto &t) { return t.feasible; });
    if (best) {
        const auto &b = traces[*best];
        res.best_restart = b.restart;
        res.best_entangling_measure = b.entangling_measure;
        res.best_leakage = b.leakage;
        res.best_residual = b.residual;
        res.best_factorization_defect = b.factorization_defect;
        res.best_parameters = b.parameters;
    }
    res.trace = std::move(traces);
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace detail

/// Search the five-parameter composite-gate family for entanglement under
/// the leakage penalty. Starting epsilons within 0.05 of a multiple of pi/4
/// are rejected.
inline SearchResult nogo_search_two_mode(const SearchConfig &cfg) {
    if (cfg.modes != 2) throw InvalidInput("nogo_search_two_mode: config must have modes = 2");
    auto init = [](Rng &rng) {
        std::vector<double> x(5);
        for (std::size_t k = 0; k < 4; ++k) x[k] = rng.uniform(-kPi, kPi);
        double eps;
        do {
            eps = rng.uniform(-kPi, kPi);
        } while (std::abs(std::remainder(eps, kPi / 4)) < 0.05);
        x[4] = eps;
        return x;
    };
    return detail::run_search(cfg, evaluate_two_mode, init);
}

/// Search full Hermitian generators on M >= 3 modes, with the ancilla
/// photons starting in mode 2, penalising don't-cause-errors residuals,
/// computational/bunched leakage and failure of the output to factorise.
inline SearchResult nogo_search_ancilla(const SearchConfig &cfg) {
    if (cfg.modes < 3) throw InvalidInput("nogo_search_ancilla: config must have modes >= 3");
    cfg.validate();
    for (int n : {2, cfg.ancilla_photons + 2}) {
        if (sector_dimension(cfg.modes, n) > static_cast<double>(kDefaultBasisCap))
            throw ResourceLimit("nogo_search_ancilla: sector dimension exceeds basis cap");
    }
    const std::size_t m = cfg.modes;
    const int k = cfg.ancilla_photons;
    auto eval = [m, k](const std::vector<double> &x) { return evaluate_ancilla(m, k, x); };
    auto init = [m](Rng &rng) {
        std::vector<double> x(m * m);
        for (auto &v : x) v = rng.uniform(-kPi, kPi) * 0.5;
        return x;
    };
    return detail::run_search(cfg, eval, init);
}

inline SearchResult nogo_search(const SearchConfig &cfg) {
    return cfg.modes == 2 ? nogo_search_two_mode(cfg) : nogo_search_ancilla(cfg);
}

}  // namespace lopt
