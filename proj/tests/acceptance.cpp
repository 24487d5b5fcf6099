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

// Acceptance run: one PASS/FAIL line per criterion, with the measured
// quantity, its bound and the wall time. Exit status is nonzero if any
// criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "lopt/lopt.hpp"

using namespace lopt;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

CompositeGateParams random_params(Rng &rng) {
    return {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
            rng.uniform(-kPi, kPi)};
}

SearchConfig shipped(const std::string &name) {
    auto cfg = config_from_json(json::parse(read_file(std::string(LOPT_CONFIG_DIR) + "/" + name)));
    cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
    return cfg;
}

Outcome closed_form_agreement() {
    Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = random_params(rng);
        worst = std::max(worst, (composite_gate_fock(p).matrix() - assemble_from_lift(composite_gate_mode_matrix(p)).matrix()).max_abs());
    }
    return {worst < 1e-12, "max entry gap " + sci(worst) + " < 1e-12 over 1000 tuples"};
}

Outcome leakage_law() {
    Rng rng(102);
    double worst = 0.0;
    bool exact = true;
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) {
        const double eps = kHalfPi * (i / 2500.0);  // k*pi/2 exactly when 2500 | i
        const CompositeGateParams p(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                    rng.uniform(-kPi, kPi), eps);
        const double l = leakage(composite_gate_fock(p)).frobenius_leakage;
        worst = std::max(worst, std::abs(l - std::sqrt(2.0) * std::abs(std::sin(2 * eps))));
        if (i % 2500 == 0) {
            ++zeros;
            exact = exact && l == 0.0;
        }
    }
    return {worst < 1e-12 && exact && zeros == 4,
            "max |L - sqrt2|sin2eps|| " + sci(worst) + " < 1e-12; leakage == 0 exactly at " + std::to_string(zeros) +
                " quarter-turn points: " + (exact ? "yes" : "no")};
}

Outcome decoupled_forms() {
    Rng rng(103);
    double form = 0.0, ent = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = i % 7 - 3;
        const double a = rng.uniform(-kPi, kPi), b = rng.uniform(-kPi, kPi), c = rng.uniform(-kPi, kPi),
                     d = rng.uniform(-kPi, kPi);
        const auto even = composite_gate_fock(CompositeGateParams(a, b, c, d, n * kPi));
        const auto odd = composite_gate_fock(CompositeGateParams(a, b, c, d, (2 * n + 1) * kHalfPi));
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        const ComplexMatrix p1{{1.0, 0.0}, {0.0, s * std::polar(1.0, a + c)}};
        const ComplexMatrix p2{{1.0, 0.0}, {0.0, s * std::polar(1.0, b + d)}};
        const ComplexMatrix q1{{1.0, 0.0}, {0.0, s * kI * std::polar(1.0, b + c)}};
        const ComplexMatrix q2{{1.0, 0.0}, {0.0, s * kI * std::polar(1.0, a + d)}};
        form = std::max(form, distance(computational_block(even.matrix()), kron(p1, p2)));
        form = std::max(form, distance(computational_block(odd.matrix()), swap_gate() * kron(q1, q2)));
        ent = std::max({ent, entangling_measure(extract_computational(even)), entangling_measure(extract_computational(odd))});
    }
    return {form < 1e-12 && ent < 1e-10,
            "form gap " + sci(form) + " < 1e-12; max entangling measure " + sci(ent) + " < 1e-10 (100 tuples each)"};
}

Outcome nogo_two_mode() {
    auto cfg = shipped("nogo_two_mode.json");
    const auto con = nogo_search(cfg);
    auto free_cfg = shipped("nogo_unconstrained.json");
    const auto unc = nogo_search(free_cfg);
    const bool ok = cfg.restarts >= 100 && cfg.leakage_tolerance <= 1e-10 && con.certified(1e-6) &&
                    unc.best_entangling_measure > 0.1;
    return {ok, "constrained best " + sci(con.best_entangling_measure) + " < 1e-6 over " + std::to_string(cfg.restarts) +
                    " restarts; unconstrained best " + sci(unc.best_entangling_measure) + " > 0.1"};
}

Outcome nogo_ancilla() {
    std::string detail;
    bool ok = true;
    for (const char *name : {"nogo_ancilla_m3.json", "nogo_ancilla_m4.json"}) {
        const auto cfg = shipped(name);
        const auto r = nogo_search(cfg);
        ok = ok && cfg.restarts >= 25 && r.certified(1e-6);
        detail += "M=" + std::to_string(cfg.modes) + ",K=" + std::to_string(cfg.ancilla_photons) + " best " +
                  (r.feasible_found ? sci(r.best_entangling_measure) : std::string("none feasible")) + " over " +
                  std::to_string(cfg.restarts) + " restarts; ";
    }
    return {ok, detail + "bound 1e-6"};
}

Outcome residual_closed_form() {
    double worst = 0.0;
    for (std::size_t m : {3u, 4u})
        for (int i = 0; i < 200; ++i)
            worst = std::max(worst, dont_cause_errors_residuals(ModeUnitary(haar_random_unitary(m, 60'000 * m + static_cast<std::uint64_t>(i))))
                                        .closed_form_gap);
    return {worst < 1e-10, "max |residual - 2 v_i1^2| " + sci(worst) + " < 1e-10 (200 samples at M=3 and M=4)"};
}

Outcome block_lemma() {
    double worst = 0.0;
    for (std::size_t m : {3u, 4u, 6u})
        for (int i = 0; i < 1000; ++i) {
            const ModeUnitary u(haar_random_unitary(m, 70'000 * m + static_cast<std::uint64_t>(i)));
            for (std::size_t k = 1; k < m; ++k) worst = std::max(worst, block_lemma_check(u, k));
        }
    double zero_case = 0.0;
    for (std::size_t k = 1; k < 6; ++k) {
        const auto u = direct_sum(ModeUnitary(haar_random_unitary(k, 5 + k)), ModeUnitary(haar_random_unitary(6 - k, 50 + k)));
        zero_case = std::max(zero_case, u.matrix().block(0, k, k, 6 - k).frobenius_norm());
    }
    return {worst < 1e-10 && zero_case == 0.0,
            "max norm gap " + sci(worst) + " < 1e-10 (1000 samples, M=3,4,6, all splits); zero lower-left gives upper-right " +
                sci(zero_case)};
}

Outcome fock_engine() {
    double hom = 0.0, unit = 0.0;
    std::uint64_t seed = 80'000;
    for (std::size_t m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int rep = 0; rep < 20; ++rep) {
                const ModeUnitary a(haar_random_unitary(m, ++seed)), b(haar_random_unitary(m, ++seed));
                const auto la = lift_unitary(a, n);
                hom = std::max(hom, distance(lift_unitary(a * b, n).matrix, la.matrix * lift_unitary(b, n).matrix));
                unit = std::max(unit, unitarity_defect(la.matrix));
            }
    const auto two = lift_unitary(ModeUnitary(beam_splitter_matrix(kPi / 4)), 2);
    const double hom_dip = std::abs(two.matrix(two.basis.index_of({1, 1}), two.basis.index_of({1, 1})));
    double fact = sector_product_check(ModeUnitary(beam_splitter_matrix(kPi / 4)), ModeUnitary::identity(1), 2).residual;
    for (int rep = 0; rep < 5; ++rep)
        fact = std::max(fact, sector_product_check(ModeUnitary(haar_random_unitary(2, 90 + static_cast<std::uint64_t>(rep))),
                                                   ModeUnitary(haar_random_unitary(2, 95 + static_cast<std::uint64_t>(rep))), 3)
                                  .residual);
    return {hom < 1e-9 && unit < 1e-9 && hom_dip < 1e-14 && fact < 1e-10,
            "homomorphism " + sci(hom) + ", unitarity " + sci(unit) + " < 1e-9; HOM amplitude " + sci(hom_dip) +
                " < 1e-14; factorised propagation " + sci(fact) + " < 1e-10"};
}

Outcome permanent_kernel() {
    Rng rng(104);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 8);
        ComplexMatrix a(n, n);
        for (auto &z : a.data()) z = cplx(rng.normal(), rng.normal());
        const cplx ref = permanent_naive(a);
        worst = std::max(worst, std::abs(permanent_ryser(a) - ref) / std::max(std::abs(ref), 1e-300));
    }
    ComplexMatrix big(20, 20);
    for (auto &z : big.data()) z = cplx(rng.normal(), rng.normal());
    const auto t0 = std::chrono::steady_clock::now();
    volatile double sink = permanent_ryser(big).real();
    (void)sink;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst < 1e-10 && secs < 2.0,
            "ryser vs naive " + sci(worst) + " < 1e-10 (500 matrices, n<=8); n=20 ryser " + sci(secs) + " s < 2 s"};
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(LOPT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("lopt_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto a = (dir / "first.json").string(), b = (dir / "second.json").string();
    const std::string cfg = std::string(LOPT_CONFIG_DIR) + "/nogo_two_mode.json";
    const int ca = run_cli("--no-timestamps --jobs 4 --out " + a + " nogo " + cfg);
    const int cb = run_cli("--no-timestamps --jobs 1 --out " + b + " nogo " + cfg);
    const bool same = ca == 0 && cb == 0 && read_file(a) == read_file(b);
    const auto bytes = std::filesystem::file_size(a);
    std::filesystem::remove_all(dir);
    return {same, "two nogo runs (4 and 1 threads) byte-identical: " + std::string(same ? "yes" : "no") + " (" +
                      std::to_string(bytes) + " bytes)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"closed-form blocks = permanent lift", closed_form_agreement},
        {"leakage law", leakage_law},
        {"decoupled-form classification", decoupled_forms},
        {"no-go certificate, M=2", nogo_two_mode},
        {"no-go certificate, M>2", nogo_ancilla},
        {"residual closed form", residual_closed_form},
        {"off-diagonal block lemma", block_lemma},
        {"Fock engine", fock_engine},
        {"permanent kernel", permanent_kernel},
        {"determinism", determinism},
    };
    const double budget[] = {5, 5, 60, 120, 600, 60, 60, 120, 60, 300};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs < budget[i];
        failures += !pass;
        std::printf("%s %2zu %s: %s [%.2f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs, budget[i]);
        std::fflush(stdout);
    }
    std::printf("%s: %zu/%zu criteria passed\n", failures ? "FAIL" : "PASS", criteria.size() - failures, criteria.size());
    return failures ? 1 : 0;
}
