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

// lopt: batch front end for sweeps, no-go searches, invariant suites,
// permanent benchmarks and lift/netlist dumps.
//
// Exit codes: 0 ok, 2 usage or config error, 3 certification or verify
// failure, 4 I/O error.

#include <chrono>
#include <charconv>
#include <cmath>
#include <ctime>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lopt/lopt.hpp"

namespace {

using lopt::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCertification = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    bool no_timestamps = false;
    std::size_t jobs = 1;
};

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Records what a command did; printed to stdout whenever --out is given.
class RunManifest {
public:
    RunManifest(std::string command, const GlobalOptions &g) : command_(std::move(command)), g_(g) {
        if (!g_.no_timestamps) started_ = utc_now();
    }
    void set_seed(std::uint64_t s) { seed_ = s; }
    void set_config(json c) { config_ = std::move(c); }
    void add_output(const std::string &path) { outputs_.push_back(path); }

    json to_json() const {
        json j;
        j["schema"] = lopt::kSchemaVersion;
        j["command"] = command_;
        j["version"] = LOPT_VERSION;
        j["seed"] = seed_ ? json(*seed_) : json(nullptr);
        j["config"] = config_;
        j["outputs"] = outputs_;
        if (!g_.no_timestamps) {
            j["started_at"] = started_;
            j["finished_at"] = utc_now();
        }
        return j;
    }

private:
    std::string command_;
    const GlobalOptions &g_;
    std::optional<std::uint64_t> seed_;
    json config_ = json::object();
    std::vector<std::string> outputs_;
    std::string started_;
};

std::uint64_t resolve_seed(const GlobalOptions &g) {
    if (g.seed) return *g.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Payload goes to the --out file (atomically) or to stdout.
void emit(const std::string &payload, const std::string &path, RunManifest &manifest) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    lopt::write_file_atomic(path, payload);
    manifest.add_output(path);
}

void finish(const GlobalOptions &g, const RunManifest &manifest) {
    if (!g.out.empty()) std::cout << manifest.to_json().dump(2) << '\n';
}

// "0.3", "pi", "-pi/4", "3pi/2", "2*pi/3". Rational multiples of pi are
// formed as (2a/b) * (pi/2) so that k*pi/2 comes out bit-exact.
double parse_angle(const std::string &token) {
    static const std::regex pi_form(R"(^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
    std::smatch m;
    if (std::regex_match(token, m, pi_form)) {
        double a = 1.0;
        const std::string coef = m[1].str();
        if (coef == "-") a = -1.0;
        else if (!coef.empty() && coef != "+") a = std::stod(coef);
        const double b = m[2].matched ? std::stod(m[2].str()) : 1.0;
        if (b == 0.0) throw lopt::InvalidInput("angle '" + token + "': division by zero");
        return (2.0 * a / b) * lopt::kHalfPi;
    }
    double v = 0.0;
    const char *first = token.data(), *last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) throw lopt::InvalidInput("cannot parse angle '" + token + "'");
    return v;
}

// ---------------------------------------------------------------------------

struct SweepOptions {
    std::vector<std::string> epsilon;
    std::size_t grid = 0;
    std::string eps_min = "0";
    std::string eps_max = "pi";
    std::size_t phase_samples = 1;
};

int cmd_sweep(const GlobalOptions &g, const SweepOptions &o) {
    std::vector<double> grid;
    for (const auto &t : o.epsilon) grid.push_back(parse_angle(t));
    if (o.grid > 0) {
        const double lo = parse_angle(o.eps_min), hi = parse_angle(o.eps_max);
        for (std::size_t i = 0; i < o.grid; ++i)
            grid.push_back(o.grid == 1 ? lo : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(o.grid - 1)));
    }
    if (grid.empty()) throw lopt::InvalidInput("sweep: empty epsilon grid (use --epsilon or --grid)");
    if (o.phase_samples < 1) throw lopt::InvalidInput("sweep: --phase-samples must be >= 1");

    RunManifest manifest("sweep", g);
    const auto seed = resolve_seed(g);
    manifest.set_seed(seed);
    json cfg;
    cfg["epsilon"] = grid;
    cfg["phase_samples"] = o.phase_samples;
    manifest.set_config(cfg);

    lopt::Rng rng(seed);
    json rows = json::array();
    std::string csv = "epsilon,alpha,beta,gamma,delta,leakage,entangling_measure\n";
    std::size_t zero_rows = 0;
    double worst_zero_measure = 0.0, worst_law_gap = 0.0, max_leak = 0.0;
    for (double eps : grid) {
        for (std::size_t s = 0; s < o.phase_samples; ++s) {
            double ph[4];
            for (double &x : ph) x = rng.uniform(-lopt::kPi, lopt::kPi);
            const lopt::CompositeGateParams p(ph[0], ph[1], ph[2], ph[3], eps);
            const auto sum = lopt::summarize_composite_gate(p);
            worst_law_gap = std::max(worst_law_gap, std::abs(sum.leakage - std::sqrt(2.0) * std::abs(std::sin(2 * eps))));
            max_leak = std::max(max_leak, sum.leakage);
            if (sum.leakage < 1e-12) {
                ++zero_rows;
                worst_zero_measure = std::max(worst_zero_measure, sum.entangling_measure);
            }
            rows.push_back({{"epsilon", eps}, {"alpha", ph[0]}, {"beta", ph[1]}, {"gamma", ph[2]}, {"delta", ph[3]},
                            {"leakage", sum.leakage}, {"entangling_measure", sum.entangling_measure}});
            for (double v : {eps, ph[0], ph[1], ph[2], ph[3], sum.leakage}) csv += lopt::format_double(v) + ",";
            csv += lopt::format_double(sum.entangling_measure) + "\n";
        }
    }
    json summary;
    summary["schema"] = lopt::kSchemaVersion;
    summary["rows"] = rows.size();
    summary["zero_leakage_rows"] = zero_rows;
    summary["max_measure_at_zero_leakage"] = worst_zero_measure;
    summary["zero_leakage_implies_non_entangling"] = worst_zero_measure < 1e-10;
    summary["max_leakage"] = max_leak;
    summary["max_leakage_law_deviation"] = worst_law_gap;

    if (g.format == "csv") {
        emit(csv, g.out, manifest);
        if (!g.out.empty()) emit(summary.dump(2) + "\n", g.out + ".summary.json", manifest);
        else std::cerr << summary.dump(2) << '\n';
    } else {
        json doc = summary;
        doc["grid"] = rows;
        emit(doc.dump(2) + "\n", g.out, manifest);
    }
    finish(g, manifest);
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_nogo(const GlobalOptions &g, const std::string &config_path, bool jobs_given) {
    json raw;
    const auto text = lopt::read_file(config_path);
    try {
        raw = json::parse(text);
    } catch (const json::parse_error &e) {
        throw lopt::InvalidInput(std::string("config: ") + e.what());
    }
    auto cfg = lopt::config_from_json(raw);
    if (g.seed) cfg.seed = *g.seed;
    if (jobs_given) cfg.jobs = g.jobs;
    cfg.validate();

    RunManifest manifest("nogo", g);
    manifest.set_seed(cfg.seed);
    manifest.set_config(lopt::config_to_json(cfg));

    const auto res = lopt::nogo_search(cfg);
    const auto doc = lopt::search_result_to_json(res, cfg, !g.no_timestamps);
    emit(doc.dump(2) + "\n", g.out, manifest);
    finish(g, manifest);

    if (!res.constrained) {
        std::cerr << "unconstrained search: best entangling measure " << res.best_entangling_measure << '\n';
        return kExitOk;
    }
    if (!res.feasible_found) {
        std::cerr << "no feasible point found; certificate not established\n";
        return kExitCertification;
    }
    if (!res.certified(cfg.certification_threshold)) {
        std::cerr << "ALARM: feasible point with entangling measure " << res.best_entangling_measure
                  << " >= threshold " << cfg.certification_threshold << '\n';
        return kExitCertification;
    }
    std::cerr << "certified: best feasible entangling measure " << res.best_entangling_measure << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_verify(const GlobalOptions &g, const std::string &suite) {
    RunManifest manifest("verify", g);
    const std::uint64_t seed = g.seed.value_or(1);
    manifest.set_seed(seed);
    manifest.set_config({{"suite", suite}});
    const auto checks = lopt::run_verify_suite(suite, seed);

    bool all = true;
    json arr = json::array();
    std::string csv = "suite,name,residual,tolerance,passed\n";
    for (const auto &c : checks) {
        all = all && c.passed;
        arr.push_back({{"suite", c.suite}, {"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
                       {"passed", c.passed}});
        csv += c.suite + ",\"" + c.name + "\"," + lopt::format_double(c.residual) + "," +
               lopt::format_double(c.tolerance) + "," + (c.passed ? "true" : "false") + "\n";
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << "  residual=" << c.residual
                  << " tol=" << c.tolerance << '\n';
    }
    json doc;
    doc["schema"] = lopt::kSchemaVersion;
    doc["suite"] = suite;
    doc["seed"] = seed;
    doc["all_passed"] = all;
    doc["checks"] = arr;
    emit(g.format == "csv" ? csv : doc.dump(2) + "\n", g.out, manifest);
    finish(g, manifest);
    return all ? kExitOk : kExitCertification;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
    std::size_t max_n = 20;
    std::vector<std::string> algorithms{"naive", "ryser"};
    std::size_t repeats = 5;
};

int cmd_bench(const GlobalOptions &g, const BenchOptions &o) {
    if (o.max_n < 1 || o.max_n > 24) throw lopt::InvalidInput("bench: --max-n must be in [1, 24]");
    if (o.repeats < 1) throw lopt::InvalidInput("bench: --repeats must be >= 1");
    for (const auto &a : o.algorithms)
        if (a != "naive" && a != "ryser") throw lopt::InvalidInput("bench: unknown algorithm '" + a + "'");
    auto wants = [&](const char *a) { return std::find(o.algorithms.begin(), o.algorithms.end(), a) != o.algorithms.end(); };

    RunManifest manifest("bench", g);
    const auto seed = resolve_seed(g);
    manifest.set_seed(seed);
    manifest.set_config({{"max_n", o.max_n}, {"algorithms", o.algorithms}, {"repeats", o.repeats}});

    lopt::Rng rng(seed);
    auto random_matrix = [&](std::size_t n) {
        lopt::ComplexMatrix m(n, n);
        for (auto &z : m.data()) z = lopt::cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
        return m;
    };

    // Agreement gate before any timing.
    std::vector<double> agreement(o.max_n + 1, NAN);
    bool agree = true;
    for (std::size_t n = 1; n <= std::min<std::size_t>(8, o.max_n); ++n) {
        double worst = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const auto m = random_matrix(n);
            const auto ref = lopt::permanent_naive(m);
            worst = std::max(worst, std::abs(lopt::permanent_ryser(m) - ref) / std::max(std::abs(ref), 1e-300));
        }
        agreement[n] = worst;
        agree = agree && worst < 1e-10;
    }

    json rows = json::array();
    std::string csv = "n,algorithm,mean_ns,std_ns,agreement_rel_error\n";
    volatile double sink = 0.0;
    for (std::size_t n = 1; n <= o.max_n; ++n) {
        const auto m = random_matrix(n);
        for (const char *algo : {"naive", "ryser"}) {
            if (!wants(algo)) continue;
            const bool naive = std::string(algo) == "naive";
            if (naive && n > 9) continue;  // factorial cost
            auto run = [&] { return naive ? lopt::permanent_naive(m) : lopt::permanent_ryser(m); };
            sink = sink + run().real();  // warm-up
            std::vector<double> ns;
            for (std::size_t r = 0; r < o.repeats; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                sink = sink + run().real();
                ns.push_back(std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count());
            }
            double mean = 0.0, var = 0.0;
            for (double x : ns) mean += x / static_cast<double>(ns.size());
            for (double x : ns) var += (x - mean) * (x - mean) / static_cast<double>(ns.size());
            const bool has_agreement = n <= 8;
            rows.push_back({{"n", n}, {"algorithm", algo}, {"mean_ns", mean}, {"std_ns", std::sqrt(var)},
                            {"agreement_rel_error", has_agreement ? json(agreement[n]) : json(nullptr)}});
            csv += std::to_string(n) + "," + algo + "," + lopt::format_double(mean) + "," +
                   lopt::format_double(std::sqrt(var)) + "," + (has_agreement ? lopt::format_double(agreement[n]) : "") + "\n";
        }
    }
    json doc;
    doc["schema"] = lopt::kSchemaVersion;
    doc["seed"] = seed;
    doc["agreement_ok"] = agree;
    doc["rows"] = rows;
    emit(g.format == "csv" ? csv : doc.dump(2) + "\n", g.out, manifest);
    finish(g, manifest);
    if (!agree) std::cerr << "ryser/naive disagreement above 1e-10\n";
    return agree ? kExitOk : kExitCertification;
}

// ---------------------------------------------------------------------------

struct MatrixSource {
    std::string matrix_path;
    std::size_t haar = 0;
};

lopt::ModeUnitary load_mode_unitary(const GlobalOptions &g, const MatrixSource &src, RunManifest &manifest, json &cfg) {
    if (!src.matrix_path.empty() && src.haar > 0) throw lopt::InvalidInput("give either --matrix or --haar, not both");
    if (!src.matrix_path.empty()) {
        cfg["matrix"] = src.matrix_path;
        json j;
        try {
            j = json::parse(lopt::read_file(src.matrix_path));
        } catch (const json::parse_error &e) {
            throw lopt::InvalidInput(std::string("matrix file: ") + e.what());
        }
        return lopt::ModeUnitary(lopt::matrix_from_json(j.is_object() ? j.at("matrix") : j));
    }
    if (src.haar == 0) throw lopt::InvalidInput("need --matrix FILE or --haar M");
    const auto seed = resolve_seed(g);
    manifest.set_seed(seed);
    cfg["haar"] = src.haar;
    return lopt::ModeUnitary(lopt::haar_random_unitary(src.haar, seed));
}

int cmd_lift(const GlobalOptions &g, const MatrixSource &src, int photons) {
    RunManifest manifest("lift", g);
    json cfg;
    const auto u = load_mode_unitary(g, src, manifest, cfg);
    cfg["photons"] = photons;
    manifest.set_config(cfg);
    const auto l = lopt::lift_unitary(u, photons);
    emit(g.format == "csv" ? lopt::matrix_to_csv(l.matrix) : lopt::lifted_to_json(l).dump(2) + "\n", g.out, manifest);
    finish(g, manifest);
    return kExitOk;
}

int cmd_netlist(const GlobalOptions &g, const MatrixSource &src) {
    if (g.format != "json") throw lopt::InvalidInput("netlist: only --format json is supported");
    RunManifest manifest("netlist", g);
    json cfg;
    const auto u = load_mode_unitary(g, src, manifest, cfg);
    manifest.set_config(cfg);
    const auto net = lopt::reck_decompose(u);
    auto doc = lopt::netlist_to_json(net);
    doc["beam_splitter_count"] = net.beam_splitter_count();
    doc["reconstruction_error"] = lopt::distance(lopt::recompose(net).matrix(), u.matrix());
    emit(doc.dump(2) + "\n", g.out, manifest);
    finish(g, manifest);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"lopt: passive linear-optics Fock simulator and single-rail no-go lab"};
    app.set_version_flag("--version", LOPT_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    std::uint64_t seed_value = 0;
    auto *seed_opt = app.add_option("--seed", seed_value, "RNG seed (recorded in the manifest)");
    app.add_option("--out", g.out, "Write the report here; a run manifest then goes to stdout");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--no-timestamps", g.no_timestamps, "Omit wall-clock fields for byte-identical reruns");
    auto *jobs_opt = app.add_option("--jobs", g.jobs, "Worker threads for nogo restarts")->check(CLI::PositiveNumber);

    SweepOptions sweep_opt;
    auto *sweep = app.add_subcommand("sweep", "Tabulate leakage and entangling measure over an epsilon grid");
    sweep->add_option("--epsilon", sweep_opt.epsilon, "Grid points, e.g. 0,pi/4,pi/2")->delimiter(',');
    sweep->add_option("--grid", sweep_opt.grid, "Evenly spaced points from --eps-min to --eps-max");
    sweep->add_option("--eps-min", sweep_opt.eps_min, "Lower end for --grid");
    sweep->add_option("--eps-max", sweep_opt.eps_max, "Upper end for --grid");
    sweep->add_option("--phase-samples", sweep_opt.phase_samples, "Random phase tuples per grid point");

    std::string config_path;
    auto *nogo = app.add_subcommand("nogo", "Run a constrained entanglement search from a JSON config");
    nogo->add_option("config", config_path, "Search config (JSON)")->required();

    std::string suite;
    auto *verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("suite", suite, "algebra | fock | singlerail | nogo | all")->required();

    BenchOptions bench_opt;
    auto *bench = app.add_subcommand("bench", "Time permanent kernels");
    bench->add_option("--max-n", bench_opt.max_n, "Largest matrix order (<= 24)");
    bench->add_option("--algorithms", bench_opt.algorithms, "naive,ryser")->delimiter(',');
    bench->add_option("--repeats", bench_opt.repeats, "Timed runs per point");

    MatrixSource lift_src;
    int photons = 2;
    auto *lift = app.add_subcommand("lift", "Dump the lifted unitary on a fixed-photon-number sector");
    lift->add_option("--matrix", lift_src.matrix_path, "Mode unitary as JSON");
    lift->add_option("--haar", lift_src.haar, "Use a Haar-random unitary on this many modes");
    lift->add_option("--photons", photons, "Photon number N")->required();

    MatrixSource net_src;
    auto *netlist = app.add_subcommand("netlist", "Dump a Reck beam-splitter mesh for a mode unitary");
    netlist->add_option("--matrix", net_src.matrix_path, "Mode unitary as JSON");
    netlist->add_option("--haar", net_src.haar, "Use a Haar-random unitary on this many modes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    if (seed_opt->count() > 0) g.seed = seed_value;

    try {
        if (sweep->parsed()) return cmd_sweep(g, sweep_opt);
        if (nogo->parsed()) return cmd_nogo(g, config_path, jobs_opt->count() > 0);
        if (verify->parsed()) return cmd_verify(g, suite);
        if (bench->parsed()) return cmd_bench(g, bench_opt);
        if (lift->parsed()) return cmd_lift(g, lift_src, photons);
        if (netlist->parsed()) return cmd_netlist(g, net_src);
    } catch (const lopt::IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const lopt::InvalidInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const lopt::ResourceLimit &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const lopt::DegenerateInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
