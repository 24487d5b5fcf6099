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

// JSON / CSV serialisation of matrices, bases, netlists, search configs and
// results. All reports carry "schema": 1.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lopt/errors.hpp"
#include "lopt/fock.hpp"
#include "lopt/matrix.hpp"
#include "lopt/modes.hpp"
#include "lopt/nogo.hpp"

namespace lopt {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Files.

/// Write through a temporary sibling and rename, so a failed write never
/// leaves a partial file at `path`.
inline void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Shortest round-trip decimal, '.' separator regardless of locale.
inline std::string format_double(double x) { return json(x).dump(); }

// ---------------------------------------------------------------------------
// Matrices and bases.

/// [[[re, im], ...], ...]
inline json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Accepts [[[re, im], ...], ...] or real entries [[x, ...], ...].
inline ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) throw InvalidInput("matrix JSON: expected a 2-D array");
    const std::size_t rows = j.size(), cols = j[0].size();
    std::vector<cplx> data;
    data.reserve(rows * cols);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != cols) throw InvalidInput("matrix JSON: ragged rows");
        for (const auto &e : row) {
            if (e.is_number()) {
                data.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                data.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                throw InvalidInput("matrix JSON: entries must be numbers or [re, im] pairs");
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

/// Row-major CSV, each entry written as "re,im".
inline std::string matrix_to_csv(const ComplexMatrix &m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_double(m(r, c).real());
            out += ',';
            out += format_double(m(r, c).imag());
        }
        out += '\n';
    }
    return out;
}

inline json basis_to_json(const FockBasis &b) {
    json arr = json::array();
    for (const auto &s : b.states()) arr.push_back(s);
    return arr;
}

inline json lifted_to_json(const LiftedUnitary &l) {
    json j;
    j["schema"] = kSchemaVersion;
    j["modes"] = l.basis.modes();
    j["photons"] = l.basis.photons();
    j["basis"] = basis_to_json(l.basis);
    j["matrix"] = matrix_to_json(l.matrix);
    return j;
}

// ---------------------------------------------------------------------------
// Netlists.

inline json element_to_json(const OpticalElement &e) {
    json j;
    if (e.kind == ElementKind::PhaseShifter) {
        j["kind"] = "phase_shifter";
        j["modes"] = json::array({e.mode_a});
        j["angle"] = e.angle;
    } else {
        j["kind"] = "beam_splitter";
        j["modes"] = json::array({e.mode_a, e.mode_b});
        j["angle"] = e.angle;
        j["phase"] = e.phase;
    }
    return j;
}

inline OpticalElement element_from_json(const json &j) {
    const auto kind = j.at("kind").get<std::string>();
    const auto modes = j.at("modes").get<std::vector<std::size_t>>();
    const double angle = j.at("angle").get<double>();
    if (kind == "phase_shifter") {
        if (modes.size() != 1) throw InvalidInput("netlist: phase_shifter needs one mode");
        return OpticalElement::phase_shifter(modes[0], angle);
    }
    if (kind == "beam_splitter") {
        if (modes.size() != 2) throw InvalidInput("netlist: beam_splitter needs two modes");
        return OpticalElement::beam_splitter(modes[0], modes[1], angle, j.value("phase", 0.0));
    }
    throw InvalidInput("netlist: unknown element kind '" + kind + "'");
}

inline json netlist_to_json(const Netlist &n) {
    json j;
    j["schema"] = kSchemaVersion;
    j["modes"] = n.modes;
    j["elements"] = json::array();
    for (const auto &e : n.elements) j["elements"].push_back(element_to_json(e));
    return j;
}

inline Netlist netlist_from_json(const json &j) {
    Netlist n;
    n.modes = j.at("modes").get<std::size_t>();
    for (const auto &e : j.at("elements")) n.elements.push_back(element_from_json(e));
    for (const auto &e : n.elements) validate_element(e, n.modes);
    return n;
}

// ---------------------------------------------------------------------------
// Search configs and results.

inline json config_to_json(const SearchConfig &c) {
    json j;
    j["modes"] = c.modes;
    j["ancilla_photons"] = c.ancilla_photons;
    j["restarts"] = c.restarts;
    j["max_iterations"] = c.max_iterations;
    j["leakage_tolerance"] = c.leakage_tolerance;
    j["penalty_weight"] = c.penalty_weight;
    j["penalty_growth"] = c.penalty_growth;
    j["penalty_max"] = c.penalty_max;
    j["seed"] = c.seed;
    j["certification_threshold"] = c.certification_threshold;
    return j;
}

/// Missing keys keep their defaults; unknown keys and wrong types are errors.
inline SearchConfig config_from_json(const json &j) {
    if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
    static const std::vector<std::string> known{"modes",       "ancilla_photons", "restarts",   "max_iterations",
                                                "leakage_tolerance", "penalty_weight", "penalty_growth",
                                                "penalty_max", "seed",            "certification_threshold",
                                                "jobs",        "comment"};
    for (const auto &[k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) throw InvalidInput("config: unknown key '" + k + "'");
    auto count = [&](const char *key, auto fallback) {
        using T = decltype(fallback);
        if (!j.contains(key)) return fallback;
        const auto &v = j.at(key);
        if (!v.is_number_integer()) throw InvalidInput(std::string("config: '") + key + "' must be an integer");
        if (v.is_number_unsigned()) return static_cast<T>(v.get<std::uint64_t>());
        const auto s = v.get<std::int64_t>();
        if (s < 0) throw InvalidInput(std::string("config: '") + key + "' must be non-negative");
        return static_cast<T>(s);
    };
    auto real = [&](const char *key, double fallback) {
        if (!j.contains(key)) return fallback;
        if (!j.at(key).is_number()) throw InvalidInput(std::string("config: '") + key + "' must be a number");
        return j.at(key).get<double>();
    };
    SearchConfig c;
    c.modes = count("modes", c.modes);
    c.ancilla_photons = static_cast<int>(count("ancilla_photons", std::size_t{0}));
    c.restarts = count("restarts", c.restarts);
    c.max_iterations = count("max_iterations", c.max_iterations);
    c.leakage_tolerance = real("leakage_tolerance", c.leakage_tolerance);
    c.penalty_weight = real("penalty_weight", c.penalty_weight);
    c.penalty_growth = real("penalty_growth", c.penalty_growth);
    c.penalty_max = real("penalty_max", c.penalty_max);
    c.seed = count("seed", c.seed);
    c.certification_threshold = real("certification_threshold", c.certification_threshold);
    c.jobs = count("jobs", c.jobs);
    c.validate();
    return c;
}

inline json trace_to_json(const RestartTrace &t) {
    json j;
    j["restart"] = t.restart;
    j["penalty"] = t.penalty;
    j["objective"] = t.objective;
    j["entangling_measure"] = t.entangling_measure;
    j["leakage"] = t.leakage;
    j["residual"] = t.residual;
    j["factorization_defect"] = t.factorization_defect;
    j["feasible"] = t.feasible;
    j["evaluations"] = t.evaluations;
    j["parameters"] = t.parameters;
    return j;
}

/// SearchResult with the config echoed. `with_timing` adds wall_time, which
/// is the only non-deterministic field.
inline json search_result_to_json(const SearchResult &r, const SearchConfig &cfg, bool with_timing) {
    json j;
    j["schema"] = kSchemaVersion;
    j["search"] = cfg.modes == 2 ? "two_mode" : "ancilla";
    j["config"] = config_to_json(cfg);
    j["seed"] = cfg.seed;
    j["constrained"] = r.constrained;
    j["feasible_found"] = r.feasible_found;
    const bool have_best = !r.constrained || r.feasible_found;
    j["certified"] = r.constrained && r.certified(cfg.certification_threshold);
    j["best_restart"] = have_best ? json(r.best_restart) : json(nullptr);
    j["best_entangling_measure"] = have_best ? json(r.best_entangling_measure) : json(nullptr);
    j["best_leakage"] = have_best ? json(r.best_leakage) : json(nullptr);
    j["best_residual"] = have_best ? json(r.best_residual) : json(nullptr);
    j["best_factorization_defect"] = have_best ? json(r.best_factorization_defect) : json(nullptr);
    j["best_parameters"] = have_best ? json(r.best_parameters) : json(nullptr);
    j["trace"] = json::array();
    for (const auto &t : r.trace) j["trace"].push_back(trace_to_json(t));
    if (with_timing) j["wall_time"] = r.wall_time;
    return j;
}

}  // namespace lopt
