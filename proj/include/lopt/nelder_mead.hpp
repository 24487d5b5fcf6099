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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "lopt/errors.hpp"

namespace lopt {

struct NelderMeadOptions {
    std::size_t max_evaluations = 20000;
    double initial_step = 0.5;
    double x_tolerance = 1e-13;  // simplex diameter (max-norm)
    double f_tolerance = 1e-15;  // spread of vertex values
    bool adaptive = true;        // dimension-dependent coefficients
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Minimise f: R^n -> R with the Nelder-Mead simplex method. With `adaptive`
/// the reflection/expansion/contraction/shrink coefficients are
/// 1, 1 + 2/n, 3/4 - 1/(2n), 1 - 1/n; otherwise 1, 2, 1/2, 1/2.
template <class F>
NelderMeadResult nelder_mead(F &&f, std::vector<double> x0, const NelderMeadOptions &opt = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw InvalidInput("nelder_mead: empty parameter vector");
    const double dn = static_cast<double>(n);
    const double rho = 1.0;
    const double chi = opt.adaptive ? 1.0 + 2.0 / dn : 2.0;
    const double psi = opt.adaptive ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
    const double sigma = opt.adaptive ? 1.0 - 1.0 / dn : 0.5;

    NelderMeadResult res;
    auto eval = [&](const std::vector<double> &x) {
        ++res.evaluations;
        const double v = f(x);
        return std::isnan(v) ? INFINITY : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto point = [&](double t, const std::vector<double> &worst, std::vector<double> &out) {
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
    };

    while (res.evaluations < opt.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> s2(n + 1);
            std::vector<double> f2(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s2[i] = std::move(simplex[order[i]]);
                f2[i] = fv[order[i]];
            }
            simplex = std::move(s2);
            fv = std::move(f2);
        }

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[0][k]));
        if (diameter <= opt.x_tolerance && std::abs(fv[n] - fv[0]) <= opt.f_tolerance) {
            res.converged = true;
            break;
        }
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / dn;

        point(rho, simplex[n], xr);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            point(rho * chi, simplex[n], xe);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
            continue;
        }
        if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
            continue;
        }
        bool shrink = false;
        if (fr < fv[n]) {
            point(rho * psi, simplex[n], xc);  // outside contraction
            const double fc = eval(xc);
            if (fc <= fr) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            point(-psi, simplex[n], xc);  // inside contraction
            const double fc = eval(xc);
            if (fc < fv[n]) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[0][k] + sigma * (simplex[i][k] - simplex[0][k]);
                fv[i] = eval(simplex[i]);
            }
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = simplex[best];
    res.f = fv[best];
    return res;
}

}  // namespace lopt
