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

// Fixed-photon-number Fock sectors and the lift of a mode unitary to them.
//
// With u the single-photon transfer matrix (see modes.hpp), the lifted
// matrix element between occupation patterns m (output) and n (input) is
//     <m| phi(u) |n> = Per(u[m|n]) / sqrt(prod m_i! prod n_j!)
// where u[m|n] repeats row i m_i times and column j n_j times.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/matrix.hpp"
#include "lopt/modes.hpp"
#include "lopt/permanent.hpp"

namespace lopt {

using Occupation = std::vector<int>;

inline constexpr std::size_t kDefaultBasisCap = 10000;

namespace detail {

inline const std::array<double, kRyserPermanentMax + 1> &factorial_table() {
    static const auto table = [] {
        std::array<double, kRyserPermanentMax + 1> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table;
}

inline double factorial(int n) {
    if (n < 0) throw InvalidInput("factorial of negative number");
    if (static_cast<std::size_t>(n) < factorial_table().size()) return factorial_table()[static_cast<std::size_t>(n)];
    return std::tgamma(n + 1.0);
}

inline double occupation_factorial_product(const Occupation &occ) {
    double p = 1.0;
    for (int k : occ) p *= factorial(k);
    return p;
}

// Mode indices repeated by occupation: (2,0,1) -> {0,0,2}.
inline std::vector<std::size_t> expand_occupation(const Occupation &occ) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < occ.size(); ++i)
        for (int k = 0; k < occ[i]; ++k) idx.push_back(i);
    return idx;
}

inline void enumerate_rec(std::size_t mode, int remaining, Occupation &cur, std::vector<Occupation> &out) {
    if (mode + 1 == cur.size()) {
        cur[mode] = remaining;
        out.push_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[mode] = k;
        enumerate_rec(mode + 1, remaining - k, cur, out);
    }
}

}  // namespace detail

inline int total_photons(const Occupation &occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

/// C(N+M-1, M-1) in floating point (used for cap checks before enumerating).
inline double sector_dimension(std::size_t modes, int photons) {
    double d = 1.0;
    for (std::size_t k = 1; k < modes; ++k) d = d * static_cast<double>(photons + static_cast<int>(k)) / static_cast<double>(k);
    return std::round(d);
}

/// All occupation patterns of `modes` modes holding `photons` photons, in
/// lexicographically descending order: (N,0,..), (N-1,1,0,..), ..., (0,..,N).
class FockBasis {
   public:
    FockBasis(std::size_t modes, int photons) : modes_(modes), photons_(photons) {
        if (modes == 0) throw InvalidInput("FockBasis: need at least one mode");
        if (photons < 0) throw InvalidInput("FockBasis: photon number must be >= 0");
        Occupation cur(modes, 0);
        detail::enumerate_rec(0, photons, cur, states_);
        for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
    }

    std::size_t modes() const { return modes_; }
    int photons() const { return photons_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<Occupation> &states() const { return states_; }
    const Occupation &operator[](std::size_t i) const { return states_[i]; }

    bool contains(const Occupation &occ) const { return index_.count(occ) != 0; }

    std::size_t index_of(const Occupation &occ) const {
        auto it = index_.find(occ);
        if (it == index_.end()) throw InvalidInput("FockBasis: occupation not in this sector");
        return it->second;
    }

   private:
    std::size_t modes_;
    int photons_;
    std::vector<Occupation> states_;
    std::map<Occupation, std::size_t> index_;
};

inline FockBasis basis_enumerate(std::size_t modes, int photons) { return FockBasis(modes, photons); }

/// phi(u) restricted to one photon-number sector.
struct LiftedUnitary {
    FockBasis basis;
    ComplexMatrix matrix;
};

/// <m| phi(u) |n> for one pair of occupation patterns.
inline cplx lifted_amplitude(const ModeUnitary &u, const Occupation &out, const Occupation &in) {
    if (out.size() != u.dim() || in.size() != u.dim()) throw InvalidInput("lifted_amplitude: occupation length != modes");
    const int n = total_photons(in);
    if (total_photons(out) != n) return 0.0;
    if (n == 0) return 1.0;
    const auto rows = detail::expand_occupation(out);
    const auto cols = detail::expand_occupation(in);
    const cplx per = permanent_ryser(u.matrix().select(rows, cols));
    return per / std::sqrt(detail::occupation_factorial_product(out) * detail::occupation_factorial_product(in));
}

/// Column `input` of phi(u) on `basis`.
inline std::vector<cplx> lift_column(const ModeUnitary &u, const FockBasis &basis, std::size_t input) {
    if (basis.modes() != u.dim()) throw InvalidInput("lift_column: basis modes != unitary dimension");
    std::vector<cplx> col(basis.size());
    const auto &in = basis[input];
    for (std::size_t r = 0; r < basis.size(); ++r) col[r] = lifted_amplitude(u, basis[r], in);
    return col;
}

inline LiftedUnitary lift_unitary(const ModeUnitary &u, int photons, std::size_t basis_cap = kDefaultBasisCap) {
    if (photons < 0) throw InvalidInput("lift_unitary: photon number must be >= 0");
    if (static_cast<std::size_t>(photons) > kRyserPermanentMax)
        throw ResourceLimit("lift_unitary: photon number exceeds permanent cap");
    const double dim = sector_dimension(u.dim(), photons);
    if (dim > static_cast<double>(basis_cap))
        throw ResourceLimit("lift_unitary: sector dimension " + std::to_string(static_cast<long long>(dim)) +
                            " exceeds cap " + std::to_string(basis_cap));
    FockBasis basis(u.dim(), photons);
    ComplexMatrix m(basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto col = lift_column(u, basis, c);
        for (std::size_t r = 0; r < basis.size(); ++r) m(r, c) = col[r];
    }
    return LiftedUnitary{std::move(basis), std::move(m)};
}

// ---------------------------------------------------------------------------
// Creation-operator polynomials.

/// sum_m c_m prod_i (a_i^dag)^{m_i} |vac>, keyed by the exponent vector m.
/// Coefficients multiply raw monomials, not normalised Fock states.
class OccupationPolynomial {
   public:
    explicit OccupationPolynomial(std::size_t modes) : modes_(modes) {}

    /// The normalised Fock state |n> = prod (a^dag)^{n_i} / sqrt(n_i!) |vac>.
    static OccupationPolynomial fock_state(const Occupation &n) {
        OccupationPolynomial p(n.size());
        p.add(n, 1.0 / std::sqrt(detail::occupation_factorial_product(n)));
        return p;
    }

    std::size_t modes() const { return modes_; }
    const std::map<Occupation, cplx> &terms() const { return terms_; }

    void add(const Occupation &m, cplx c) {
        if (m.size() != modes_) throw InvalidInput("OccupationPolynomial: monomial length != modes");
        for (int k : m)
            if (k < 0) throw InvalidInput("OccupationPolynomial: negative exponent");
        terms_[m] += c;
    }

    cplx coefficient(const Occupation &m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? cplx{} : it->second;
    }

    /// Amplitude on the normalised Fock state |m>.
    cplx amplitude(const Occupation &m) const { return coefficient(m) * std::sqrt(detail::occupation_factorial_product(m)); }

    /// <psi|psi> = sum |c_m|^2 prod m_i!.
    double norm2() const {
        double s = 0.0;
        for (const auto &[m, c] : terms_) s += std::norm(c) * detail::occupation_factorial_product(m);
        return s;
    }

    /// Drop coefficients with |c| <= tol.
    void prune(double tol = 0.0) {
        std::erase_if(terms_, [tol](const auto &kv) { return std::abs(kv.second) <= tol; });
    }

    /// All monomials have the same total degree (true for the empty polynomial).
    bool homogeneous() const {
        if (terms_.empty()) return true;
        const int d = total_photons(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(), [d](const auto &kv) { return total_photons(kv.first) == d; });
    }

   private:
    std::size_t modes_;
    std::map<Occupation, cplx> terms_;
};

/// V F(a^dag) |vac> = F(V a^dag V^dag) |vac>: substitute
/// a_i^dag -> sum_j u(j, i) a_j^dag in every monomial and expand.
inline OccupationPolynomial lift_via_substitution(const ModeUnitary &u, const OccupationPolynomial &input) {
    const std::size_t modes = u.dim();
    if (input.modes() != modes) throw InvalidInput("lift_via_substitution: polynomial modes != unitary dimension");
    OccupationPolynomial out(modes);
    for (const auto &[mono, coeff] : input.terms()) {
        std::map<Occupation, cplx> acc{{Occupation(modes, 0), coeff}};
        for (std::size_t i = 0; i < modes; ++i) {
            for (int rep = 0; rep < mono[i]; ++rep) {
                std::map<Occupation, cplx> next;
                for (const auto &[m, c] : acc) {
                    for (std::size_t j = 0; j < modes; ++j) {
                        const cplx w = u(j, i);
                        if (w == cplx{}) continue;
                        Occupation grown = m;
                        ++grown[j];
                        next[grown] += c * w;
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto &[m, c] : acc) out.add(m, c);
    }
    out.prune();
    return out;
}

struct SectorProductCheck {
    bool factorizes = false;
    double residual = 0.0;
};

/// Compare phi(v_c (+) v_a) on an N-photon sector with the product of the
/// per-block lifts: equal when photon counts match within each block, zero
/// otherwise. `tol` decides `factorizes`.
inline SectorProductCheck sector_product_check(const ModeUnitary &v_c, const ModeUnitary &v_a, int photons,
                                               double tol = 1e-10) {
    const std::size_t kc = v_c.dim();
    const auto full = lift_unitary(direct_sum(v_c, v_a), photons);
    double residual = 0.0;
    const auto &states = full.basis.states();
    for (std::size_t c = 0; c < states.size(); ++c) {
        const Occupation in_c(states[c].begin(), states[c].begin() + static_cast<std::ptrdiff_t>(kc));
        const Occupation in_a(states[c].begin() + static_cast<std::ptrdiff_t>(kc), states[c].end());
        for (std::size_t r = 0; r < states.size(); ++r) {
            const Occupation out_c(states[r].begin(), states[r].begin() + static_cast<std::ptrdiff_t>(kc));
            const Occupation out_a(states[r].begin() + static_cast<std::ptrdiff_t>(kc), states[r].end());
            cplx expected = 0.0;
            if (total_photons(out_c) == total_photons(in_c))
                expected = lifted_amplitude(v_c, out_c, in_c) * lifted_amplitude(v_a, out_a, in_a);
            residual = std::max(residual, std::abs(full.matrix(r, c) - expected));
        }
    }
    return {residual <= tol, residual};
}

}  // namespace lopt
