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
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lopt/errors.hpp"
#include "lopt/matrix.hpp"

namespace lopt {

enum class PermanentAlgorithm { Naive, Ryser };

inline constexpr std::size_t kNaivePermanentMax = 9;
inline constexpr std::size_t kRyserPermanentMax = 24;

/// Sum over all n! permutations. Reference implementation.
inline cplx permanent_naive(const ComplexMatrix &m) {
    if (!m.square()) throw InvalidInput("permanent: matrix must be square");
    const std::size_t n = m.rows();
    if (n > kNaivePermanentMax)
        throw ResourceLimit("permanent_naive: n = " + std::to_string(n) + " exceeds " + std::to_string(kNaivePermanentMax));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        cplx prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Ryser inclusion-exclusion, walking column subsets in Gray-code order so
/// that each step adds or removes one column from the running row sums:
///     Per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij .
inline cplx permanent_ryser(const ComplexMatrix &m) {
    if (!m.square()) throw InvalidInput("permanent: matrix must be square");
    const std::size_t n = m.rows();
    if (n > kRyserPermanentMax)
        throw ResourceLimit("permanent_ryser: n = " + std::to_string(n) + " exceeds " + std::to_string(kRyserPermanentMax));
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);

    std::vector<cplx> row_sums(n, 0.0);
    cplx total = 0.0;
    std::uint32_t gray = 0;
    const std::uint32_t count = 1u << n;
    for (std::uint32_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k);
        const std::uint32_t bit = 1u << j;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, j);
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, j);
        }
        cplx prod = row_sums[0];
        for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
        if (std::popcount(gray) & 1)
            total -= prod;
        else
            total += prod;
    }
    return (n & 1) ? -total : total;
}

inline cplx permanent(const ComplexMatrix &m, PermanentAlgorithm algo = PermanentAlgorithm::Ryser) {
    return algo == PermanentAlgorithm::Naive ? permanent_naive(m) : permanent_ryser(m);
}

}  // namespace lopt
