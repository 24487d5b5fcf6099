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

#include <gtest/gtest.h>

#include "lopt/fock.hpp"
#include "lopt/linalg.hpp"
#include "oracles.hpp"

using namespace lopt;

TEST(FockBasis, SizesAreBinomial) {
    for (std::size_t m = 1; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            const FockBasis b(m, n);
            EXPECT_EQ(static_cast<double>(b.size()), sector_dimension(m, n));
            for (std::size_t i = 0; i < b.size(); ++i) {
                EXPECT_EQ(total_photons(b[i]), n);
                EXPECT_EQ(b.index_of(b[i]), i);
            }
        }
    EXPECT_EQ(sector_dimension(3, 2), 6.0);
    EXPECT_EQ(sector_dimension(4, 0), 1.0);
}

TEST(FockBasis, LexicographicallyDescending) {
    const FockBasis b(2, 2);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0], (Occupation{2, 0}));
    EXPECT_EQ(b[1], (Occupation{1, 1}));
    EXPECT_EQ(b[2], (Occupation{0, 2}));
    const FockBasis c(3, 4);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GT(c[i - 1], c[i]);
}

TEST(FockBasis, InvalidInputs) {
    EXPECT_THROW(FockBasis(0, 1), InvalidInput);
    EXPECT_THROW(FockBasis(2, -1), InvalidInput);
    const FockBasis b(2, 1);
    EXPECT_FALSE(b.contains({2, 0}));
    EXPECT_THROW(b.index_of({2, 0}), InvalidInput);
}

TEST(Lift, BasisCapIsEnforced) {
    EXPECT_THROW(lift_unitary(ModeUnitary::identity(10), 10), ResourceLimit);
    EXPECT_THROW(lift_unitary(ModeUnitary::identity(3), 3, 5), ResourceLimit);
    EXPECT_THROW(lift_unitary(ModeUnitary::identity(3), -1), InvalidInput);
}

TEST(Lift, VacuumIsFixed) {
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto l = lift_unitary(ModeUnitary(haar_random_unitary(m, m)), 0);
        ASSERT_EQ(l.basis.size(), 1u);
        EXPECT_EQ(l.matrix(0, 0), cplx(1.0));
    }
}

TEST(Lift, SinglePhotonSectorIsTheModeMatrix) {
    const ModeUnitary u(haar_random_unitary(4, 9));
    const auto l = lift_unitary(u, 1);
    // basis (1,0,0,0), (0,1,0,0), ... in that order
    EXPECT_LT(distance(l.matrix, u.matrix()), 1e-15);
}

TEST(Lift, HongOuMandelDip) {
    const auto l = lift_unitary(ModeUnitary(beam_splitter_matrix(kPi / 4)), 2);
    const auto i11 = l.basis.index_of({1, 1});
    const auto i20 = l.basis.index_of({2, 0});
    const auto i02 = l.basis.index_of({0, 2});
    EXPECT_LT(std::abs(l.matrix(i11, i11)), 1e-14);
    EXPECT_NEAR(std::abs(l.matrix(i20, i11)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(l.matrix(i02, i11)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Lift, MatchesCreationOperatorOracle) {
    std::uint64_t seed = 500;
    for (std::size_t m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            const ModeUnitary u(haar_random_unitary(m, ++seed));
            const auto l = lift_unitary(u, n);
            for (std::size_t c = 0; c < l.basis.size(); ++c) {
                const auto ket = oracle::propagate(u.matrix(), l.basis[c]);
                for (std::size_t r = 0; r < l.basis.size(); ++r)
                    EXPECT_LT(std::abs(l.matrix(r, c) - oracle::amplitude(ket, l.basis[r])), 1e-12) << m << " " << n;
            }
        }
}

TEST(Lift, MatchesSubstitutionLift) {
    std::uint64_t seed = 700;
    for (std::size_t m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            const ModeUnitary u(haar_random_unitary(m, ++seed));
            const auto l = lift_unitary(u, n);
            for (std::size_t c = 0; c < l.basis.size(); ++c) {
                const auto poly = lift_via_substitution(u, OccupationPolynomial::fock_state(l.basis[c]));
                EXPECT_TRUE(poly.homogeneous());
                EXPECT_NEAR(poly.norm2(), 1.0, 1e-12);
                for (const auto &[mono, coeff] : poly.terms()) EXPECT_EQ(total_photons(mono), n);
                for (std::size_t r = 0; r < l.basis.size(); ++r)
                    EXPECT_LT(std::abs(l.matrix(r, c) - poly.amplitude(l.basis[r])), 1e-10);
            }
        }
}

TEST(Lift, HomomorphismAndUnitarity) {
    std::uint64_t seed = 1;
    for (std::size_t m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            for (int pair = 0; pair < 50; ++pair) {
                const ModeUnitary a(haar_random_unitary(m, ++seed)), b(haar_random_unitary(m, ++seed));
                const auto la = lift_unitary(a, n), lb = lift_unitary(b, n);
                EXPECT_LT(distance(lift_unitary(a * b, n).matrix, la.matrix * lb.matrix), 1e-9);
                EXPECT_LT(unitarity_defect(la.matrix), 1e-9);
            }
}

TEST(Lift, ColumnAndAmplitudeAgreeWithFullLift) {
    const ModeUnitary u(haar_random_unitary(3, 31));
    const auto l = lift_unitary(u, 3);
    const auto col = lift_column(u, l.basis, 4);
    for (std::size_t r = 0; r < l.basis.size(); ++r) {
        EXPECT_EQ(col[r], l.matrix(r, 4));
        EXPECT_EQ(lifted_amplitude(u, l.basis[r], l.basis[4]), l.matrix(r, 4));
    }
    EXPECT_EQ(lifted_amplitude(u, {1, 0, 0}, {0, 2, 0}), cplx{});
    EXPECT_THROW(lifted_amplitude(u, {1, 0}, {0, 1}), InvalidInput);
}

TEST(OccupationPolynomial, ValidationAndPrune) {
    OccupationPolynomial p(2);
    EXPECT_THROW(p.add({1}, 1.0), InvalidInput);
    EXPECT_THROW(p.add({-1, 1}, 1.0), InvalidInput);
    p.add({1, 0}, 1.0);
    p.add({1, 0}, -1.0);
    p.add({0, 2}, 0.5);
    p.prune();
    EXPECT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.coefficient({0, 2}), cplx(0.5));
    EXPECT_NEAR(std::abs(p.amplitude({0, 2}) - 0.5 * std::sqrt(2.0)), 0.0, 1e-15);
    p.add({1, 0}, 1.0);
    EXPECT_FALSE(p.homogeneous());
}

TEST(SectorProduct, BlockDiagonalPropagationFactorises) {
    const auto both_id = sector_product_check(ModeUnitary::identity(2), ModeUnitary::identity(1), 2);
    EXPECT_TRUE(both_id.factorizes);
    EXPECT_EQ(both_id.residual, 0.0);

    const auto bs = sector_product_check(ModeUnitary(beam_splitter_matrix(kPi / 4)), ModeUnitary::identity(1), 2);
    EXPECT_LT(bs.residual, 1e-10);

    for (int rep = 0; rep < 5; ++rep) {
        const ModeUnitary vc(haar_random_unitary(2, 60 + static_cast<std::uint64_t>(rep)));
        const ModeUnitary va(haar_random_unitary(2, 80 + static_cast<std::uint64_t>(rep)));
        EXPECT_LT(sector_product_check(vc, va, 3).residual, 1e-10);
    }
}
