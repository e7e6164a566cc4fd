// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "oracles.hpp"
#include "ulafit/error.hpp"
#include "ulafit/geometry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ulafit;

TEST(SubUla, MakeValidatesFields)
{
    EXPECT_NO_THROW(SubUla::make(0, 1, 1));
    EXPECT_THROW(SubUla::make(0, 0, 3), DomainError);
    EXPECT_THROW(SubUla::make(0, 2, 0), DomainError);
    EXPECT_THROW(SubUla::make(-1, 2, 3), DomainError);
}

TEST(SubUla, ApertureIsInterspaceTimesCountMinusOne)
{
    const SubUla s = SubUla::make(4, 3, 5);
    EXPECT_EQ(s.aperture(), 12);
    EXPECT_EQ(s.last(), 16);
    EXPECT_EQ(s.positions(), (PositionSet{4, 7, 10, 13, 16}));
}

TEST(SparseArray, RejectsEmptyUnorderedAndInterleaved)
{
    EXPECT_THROW(SparseArray({}), InvalidGeometry);
    EXPECT_THROW(SparseArray({{5, 1, 2}, {0, 1, 2}}), InvalidGeometry);
    // {0,4} and {2,3} interleave without sharing a sensor.
    EXPECT_THROW(SparseArray({{0, 4, 2}, {2, 1, 2}}), InvalidGeometry);
}

TEST(SparseArray, CollisionNamesTheCollidingPair)
{
    try {
        SparseArray({{0, 2, 3}, {3, 1, 1}, {4, 1, 2}});
        FAIL() << "expected InvalidGeometry";
    } catch (const InvalidGeometry& e) {
        EXPECT_NE(std::string(e.what()).find("sub-ULAs 1 and 3 collide at position 4"), std::string::npos)
            << e.what();
    }
}

TEST(Positions, ExpandsSubUlas)
{
    EXPECT_EQ(positions(SparseArray({{0, 3, 2}, {7, 1, 2}})), (PositionSet{0, 3, 7, 8}));
    EXPECT_EQ(positions(SparseArray({{0, 1, 4}})), (PositionSet{0, 1, 2, 3}));
}

TEST(Positions, Uf3bl17MatchesExpansion)
{
    EXPECT_EQ(positions(uf3bl(17)),
              (PositionSet{0, 3, 7, 8, 16, 27, 38, 49, 60, 71, 82, 85, 88, 92, 94, 97, 100}));
}

TEST(Dual, Examples)
{
    EXPECT_EQ(dual(PositionSet{0, 1, 3}), (PositionSet{0, 2, 3}));
    EXPECT_EQ(dual(PositionSet{0, 1, 2, 3}), (PositionSet{0, 1, 2, 3}));
    EXPECT_EQ(dual(PositionSet{0, 3, 7, 8}), (PositionSet{0, 1, 5, 8}));
    EXPECT_THROW(dual(PositionSet{}), EmptyInput);
}

TEST(Dual, IsAnInvolutionAndPreservesWeights)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto s = oracle::randomPositions(rng);
        const PositionSet d = dual(s);
        EXPECT_EQ(d.front(), 0);
        EXPECT_EQ(d.size(), s.size());
        EXPECT_EQ(dual(d), s);
        EXPECT_EQ(oracle::weights(d), oracle::weights(s));
    }
}

TEST(Shift, Examples)
{
    const SparseArray a({{0, 3, 2}});
    EXPECT_EQ(positions(shift(a, 2)), (PositionSet{2, 5}));
    EXPECT_EQ(shift(a, 0), a);
    EXPECT_EQ(shift(shift(a, 3), -3), a);
    EXPECT_THROW(shift(a, -1), DomainError);
}

TEST(Shift, LeavesWeightsUnchanged)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const SparseArray a(oracle::randomSubUlas(rng));
        const auto moved = positions(shift(a, 1 + i % 9));
        EXPECT_EQ(oracle::weights(moved), oracle::weights(positions(a)));
    }
}

TEST(Normalize, SortsDedupsAndTranslates)
{
    EXPECT_EQ(normalize(PositionSet{7, 5, 9, 5}), (PositionSet{0, 2, 4}));
    EXPECT_THROW(normalize(PositionSet{}), EmptyInput);
}

TEST(GapBetween, MatchesDirectDistance)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const SparseArray a(oracle::randomSubUlas(rng));
        for (std::size_t m = 0; m < a.size(); ++m)
            for (std::size_t n = m + 1; n < a.size(); ++n)
                EXPECT_EQ(a.gapBetween(m, n), a[n].initial - a[m].last());
        for (Position g : a.gaps())
            EXPECT_GE(g, 1);
    }
    const SparseArray a({{0, 1, 2}, {4, 1, 2}});
    EXPECT_THROW(a.gapBetween(1, 1), DomainError);
}

TEST(Nested, Examples)
{
    EXPECT_EQ(positions(nested(3, 3)), (PositionSet{0, 1, 2, 3, 7, 11}));
    EXPECT_EQ(positions(nested(1, 1)), (PositionSet{0, 1}));
    EXPECT_EQ(oracle::udof(positions(nested(3, 3))), 23);
    EXPECT_THROW(nested(0, 3), DomainError);
}

TEST(Coprime, Examples)
{
    EXPECT_EQ(coprime(2, 3), (PositionSet{0, 2, 3, 4, 6, 9}));
    EXPECT_EQ(coprime(1, 2), (PositionSet{0, 1, 2}));
    EXPECT_EQ(coprime(3, 5).size(), 10u);
    EXPECT_THROW(coprime(2, 4), DomainError);
    EXPECT_THROW(coprime(5, 3), DomainError);
}

TEST(OptimalParams, ThreeBaseLayerExamples)
{
    EXPECT_EQ(optimalParams3BL(17), (DesignParams{17, 2, 7, 11}));
    EXPECT_EQ(optimalParams3BL(23).baseCount, 3);
    EXPECT_EQ(optimalParams3BL(23).transferCount, 10);
    EXPECT_EQ(optimalParams3BL(18).baseCount, 2);
    EXPECT_EQ(optimalParams3BL(18).transferCount, 8);
}

TEST(OptimalParams, FourBaseLayerExamples)
{
    EXPECT_EQ(optimalParams4BL(32), (DesignParams{32, 3, 14, 19}));
    EXPECT_EQ(optimalParams4BL(34).baseCount, 3);
    EXPECT_EQ(optimalParams4BL(34).transferCount, 16);
    EXPECT_EQ(optimalParams4BL(40).baseCount, 4);
    EXPECT_EQ(optimalParams4BL(40).transferCount, 18);
}

TEST(OptimalParams, SensorCountIdentities)
{
    for (std::int64_t n = 17; n <= 200; ++n) {
        const DesignParams p = optimalParams3BL(n);
        EXPECT_EQ(3 * p.baseCount + p.transferCount + 4, n);
        EXPECT_EQ(p.transferInterspace, 3 * p.baseCount + 5);
    }
    for (std::int64_t n = 32; n <= 200; ++n) {
        const DesignParams p = optimalParams4BL(n);
        EXPECT_EQ(4 * p.baseCount + p.transferCount + 6, n);
        EXPECT_EQ(p.transferInterspace, 4 * p.baseCount + 7);
    }
}

TEST(OptimalParams, ClosedFormsMatchExhaustiveMaximization)
{
    auto j3 = [](std::int64_t b, std::int64_t t) { return 3 * b * t + 5 * t + 3 * b - 1; };
    auto j4 = [](std::int64_t b, std::int64_t t) { return 4 * b * t + 7 * t + 4 * b + 12; };
    for (std::int64_t n = 17; n <= 200; ++n) {
        std::int64_t best = -1;
        for (std::int64_t b = 1; n - 3 * b - 4 >= 2; ++b)
            best = std::max(best, j3(b, n - 3 * b - 4));
        const DesignParams p = optimalParams3BL(n);
        EXPECT_EQ(j3(p.baseCount, p.transferCount), best) << "n=" << n;
        EXPECT_EQ(exhaustiveParams3BL(n), p) << "n=" << n;
    }
    for (std::int64_t n = 32; n <= 200; ++n) {
        std::int64_t best = -1;
        for (std::int64_t b = 1; n - 4 * b - 6 >= 2; ++b)
            best = std::max(best, j4(b, n - 4 * b - 6));
        const DesignParams p = optimalParams4BL(n);
        EXPECT_EQ(j4(p.baseCount, p.transferCount), best) << "n=" << n;
        EXPECT_EQ(exhaustiveParams4BL(n), p) << "n=" << n;
    }
}

TEST(OptimalParams, RefuseBelowMinimum)
{
    EXPECT_THROW(optimalParams3BL(16), BelowMinimum);
    try {
        uf4bl(31);
        FAIL() << "expected BelowMinimum";
    } catch (const BelowMinimum& e) {
        EXPECT_NE(std::string(e.what()).find("requires N ≥ 32"), std::string::npos) << e.what();
        EXPECT_EQ(e.requested(), 31);
        EXPECT_EQ(e.minimum(), 32);
    }
}

TEST(Uf3bl, StructureForAllAdmissibleN)
{
    for (std::int64_t n = 17; n <= 120; ++n) {
        const SparseArray a = uf3bl(n);
        const DesignParams p = optimalParams3BL(n);
        ASSERT_EQ(a.size(), 6u);
        EXPECT_EQ(a.sensorCount(), n);
        EXPECT_EQ(positions(a).size(), static_cast<std::size_t>(n));
        EXPECT_TRUE(a.isNormalized());
        EXPECT_EQ(a.gaps(), (std::vector<Position>{4, 2 + 3 * p.baseCount, 3, 4, 3})) << "n=" << n;
        EXPECT_EQ(a.gaps(), gapSolution3BL(p.baseCount));
        EXPECT_EQ(a[2].interspace, p.transferInterspace);
        EXPECT_EQ(a[2].count, p.transferCount);
    }
}

TEST(Uf3bl, SeventeenSensorWeights)
{
    const auto w = oracle::weights(positions(uf3bl(17)));
    EXPECT_EQ(oracle::weightAt(w, 1), 1);
    EXPECT_EQ(oracle::weightAt(w, 2), 1);
    EXPECT_EQ(oracle::weightAt(w, 3), 5);
    EXPECT_EQ(oracle::udof(positions(uf3bl(17))), 165);
    EXPECT_EQ(positions(uf3bl(17)).back(), 100);
}

TEST(Uf4bl, StructureForAllAdmissibleN)
{
    for (std::int64_t n = 32; n <= 120; ++n) {
        const SparseArray a = uf4bl(n);
        ASSERT_EQ(a.size(), 8u);
        EXPECT_EQ(a.sensorCount(), n);
        EXPECT_EQ(positions(a).size(), static_cast<std::size_t>(n));
        EXPECT_EQ(a.gaps(), (std::vector<Position>{4, 5, 6, 8, 7, 3, 5})) << "n=" << n;
        EXPECT_EQ(a.gaps(), gapSolution4BL());
    }
}

TEST(Uf4bl, ThirtyTwoSensorExample)
{
    const SparseArray a = uf4bl(32);
    EXPECT_EQ(a[4], (SubUla{43, 19, 14}));
    const auto pos = positions(a);
    EXPECT_EQ(pos.size(), 32u);
    const auto w = oracle::weights(pos);
    EXPECT_EQ(oracle::weightAt(w, 1), 1);
    EXPECT_EQ(oracle::weightAt(w, 2), 1);
    EXPECT_EQ(oracle::weightAt(w, 3), 2);
    EXPECT_EQ(oracle::weightAt(w, 4), 9);
    EXPECT_EQ(oracle::udof(pos), 581);
}

TEST(ClosedFormUdof, ThreeBaseLayerTableMatchesConstruction)
{
    for (std::int64_t n = 17; n <= 120; ++n) {
        EXPECT_EQ(udofClosedForm3BL(n), oracle::udofTable3BL(n)) << "n=" << n;
        EXPECT_EQ(udofClosedForm3BL(n), udofFromJ3BL(n)) << "n=" << n;
    }
}

TEST(ClosedFormUdof, FourBaseLayerTableDeviatesOnlyAtRemainderOneAndSeven)
{
    for (std::int64_t n = 32; n <= 120; ++n) {
        EXPECT_EQ(udofClosedForm4BL(n), oracle::udofTable4BL(n)) << "n=" << n;
        const std::int64_t diff = udofFromJ4BL(n) - udofClosedForm4BL(n);
        if (n % 8 == 1 || n % 8 == 7)
            EXPECT_EQ(diff, -5) << "n=" << n;
        else
            EXPECT_EQ(diff, 0) << "n=" << n;
    }
}
