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

#pragma once

#include "ulafit/coupling.hpp"
#include "ulafit/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ulafit {

/// Far-field narrowband scenario. Angles in degrees, powers and noise as variances.
struct Scenario {
    std::vector<double> anglesDeg;
    /// Per-source power; empty means unit power for every source.
    std::vector<double> powers;
    double noisePower = 1.0;
    std::int64_t snapshots = 500;
    bool couplingEnabled = false;
    std::uint64_t masterSeed = 0;

    std::size_t sourceCount() const noexcept { return anglesDeg.size(); }
    double power(std::size_t q) const { return powers.empty() ? 1.0 : powers.at(q); }

    /// Throws DomainError unless Q >= 1, L >= 1, angles are distinct and inside
    /// (-90, 90), powers match Q and are positive, and noise power is >= 0.
    void validate() const;

    /// Unit-power sources with noise power 10^(-snrDb/10).
    void setSnrDb(double snrDb);
};

/// Q angles evenly spaced over [lo, hi], both ends included (a single angle sits at lo).
std::vector<double> evenlySpacedAngles(std::size_t q, double loDeg, double hiDeg);

/// |S| x Q matrix with entries e^{j pi p sin(theta)}.
Eigen::MatrixXcd steeringMatrix(std::span<const Position> positions, std::span<const double> anglesDeg);

/// Snapshot matrix X = C A S + N (|S| x L). Sources are drawn first, then noise,
/// each i.i.d. circular complex Gaussian from a generator seeded with `seed`.
/// The coupling matrix is applied only when the scenario enables it.
Eigen::MatrixXcd synthesize(const Scenario& scenario, std::span<const Position> positions,
                            const CouplingModel& coupling, std::uint64_t seed);
/// Same as above with `scenario.masterSeed`.
Eigen::MatrixXcd synthesize(const Scenario& scenario, std::span<const Position> positions,
                            const CouplingModel& coupling = CouplingModel{});

/// C A diag(powers) A^H C^H + noise I.
Eigen::MatrixXcd exactCovariance(const Scenario& scenario, std::span<const Position> positions,
                                 const CouplingModel& coupling = CouplingModel{});

/// (1/L) X X^H. Throws EmptyInput when X has no columns.
Eigen::MatrixXcd sampleCovariance(const Eigen::MatrixXcd& snapshots);

/// Covariance entries averaged per lag p_m - p_n over the whole difference coarray.
class CoarrayVector {
public:
    CoarrayVector(const Eigen::MatrixXcd& covariance, std::span<const Position> positions);

    bool has(Lag n) const noexcept;
    /// Averaged value at lag n; throws DomainError when n is not a coarray lag.
    std::complex<double> value(Lag n) const;
    /// Number of covariance entries averaged at lag n.
    std::int64_t multiplicity(Lag n) const noexcept;
    Lag maxLag() const noexcept { return reach_; }

private:
    std::size_t index(Lag n) const noexcept { return static_cast<std::size_t>(n + reach_); }

    Lag reach_ = 0;
    std::vector<std::complex<double>> values_;
    std::vector<std::int64_t> counts_;
};

/// (J+1) x (J+1) smoothed covariance (1/(J+1)) sum_i z_i z_i^H, z_i the coarray
/// signal on lags (i-J)..i. Throws PreconditionViolation if any lag in 0..J is missing.
Eigen::MatrixXcd spatialSmoothing(const CoarrayVector& z, std::int64_t j);

/// Grid over the open interval (lo, hi) with the given step: lo + step, lo + 2 step, ...
std::vector<double> uniformGrid(double stepDeg = 0.01, double loDeg = -90.0, double hiDeg = 90.0);

struct MusicResult {
    std::vector<double> anglesDeg;
    std::vector<double> spectrum;
    /// Detected angles, ascending; at most Q.
    std::vector<double> estimates;
    /// Q minus the number of detected peaks.
    std::int64_t residualPeaks = 0;
};

/// MUSIC over a virtual ULA at lags 0..J. The noise subspace is spanned by the
/// eigenvectors of the J+1-Q smallest eigenvalues. Estimates are the Q largest
/// strict interior local maxima; equal values prefer the lower angle.
/// Throws TooManySources when Q >= J+1.
MusicResult musicSpectrum(const Eigen::MatrixXcd& rss, std::size_t q, std::span<const double> grid);

/// Covariance -> coarray vector -> smoothing (J from the consecutive lag range) -> MUSIC.
MusicResult coarrayMusic(const Eigen::MatrixXcd& covariance, std::span<const Position> positions,
                         std::size_t q, std::span<const double> grid);

struct TrialStats {
    double rmse = 0.0;
    std::int64_t trials = 0;
    double hitRate = 0.0;
};

inline constexpr double kDefaultGateDeg = 1.0;

struct Assignment {
    std::size_t truthIndex = 0;
    std::size_t estimateIndex = 0;
    double distanceDeg = 0.0;
};

/// Greedy nearest-pair assignment: repeatedly pairs the closest unassigned
/// estimate and truth angle. Yields min(|estimates|, |truth|) pairs.
std::vector<Assignment> assign(std::span<const double> estimates, std::span<const double> truth);

/// Applies `assign` per trial. RMSE runs over assigned pairs; hitRate counts
/// pairs within `gateDeg` out of trials x Q. Missing estimates are misses and
/// do not enter the RMSE.
TrialStats rmse(std::span<const std::vector<double>> estimateSets, std::span<const double> truth,
                double gateDeg = kDefaultGateDeg);

/// splitmix64 output number (index + 1) of the stream started at masterSeed.
std::uint64_t trialSeed(std::uint64_t masterSeed, std::uint64_t index) noexcept;

struct TrialOptions {
    std::int64_t trials = 500;
    double gridStepDeg = 0.01;
    double gateDeg = kDefaultGateDeg;
    /// 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
};

/// Monte-Carlo trials of coarray MUSIC on sample covariances. Trial p uses
/// trialSeed(scenario.masterSeed, p).
TrialStats runTrials(const Scenario& scenario, std::span<const Position> positions,
                     const CouplingModel& coupling, const TrialOptions& options);

} // namespace ulafit
