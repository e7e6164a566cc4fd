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

#include "ulafit/doa_sim.hpp"

#include "ulafit/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace ulafit {

namespace {

double degToRad(double deg) noexcept
{
    return deg * std::numbers::pi / 180.0;
}

} // namespace

void Scenario::validate() const
{
    if (anglesDeg.empty())
        throw DomainError("scenario needs at least one source");
    if (snapshots < 1)
        throw DomainError("scenario needs at least one snapshot");
    for (double a : anglesDeg)
        if (!(a > -90.0 && a < 90.0))
            throw DomainError("source angles must lie strictly inside (-90, 90) degrees");
    std::vector<double> sorted = anglesDeg;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("source angles must be pairwise distinct");
    if (!powers.empty()) {
        if (powers.size() != anglesDeg.size())
            throw DomainError("scenario needs one power per source");
        for (double p : powers)
            if (!(p > 0.0))
                throw DomainError("source powers must be positive");
    }
    if (!(noisePower >= 0.0))
        throw DomainError("noise power must be >= 0");
}

void Scenario::setSnrDb(double snrDb)
{
    powers.clear();
    noisePower = std::pow(10.0, -snrDb / 10.0);
}

std::vector<double> evenlySpacedAngles(std::size_t q, double loDeg, double hiDeg)
{
    std::vector<double> out;
    if (q == 0)
        return out;
    if (q == 1)
        return {loDeg};
    for (std::size_t i = 0; i < q; ++i)
        out.push_back(loDeg + (hiDeg - loDeg) * static_cast<double>(i) / static_cast<double>(q - 1));
    return out;
}

Eigen::MatrixXcd steeringMatrix(std::span<const Position> positions, std::span<const double> anglesDeg)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    const auto q = static_cast<Eigen::Index>(anglesDeg.size());
    Eigen::MatrixXcd a(n, q);
    for (Eigen::Index c = 0; c < q; ++c) {
        const double s = std::sin(degToRad(anglesDeg[static_cast<std::size_t>(c)]));
        for (Eigen::Index r = 0; r < n; ++r)
            a(r, c) = std::polar(
                1.0, std::numbers::pi * static_cast<double>(positions[static_cast<std::size_t>(r)]) * s);
    }
    return a;
}

namespace {

Eigen::MatrixXcd coupledSteering(const Scenario& scenario, std::span<const Position> positions,
                                 const CouplingModel& coupling)
{
    Eigen::MatrixXcd a = steeringMatrix(positions, scenario.anglesDeg);
    if (scenario.couplingEnabled)
        a = couplingMatrix(positions, coupling) * a;
    return a;
}

} // namespace

Eigen::MatrixXcd synthesize(const Scenario& scenario, std::span<const Position> positions,
                            const CouplingModel& coupling, std::uint64_t seed)
{
    scenario.validate();
    const auto n = static_cast<Eigen::Index>(positions.size());
    const auto q = static_cast<Eigen::Index>(scenario.sourceCount());
    const auto l = static_cast<Eigen::Index>(scenario.snapshots);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::MatrixXcd s(q, l);
    for (Eigen::Index c = 0; c < l; ++c)
        for (Eigen::Index r = 0; r < q; ++r) {
            const double scale = std::sqrt(scenario.power(static_cast<std::size_t>(r)) / 2.0);
            const double re = normal(rng);
            const double im = normal(rng);
            s(r, c) = {scale * re, scale * im};
        }

    Eigen::MatrixXcd x = coupledSteering(scenario, positions, coupling) * s;
    const double noiseScale = std::sqrt(scenario.noisePower / 2.0);
    for (Eigen::Index c = 0; c < l; ++c)
        for (Eigen::Index r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            x(r, c) += std::complex<double>(noiseScale * re, noiseScale * im);
        }
    return x;
}

Eigen::MatrixXcd synthesize(const Scenario& scenario, std::span<const Position> positions,
                            const CouplingModel& coupling)
{
    return synthesize(scenario, positions, coupling, scenario.masterSeed);
}

Eigen::MatrixXcd exactCovariance(const Scenario& scenario, std::span<const Position> positions,
                                 const CouplingModel& coupling)
{
    scenario.validate();
    const Eigen::MatrixXcd a = coupledSteering(scenario, positions, coupling);
    Eigen::VectorXd p(a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i)
        p(i) = scenario.power(static_cast<std::size_t>(i));
    Eigen::MatrixXcd r = a * p.asDiagonal() * a.adjoint();
    r.diagonal().array() += scenario.noisePower;
    return r;
}

Eigen::MatrixXcd sampleCovariance(const Eigen::MatrixXcd& snapshots)
{
    if (snapshots.cols() == 0)
        throw EmptyInput("sample covariance needs at least one snapshot");
    const Eigen::Index n = snapshots.rows();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    r.selfadjointView<Eigen::Lower>().rankUpdate(snapshots, 1.0 / static_cast<double>(snapshots.cols()));
    for (Eigen::Index i = 0; i < n; ++i) {
        r(i, i) = r(i, i).real();
        for (Eigen::Index j = i + 1; j < n; ++j)
            r(i, j) = std::conj(r(j, i));
    }
    return r;
}

// ---------------------------------------------------------------- coarray vector

CoarrayVector::CoarrayVector(const Eigen::MatrixXcd& covariance, std::span<const Position> positions)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    if (n == 0)
        throw EmptyInput("coarray vector of an empty array");
    if (covariance.rows() != n || covariance.cols() != n)
        throw DomainError("covariance size does not match the sensor count");
    const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
    reach_ = *hi - *lo;
    values_.assign(static_cast<std::size_t>(2 * reach_ + 1), {0.0, 0.0});
    counts_.assign(values_.size(), 0);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) {
            const std::size_t i = index(positions[static_cast<std::size_t>(m)] -
                                        positions[static_cast<std::size_t>(k)]);
            values_[i] += covariance(m, k);
            ++counts_[i];
        }
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (counts_[i] > 0)
            values_[i] /= static_cast<double>(counts_[i]);
}

bool CoarrayVector::has(Lag n) const noexcept
{
    return multiplicity(n) > 0;
}

std::int64_t CoarrayVector::multiplicity(Lag n) const noexcept
{
    if (n < -reach_ || n > reach_)
        return 0;
    return counts_[index(n)];
}

std::complex<double> CoarrayVector::value(Lag n) const
{
    if (!has(n))
        throw DomainError("lag " + std::to_string(n) + " is not in the difference coarray");
    return values_[index(n)];
}

Eigen::MatrixXcd spatialSmoothing(const CoarrayVector& z, std::int64_t j)
{
    if (j < 0)
        throw DomainError("smoothing extent J must be >= 0");
    for (Lag n = 0; n <= j; ++n)
        if (!z.has(n) || !z.has(-n))
            throw PreconditionViolation("coarray has a hole at lag " + std::to_string(n) +
                                        " within 0..J = " + std::to_string(j));
    const auto dim = static_cast<Eigen::Index>(j + 1);
    Eigen::MatrixXcd zi(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index r = 0; r < dim; ++r)
            zi(r, i) = z.value(i - j + r);
    Eigen::MatrixXcd rss = zi * zi.adjoint();
    rss /= static_cast<double>(dim);
    return rss;
}

// ---------------------------------------------------------------- metrics

std::vector<Assignment> assign(std::span<const double> estimates, std::span<const double> truth)
{
    std::vector<Assignment> pairs;
    for (std::size_t t = 0; t < truth.size(); ++t)
        for (std::size_t e = 0; e < estimates.size(); ++e)
            pairs.push_back({t, e, std::abs(estimates[e] - truth[t])});
    std::sort(pairs.begin(), pairs.end(), [](const Assignment& a, const Assignment& b) {
        if (a.distanceDeg != b.distanceDeg)
            return a.distanceDeg < b.distanceDeg;
        if (a.truthIndex != b.truthIndex)
            return a.truthIndex < b.truthIndex;
        return a.estimateIndex < b.estimateIndex;
    });
    std::vector<bool> truthUsed(truth.size(), false);
    std::vector<bool> estUsed(estimates.size(), false);
    std::vector<Assignment> out;
    for (const Assignment& p : pairs) {
        if (truthUsed[p.truthIndex] || estUsed[p.estimateIndex])
            continue;
        truthUsed[p.truthIndex] = true;
        estUsed[p.estimateIndex] = true;
        out.push_back(p);
    }
    return out;
}

TrialStats rmse(std::span<const std::vector<double>> estimateSets, std::span<const double> truth,
                double gateDeg)
{
    TrialStats out;
    out.trials = static_cast<std::int64_t>(estimateSets.size());
    if (estimateSets.empty() || truth.empty())
        return out;
    double sumSq = 0.0;
    std::int64_t assigned = 0;
    std::int64_t hits = 0;
    for (const std::vector<double>& est : estimateSets) {
        for (const Assignment& a : assign(est, truth)) {
            sumSq += a.distanceDeg * a.distanceDeg;
            ++assigned;
            if (a.distanceDeg <= gateDeg)
                ++hits;
        }
    }
    out.rmse = assigned > 0 ? std::sqrt(sumSq / static_cast<double>(assigned))
                            : std::numeric_limits<double>::infinity();
    out.hitRate = static_cast<double>(hits) /
                  static_cast<double>(out.trials * static_cast<std::int64_t>(truth.size()));
    return out;
}

std::uint64_t trialSeed(std::uint64_t masterSeed, std::uint64_t index) noexcept
{
    std::uint64_t z = masterSeed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialStats runTrials(const Scenario& scenario, std::span<const Position> positions,
                     const CouplingModel& coupling, const TrialOptions& options)
{
    scenario.validate();
    if (options.trials < 1)
        throw DomainError("trial count must be >= 1");
    const std::vector<double> grid = uniformGrid(options.gridStepDeg);
    const auto trials = static_cast<std::size_t>(options.trials);
    std::vector<std::vector<double>> estimates(trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t p = next++; p < trials && !failed; p = next++) {
            try {
                const Eigen::MatrixXcd x = synthesize(scenario, positions, coupling,
                                                      trialSeed(scenario.masterSeed, p));
                estimates[p] = coarrayMusic(sampleCovariance(x), positions,
                                            scenario.sourceCount(), grid)
                                   .estimates;
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(trials, 64)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    return rmse(estimates, scenario.anglesDeg, options.gateDeg);
}

} // namespace ulafit
