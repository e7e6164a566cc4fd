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

#include "ulafit/geometry.hpp"

#include <optional>
#include <string>

namespace ulafit::expcli {

/// uf3bl, uf4bl, nested or coprime.
bool isKnownGeometry(const std::string& name);

/// Smallest sensor count the geometry can be built with.
std::int64_t minimumSensors(const std::string& name);

/// Nested split for N sensors: n1 = floor(N/2), n2 = N - n1.
SparseArray nestedFor(std::int64_t n);

/// Coprime pair (m, n') with n' + 2m - 1 = N sensors and the largest uDOF;
/// equal uDOF prefers the smaller m.
std::pair<std::int64_t, std::int64_t> coprimePairFor(std::int64_t n);

/// The geometry as sub-ULAs where it has a sub-ULA layout (coprime does not).
std::optional<SparseArray> buildArray(const std::string& name, std::int64_t n);

/// Normalized positions for N sensors. Throws BelowMinimum under the minimum.
PositionSet buildPositions(const std::string& name, std::int64_t n);

/// Accepts a sensor count ("17") or, for nested and coprime, an explicit
/// parameter pair ("3,3").
PositionSet buildPositions(const std::string& name, const std::string& size);
std::optional<SparseArray> buildArray(const std::string& name, const std::string& size);

} // namespace ulafit::expcli
